#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreal {

enum class ErrorCode {
  DivisionByZero,
  DimensionMismatch,
  SingularMatrix,
  NonSquareInput,
  OddOrderInput,
  SpectrumNotInField,
  NotHamiltonian,
  NotSkewHamiltonian,
  FieldExtensionRequired,
  InvalidHamiltonianStructure,
  MalformedInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonSquareInput: return "NonSquareInput";
    case ErrorCode::OddOrderInput: return "OddOrderInput";
    case ErrorCode::SpectrumNotInField: return "SpectrumNotInField";
    case ErrorCode::NotHamiltonian: return "NotHamiltonian";
    case ErrorCode::NotSkewHamiltonian: return "NotSkewHamiltonian";
    case ErrorCode::FieldExtensionRequired: return "FieldExtensionRequired";
    case ErrorCode::InvalidHamiltonianStructure: return "InvalidHamiltonianStructure";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spreal
