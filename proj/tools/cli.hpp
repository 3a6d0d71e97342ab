#pragma once

// Command-line front end. Exit codes: 0 success, 1 malformed input or usage, 2 mathematical
// precondition failure, 3 negative verdict.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spreal/io.hpp"
#include "spreal/random.hpp"

namespace spreal::cli {

enum Exit : int { kOk = 0, kMalformed = 1, kPrecondition = 2, kNegative = 3 };

namespace detail {

using io::json;

inline std::string read_all(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::MalformedInput, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

inline void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

inline json error_json(const Error& e) {
  return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

inline json unbalanced_blocks(const JordanStructure& js) {
  json out = json::array();
  for (const auto& [b, m] : js.blocks())
    if (js.multiplicity(-b.lambda, b.size) != m)
      out.push_back({{"lambda", io::to_json(b.lambda)}, {"size", b.size}, {"multiplicity", m},
                     {"negated_multiplicity", js.multiplicity(-b.lambda, b.size)}});
  return out;
}

inline void require_hamiltonian(const Matrix& x) {
  if (x.rows() % 2 != 0 || !is_hamiltonian(x))
    throw Error(ErrorCode::NotHamiltonian, "input is not a Hamiltonian matrix");
}

inline int classify(const Matrix& x, std::ostream& out) {
  require_hamiltonian(x);
  const JordanStructure js = jordan_structure(x);
  const auto report = classify_strong(js);
  emit(out, {{"jordan_structure", io::to_json(js)}, {"strong_reality", io::to_json(report)}});
  return report.verdict ? kOk : kNegative;
}

inline int strong(const Matrix& x, std::ostream& out) {
  auto result = strong_reverser(x);
  if (auto* report = std::get_if<StrongRealityReport>(&result)) {
    emit(out, {{"strongly_real", false}, {"classification", io::to_json(*report)}});
    return kNegative;
  }
  emit(out, io::to_json(std::get<ReverserCertificate>(result), classify_strong(jordan_structure(x))));
  return kOk;
}

inline int sh_classify(const Matrix& x, std::ostream& out) {
  const bool verdict = is_similar_to_negative(x);
  const JordanStructure js = jordan_structure(x);
  emit(out, {{"jordan_structure", io::to_json(js)},
             {"similar_to_negative", verdict},
             {"unbalanced", unbalanced_blocks(js)}});
  return verdict ? kOk : kNegative;
}

inline int sh_reverser(const Matrix& x, std::ostream& out) {
  auto result = negation_involution(x);
  if (auto* js = std::get_if<JordanStructure>(&result)) {
    emit(out, {{"similar_to_negative", false},
               {"jordan_structure", io::to_json(*js)},
               {"unbalanced", unbalanced_blocks(*js)}});
    return kNegative;
  }
  emit(out, io::to_json(std::get<ReverserCertificate>(result)));
  return kOk;
}

inline int canonical(const Matrix& x, CanonicalPolicy policy, std::ostream& out) {
  if (x.rows() % 2 == 0 && is_hamiltonian(x)) {
    auto t = symplectic_transform(x, policy);
    emit(out, {{"class", "hamiltonian"}, {"s", io::to_json(t.s)}, {"spec", io::to_json(t.spec)}});
    return kOk;
  }
  if (x.rows() % 2 == 0 && is_skew_hamiltonian(x)) {
    auto t = skew_canonical_transform(x);
    emit(out, {{"class", "skew-hamiltonian"}, {"s", io::to_json(t.s)}, {"spec", io::to_json(t.spec)}});
    return kOk;
  }
  throw Error(ErrorCode::NotHamiltonian, "input is neither Hamiltonian nor skew-Hamiltonian");
}

inline int verify(const json& doc, std::ostream& out) {
  const ReverserCertificate cert = io::certificate_from_json(doc);
  const auto checks = verify_reverser(cert.subject, cert.reverser, cert.kind, cert.subject_class);
  emit(out, {{"valid", checks.all()}, {"checks", io::to_json(checks)}});
  return checks.all() ? kOk : kNegative;
}

inline int generate(const std::string& spec_text, std::uint64_t seed, std::ostream& out) {
  const json spec_json = io::parse(spec_text);
  const auto spec = io::spec_from_json(spec_json);
  const Matrix canonical = std::visit([](const auto& s) { return build(s); }, spec);
  const Matrix s = random_symplectic(canonical.rows() / 2, seed);
  const Matrix x = s * canonical * symplectic_inverse(s);
  const json label = std::visit([](const auto& sp) { return io::to_json(sp); }, spec);
  io::MatrixMetadata meta{label.dump(), seed,
                          "build(spec) conjugated by random_symplectic(" + std::to_string(canonical.rows() / 2) +
                              ", " + std::to_string(seed) + ")"};
  emit(out, io::to_json(x, meta));
  return kOk;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reversers and strong-reality classification for (skew-)Hamiltonian matrices", "spreal"};
  app.require_subcommand(1);
  std::string input;
  std::string policy_name = "prop24";
  std::string spec_text;
  std::uint64_t seed = 0;

  const std::vector<std::pair<std::string, std::string>> matrix_commands = {
      {"classify", "Jordan structure and strong-reality verdict of a Hamiltonian matrix"},
      {"skew-reverser", "symplectic skew-involution reversing a Hamiltonian matrix"},
      {"strong-reverser", "symplectic involution reversing a Hamiltonian matrix, if one exists"},
      {"sh-classify", "whether a skew-Hamiltonian matrix is similar to its negative"},
      {"sh-reverser", "symplectic involution negating a skew-Hamiltonian matrix, if one exists"},
      {"canonical", "symplectic similarity to the canonical form"},
      {"verify", "re-check a certificate document"}};
  for (const auto& [name, help] : matrix_commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", input, "JSON document path; standard input when omitted or '-'");
    if (name == "canonical")
      sub->add_option("--policy", policy_name, "prop24 or reverser-friendly")
          ->check(CLI::IsMember({"prop24", "reverser-friendly"}));
  }
  auto* gen = app.add_subcommand("generate", "canonical form conjugated by a seeded random symplectic matrix");
  gen->add_option("--spec", spec_text, "inline spec JSON")->required();
  gen->add_option("--seed", seed, "generator seed");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "generate") return detail::generate(spec_text, seed, out);
    const io::json doc = io::parse(detail::read_all(input, in));
    if (cmd == "verify") return detail::verify(doc, out);
    const Matrix x = io::matrix_from_json(doc).matrix;
    if (cmd == "classify") return detail::classify(x, out);
    if (cmd == "skew-reverser") return (detail::emit(out, io::to_json(skew_reverser(x))), kOk);
    if (cmd == "strong-reverser") return detail::strong(x, out);
    if (cmd == "sh-classify") return detail::sh_classify(x, out);
    if (cmd == "sh-reverser") return detail::sh_reverser(x, out);
    return detail::canonical(x, io::policy_from_string(policy_name), out);
  } catch (const Error& e) {
    detail::emit(out, detail::error_json(e));
    err << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::MalformedInput:
      case ErrorCode::DivisionByZero:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::NonSquareInput:
      case ErrorCode::OddOrderInput:
        return kMalformed;
      default:
        return kPrecondition;
    }
  }
}

}  // namespace spreal::cli
