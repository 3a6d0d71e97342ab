#pragma once

// Reversers of Hamiltonian matrices: a symplectic skew-involution for every X, and a
// symplectic involution exactly when X is strongly real.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "spreal/canonical.hpp"

namespace spreal {

enum class ReverserKind { Involution, SkewInvolution };
enum class SubjectClass { Hamiltonian, SkewHamiltonian };

struct CertificateChecks {
  bool symplectic = false;
  bool order = false;  // g² = I or g² = −I according to the kind
  bool reversal = false;
  bool subject_structure = false;

  bool all() const { return symplectic && order && reversal && subject_structure; }
  friend bool operator==(const CertificateChecks&, const CertificateChecks&) = default;
};

struct ReverserCertificate {
  Matrix subject;
  Matrix reverser;
  ReverserKind kind = ReverserKind::SkewInvolution;
  SubjectClass subject_class = SubjectClass::Hamiltonian;
  CertificateChecks checks;
};

struct StrongRealityReport {
  bool verdict = true;
  std::vector<std::pair<JordanBlock, std::size_t>> violations;
};

/// Evaluates every check exactly. Only a shape mismatch raises.
inline CertificateChecks verify_reverser(const Matrix& x, const Matrix& g, ReverserKind kind,
                                         SubjectClass subject_class = SubjectClass::Hamiltonian) {
  if (!x.is_square() || !g.is_square() || x.rows() != g.rows())
    throw Error(ErrorCode::DimensionMismatch, "verify_reverser: subject and reverser orders differ");
  CertificateChecks c;
  if (x.rows() % 2 != 0) return c;
  c.symplectic = is_symplectic(g);
  c.order = kind == ReverserKind::Involution ? is_involution(g) : is_skew_involution(g);
  c.reversal = (c.order || rank(g) == g.rows()) && g * x == -(x * g);
  c.subject_structure = subject_class == SubjectClass::Hamiltonian ? is_hamiltonian(x) : is_skew_hamiltonian(x);
  return c;
}

namespace detail {

inline ReverserCertificate certify(const Matrix& x, Matrix g, ReverserKind kind, SubjectClass subject_class) {
  ReverserCertificate cert{x, std::move(g), kind, subject_class, {}};
  cert.checks = verify_reverser(cert.subject, cert.reverser, kind, subject_class);
  if (!cert.checks.all()) throw std::logic_error("constructed reverser failed verification");
  return cert;
}

inline Matrix conjugate_back(const Matrix& s, const Matrix& g) { return s * g * symplectic_inverse(s); }

}  // namespace detail

/// diag(1, −1, 1, …) of size n.
inline Matrix sigma(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = i % 2 == 0 ? 1 : -1;
  return out;
}

/// Ones on the anti-diagonal.
inline Matrix tau(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, n - 1 - i) = 1;
  return out;
}

/// diag(σi, −σi), reversing Λ₂ₗ.
inline Matrix skew_reverser_even_nil(std::size_t l) {
  const Matrix s = scalar_mul(Scalar::i(), sigma(l));
  return direct_sum(s, -s);
}

/// (0, τ; −τ, 0), reversing J(λ, k) ⊕ −J(λ, k)ᵀ for every λ.
inline Matrix skew_reverser_pair(const Scalar& /*lambda*/, std::size_t k) {
  Matrix out(2 * k, 2 * k);
  out.set_block(0, k, tau(k));
  out.set_block(k, 0, -tau(k));
  return out;
}

/// diag(σi, −σi) on each scaled Λ block and (0, τ; −τ, 0) on each pair block, conjugated back to X.
inline ReverserCertificate skew_reverser(const Matrix& x) {
  auto [s, spec] = scaled_symplectic_transform(x);
  std::vector<Matrix> parts;
  for (const auto& b : spec.blocks) {
    if (const auto* p = std::get_if<PairBlock>(&b))
      parts.push_back(skew_reverser_pair(p->lambda, p->k));
    else
      parts.push_back(skew_reverser_even_nil(std::get<EvenNilBlock>(b).l));
  }
  return detail::certify(x, detail::conjugate_back(s, expanding_sum(parts)), ReverserKind::SkewInvolution,
                         SubjectClass::Hamiltonian);
}

/// λ = 0: diag(σ, σ) of order 2k, reversing J(0, k) ⊕ −J(0, k)ᵀ.
/// λ ≠ 0: (0, h; −h, 0) of order 4k with h = (0, τ; −τ, 0), reversing the block ⊞ itself.
inline Matrix involution_reverser_pair_block(const Scalar& lambda, std::size_t k) {
  if (lambda.is_zero()) return direct_sum(sigma(k), sigma(k));
  const Matrix h = skew_reverser_pair(lambda, k);
  Matrix out(4 * k, 4 * k);
  out.set_block(0, 2 * k, h);
  out.set_block(2 * k, 0, -h);
  return out;
}

/// Strongly real iff even nilpotent blocks and all blocks at λ ≠ 0 have even multiplicity.
inline StrongRealityReport classify_strong(const JordanStructure& js) {
  if (!is_valid_hamiltonian_structure(js))
    throw Error(ErrorCode::InvalidHamiltonianStructure, "Jordan structure is not Hamiltonian");
  StrongRealityReport report;
  for (const auto& [b, m] : js.blocks()) {
    const bool constrained = !b.lambda.is_zero() || b.size % 2 == 0;
    if (constrained && m % 2 == 1) report.violations.emplace_back(b, m);
  }
  report.verdict = report.violations.empty();
  return report;
}

using StrongReverserResult = std::variant<ReverserCertificate, StrongRealityReport>;

inline StrongReverserResult strong_reverser(const Matrix& x) {
  if (!x.is_square() || x.rows() % 2 != 0 || !is_hamiltonian(x))
    throw Error(ErrorCode::NotHamiltonian, "strong_reverser needs a Hamiltonian matrix");
  auto report = classify_strong(jordan_structure(x));
  if (!report.verdict) return report;
  auto [s, spec] = symplectic_transform(x, CanonicalPolicy::ReverserFriendly);
  std::vector<Matrix> parts;
  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    const auto* p = std::get_if<PairBlock>(&spec.blocks[i]);
    if (!p) throw std::logic_error("strong_reverser: unexpected Λ block in a strongly real form");
    if (p->lambda.is_zero()) {
      parts.push_back(involution_reverser_pair_block(p->lambda, p->k));
      continue;
    }
    if (i + 1 >= spec.blocks.size() || !(spec.blocks[i + 1] == spec.blocks[i]))
      throw std::logic_error("strong_reverser: unpaired block at a nonzero eigenvalue");
    parts.push_back(involution_reverser_pair_block(p->lambda, p->k));
    ++i;
  }
  return detail::certify(x, detail::conjugate_back(s, expanding_sum(parts)), ReverserKind::Involution,
                         SubjectClass::Hamiltonian);
}

}  // namespace spreal
