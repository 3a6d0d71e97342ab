#pragma once

// Skew-Hamiltonian matrices: symplectic canonical form J(λ, k) ⊕ J(λ, k)ᵀ, similarity to −X,
// and symplectic involutions g with g X g⁻¹ = −X.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spreal/canonical.hpp"
#include "spreal/reality.hpp"

namespace spreal {

/// J(λ, k) ⊕ J(λ, k)ᵀ.
struct SkewBlock {
  Scalar lambda;
  std::size_t k = 1;
  friend bool operator==(const SkewBlock&, const SkewBlock&) = default;
};

struct SkewCanonicalSpec {
  std::vector<SkewBlock> blocks;
  friend bool operator==(const SkewCanonicalSpec&, const SkewCanonicalSpec&) = default;
};

inline bool skew_block_less(const SkewBlock& a, const SkewBlock& b) {
  return block_less(PairBlock{a.lambda, a.k}, PairBlock{b.lambda, b.k});
}

inline Matrix skew_block_matrix(const SkewBlock& b) {
  const Matrix j = jordan_block(b.lambda, b.k);
  return direct_sum(j, transpose(j));
}

inline Matrix build(const SkewCanonicalSpec& spec) {
  std::vector<Matrix> parts;
  for (const auto& b : spec.blocks) parts.push_back(skew_block_matrix(b));
  return expanding_sum(parts);
}

/// Each Jordan block of multiplicity 2t contributes t blocks.
inline SkewCanonicalSpec skew_spec_from_jordan(const JordanStructure& js) {
  if (!is_valid_skew_hamiltonian_structure(js))
    throw Error(ErrorCode::NotSkewHamiltonian, "Jordan structure has a block of odd multiplicity");
  SkewCanonicalSpec spec;
  for (const auto& [b, m] : js.blocks()) spec.blocks.insert(spec.blocks.end(), m / 2, SkewBlock{b.lambda, b.size});
  std::stable_sort(spec.blocks.begin(), spec.blocks.end(), skew_block_less);
  return spec;
}

namespace detail {

/// For ω-self-adjoint X on V_μ and Ñ = sign·(X − μ): p_j = Ñ^{k−j} u, q_j = Ñ^{j−1} z with
/// ω(p_i, q_j) = δ_ij. Isotropy of each chain is automatic.
inline ExtractedBlock skew_chain_pair(const Matrix& x, const Scalar& mu, const Scalar& sign,
                                      const std::vector<Vec>& space, std::size_t k) {
  const Matrix n_op = scalar_mul(sign, shift(x, mu));
  std::optional<Vec> u, top;
  for (const auto& b : space) {
    auto c = chain(n_op, b, k);
    if (!is_zero_vec(c.back())) {
      u = b;
      top = c.back();
      break;
    }
  }
  if (!u) throw std::logic_error("skew_chain_pair: no chain of the expected length");
  std::optional<Vec> z;
  for (const auto& b : space)
    if (!omega(*top, b).is_zero()) {
      z = b;
      break;
    }
  if (!z) throw std::logic_error("skew_chain_pair: pairing is degenerate");

  auto cz = chain(n_op, *z, k);
  std::vector<Scalar> g(k);
  for (std::size_t s = 0; s < k; ++s) g[s] = omega(*u, cz[s]);
  std::vector<Scalar> a(k);
  const Scalar lead_inv = g[k - 1].inv();
  for (std::size_t s = k - 1; s-- > 0;) {
    Scalar acc = g[s];
    for (std::size_t t = 1; t + s < k - 1; ++t) acc.add_product(a[t], g[s + t]);
    a[k - 1 - s] = -acc * lead_inv;
  }
  Vec zz = *z;
  for (std::size_t t = 1; t < k; ++t) zz = axpy(std::move(zz), a[t], cz[t]);
  zz = scaled(std::move(zz), lead_inv);

  ExtractedBlock out{PairBlock{mu, k}, {}, {}};
  auto cu = chain(n_op, *u, k);
  for (std::size_t j = 1; j <= k; ++j) out.p.push_back(cu[k - j]);
  out.q = chain(n_op, zz, k);
  return out;
}

/// Blocks at μ, largest first, each pairing two Jordan chains of the same size.
inline std::vector<ExtractedBlock> extract_skew(const Matrix& x, const JordanStructure& js, const Scalar& mu,
                                                const Scalar& sign) {
  std::map<std::size_t, std::size_t> remaining;
  for (const auto& [b, m] : js.blocks())
    if (b.lambda == mu) remaining[b.size] = m;
  auto space = generalized_eigenspace(x, js, mu);
  std::vector<ExtractedBlock> out;
  while (!remaining.empty()) {
    const std::size_t k = remaining.rbegin()->first;
    ExtractedBlock blk = skew_chain_pair(x, mu, sign, space, k);
    auto& count = remaining.rbegin()->second;
    count -= 2;
    if (count == 0) remaining.erase(k);
    space = split_off(space, blk.p, blk.q);
    out.push_back(std::move(blk));
  }
  return out;
}

inline void require_skew_hamiltonian(const Matrix& x, const char* what) {
  if (!x.is_square() || x.rows() % 2 != 0 || !is_skew_hamiltonian(x))
    throw Error(ErrorCode::NotSkewHamiltonian, std::string(what) + " needs a skew-Hamiltonian matrix");
}

}  // namespace detail

struct SkewCanonicalTransform {
  Matrix s;
  SkewCanonicalSpec spec;
};

/// S ∈ Sp(2n, Q(i)) with S⁻¹ X S = build(spec).
inline SkewCanonicalTransform skew_canonical_transform(const Matrix& x) {
  detail::require_skew_hamiltonian(x, "skew_canonical_transform");
  const JordanStructure js = jordan_structure(x);
  SkewCanonicalSpec spec = skew_spec_from_jordan(js);
  std::vector<detail::ExtractedBlock> blocks;
  for (const auto& mu : js.spectrum()) {
    auto more = detail::extract_skew(x, js, mu, Scalar(1));
    blocks.insert(blocks.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    return block_less(a.block, b.block);
  });
  std::vector<std::vector<detail::Vec>> ps, qs;
  for (auto& b : blocks) {
    ps.push_back(std::move(b.p));
    qs.push_back(std::move(b.q));
  }
  return {detail::layout(ps, qs, x.rows()), std::move(spec)};
}

/// Jordan structure invariant under λ ↦ −λ.
inline bool is_similar_to_negative(const Matrix& x) {
  detail::require_skew_hamiltonian(x, "is_similar_to_negative");
  const JordanStructure js = jordan_structure(x);
  return js == js.negated();
}

using NegationInvolutionResult = std::variant<ReverserCertificate, JordanStructure>;

/// A symplectic involution g with g X g⁻¹ = −X, or the unbalanced Jordan structure when none exists.
inline NegationInvolutionResult negation_involution(const Matrix& x) {
  detail::require_skew_hamiltonian(x, "negation_involution");
  const JordanStructure js = jordan_structure(x);
  if (!(js == js.negated())) return js;

  std::vector<std::vector<detail::Vec>> ps, qs;
  std::vector<Matrix> parts;
  auto place = [&](detail::ExtractedBlock& b) {
    ps.push_back(std::move(b.p));
    qs.push_back(std::move(b.q));
  };
  // P₀ = J(0, m) ⊕ J(0, m)ᵀ with g₀ = diag(σ, σ).
  if (js.max_size(Scalar{}) > 0) {
    auto zero = detail::extract_skew(x, js, Scalar{}, Scalar(1));
    std::reverse(zero.begin(), zero.end());
    for (auto& b : zero) {
      parts.push_back(direct_sum(sigma(b.p.size()), sigma(b.p.size())));
      place(b);
    }
  }
  // (J(λ, k) ⊕ J(λ, k)ᵀ) ⊞ (−J(λ, k) ⊕ −J(λ, k)ᵀ) = Q_λ ⊕ Q_λᵀ with g_λ = diag(h, h).
  for (const auto& lambda : js.spectrum()) {
    if (lambda.is_zero() || pair_representative(lambda) != lambda) continue;
    auto plus = detail::extract_skew(x, js, lambda, Scalar(1));
    auto minus = detail::extract_skew(x, js, -lambda, Scalar(-1));
    std::reverse(plus.begin(), plus.end());
    std::reverse(minus.begin(), minus.end());
    for (std::size_t i = 0; i < plus.size(); ++i) {
      const std::size_t k = plus[i].p.size();
      Matrix h(2 * k, 2 * k);
      h.set_block(0, k, Matrix::identity(k));
      h.set_block(k, 0, Matrix::identity(k));
      parts.push_back(direct_sum(h, h));
      place(plus[i]);
      place(minus[i]);
    }
  }
  const Matrix s = detail::layout(ps, qs, x.rows());
  return detail::certify(x, detail::conjugate_back(s, expanding_sum(parts)), ReverserKind::Involution,
                         SubjectClass::SkewHamiltonian);
}

}  // namespace spreal
