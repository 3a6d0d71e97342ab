#pragma once

// Exact Jordan structure of matrices whose spectrum lies in Q(i).

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "spreal/matrix.hpp"
#include "spreal/polynomial.hpp"

namespace spreal {

struct JordanBlock {
  Scalar lambda;
  std::size_t size = 1;

  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
  friend auto operator<=>(const JordanBlock& a, const JordanBlock& b) {
    if (auto c = a.lambda <=> b.lambda; c != 0) return c;
    return a.size <=> b.size;
  }
};

/// Multiset of Jordan blocks. Iteration is sorted by (re λ, im λ, size).
class JordanStructure {
 public:
  using Map = std::map<JordanBlock, std::size_t>;

  JordanStructure() = default;
  JordanStructure(std::initializer_list<std::pair<const JordanBlock, std::size_t>> init) {
    for (const auto& [b, m] : init) add(b.lambda, b.size, m);
  }

  void add(const Scalar& lambda, std::size_t size, std::size_t multiplicity = 1) {
    if (size == 0 || multiplicity == 0) return;
    blocks_[JordanBlock{lambda, size}] += multiplicity;
  }

  std::size_t multiplicity(const Scalar& lambda, std::size_t size) const {
    auto it = blocks_.find(JordanBlock{lambda, size});
    return it == blocks_.end() ? 0 : it->second;
  }

  std::size_t order() const {
    std::size_t n = 0;
    for (const auto& [b, m] : blocks_) n += b.size * m;
    return n;
  }

  const Map& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  /// Distinct eigenvalues in sorted order.
  std::vector<Scalar> spectrum() const {
    std::vector<Scalar> out;
    for (const auto& [b, m] : blocks_)
      if (out.empty() || out.back() != b.lambda) out.push_back(b.lambda);
    return out;
  }

  /// Largest block size for `lambda`, 0 if absent.
  std::size_t max_size(const Scalar& lambda) const {
    std::size_t best = 0;
    for (const auto& [b, m] : blocks_)
      if (b.lambda == lambda) best = std::max(best, b.size);
    return best;
  }

  /// The structure of −A given the structure of A.
  JordanStructure negated() const {
    JordanStructure out;
    for (const auto& [b, m] : blocks_) out.add(-b.lambda, b.size, m);
    return out;
  }

  friend bool operator==(const JordanStructure&, const JordanStructure&) = default;

 private:
  Map blocks_;
};

/// λ on the diagonal, 1 on the superdiagonal.
inline Matrix jordan_block(const Scalar& lambda, std::size_t m) {
  Matrix j(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    j(i, i) = lambda;
    if (i + 1 < m) j(i, i + 1) = 1;
  }
  return j;
}

/// Direct sum of the blocks of `js` in iteration order.
inline Matrix jordan_matrix(const JordanStructure& js) {
  Matrix out;
  for (const auto& [b, m] : js.blocks())
    for (std::size_t k = 0; k < m; ++k)
      out = out.rows() == 0 ? jordan_block(b.lambda, b.size) : direct_sum(out, jordan_block(b.lambda, b.size));
  return out;
}

/// All eigenvalues with algebraic multiplicity, sorted by (re, im).
inline std::vector<Scalar> eigenvalues(const Matrix& a) {
  detail::require_square(a, "eigenvalues");
  if (a.rows() == 0) return {};
  auto roots = roots_in_field(characteristic_polynomial(a));
  if (!roots) throw Error(ErrorCode::SpectrumNotInField, "characteristic polynomial does not split over Q(i)");
  return *roots;
}

/// Multiplicity of J(λ, k) is r_{k−1} − 2 r_k + r_{k+1} with r_j = rank((A − λI)^j), each
/// r_j taken from a column basis of the previous image.
inline JordanStructure jordan_structure(const Matrix& a) {
  const auto eig = eigenvalues(a);
  const std::size_t n = a.rows();
  JordanStructure js;
  for (std::size_t i = 0; i < eig.size();) {
    std::size_t alg = 0;
    while (i + alg < eig.size() && eig[i + alg] == eig[i]) ++alg;
    const Scalar& lambda = eig[i];
    if (alg == 1) {
      js.add(lambda, 1, 1);
      ++i;
      continue;
    }
    const auto step = detail::IntMatrix::cleared(shift(a, lambda));
    std::vector<std::size_t> r{n};
    detail::IntMatrix image = step;
    for (;;) {
      auto pivots = detail::pivot_columns(image);
      r.push_back(pivots.size());
      if (r.back() <= n - alg) break;
      image = image.select_columns(pivots);
      image.make_columns_primitive();
      image = step * image;
    }
    r.push_back(r.back());
    for (std::size_t k = 1; k + 1 < r.size(); ++k) js.add(lambda, k, r[k - 1] - 2 * r[k] + r[k + 1]);
    i += alg;
  }
  return js;
}

/// Realizable by a Hamiltonian matrix: blocks for λ and −λ match, odd nilpotent blocks pair up.
inline bool is_valid_hamiltonian_structure(const JordanStructure& js) {
  for (const auto& [b, m] : js.blocks()) {
    if (b.lambda.is_zero()) {
      if (b.size % 2 == 1 && m % 2 == 1) return false;
    } else if (js.multiplicity(-b.lambda, b.size) != m) {
      return false;
    }
  }
  return js.order() % 2 == 0;
}

/// Realizable by a skew-Hamiltonian matrix: every block has even multiplicity.
inline bool is_valid_skew_hamiltonian_structure(const JordanStructure& js) {
  for (const auto& [b, m] : js.blocks())
    if (m % 2 == 1) return false;
  return true;
}

}  // namespace spreal
