#pragma once

// Hand-rolled generators and exhaustive corpora for the property and acceptance suites.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "spreal/canonical.hpp"
#include "spreal/jordan.hpp"
#include "spreal/matrix.hpp"
#include "spreal/skew_hamiltonian.hpp"

namespace gen {

using spreal::Matrix;
using spreal::Rational;
using spreal::Scalar;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(long bound = 4, long max_den = 3) {
    return Rational(uniform(-bound, bound), uniform(1, max_den));
  }

  Scalar scalar(long bound = 4, long max_den = 3) { return {rational(bound, max_den), rational(bound, max_den)}; }

  Scalar nonzero_scalar() {
    for (;;)
      if (Scalar s = scalar(); !s.is_zero()) return s;
  }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (uniform(0, 2) != 0) m(r, c) = scalar();
    return m;
  }

  Matrix symmetric(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) m(r, c) = m(c, r) = scalar();
    return m;
  }

  Matrix skew_symmetric(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) {
        m(r, c) = scalar();
        m(c, r) = -m(r, c);
      }
    return m;
  }

  /// −J·S with S symmetric, the general Hamiltonian matrix.
  Matrix hamiltonian(std::size_t n) { return -spreal::form_times(symmetric(2 * n)); }

  /// −J·K with K skew-symmetric, the general skew-Hamiltonian matrix.
  Matrix skew_hamiltonian(std::size_t n) { return -spreal::form_times(skew_symmetric(2 * n)); }

  /// Unit lower times unit upper triangular.
  Matrix invertible(std::size_t n) {
    Matrix l = Matrix::identity(n), u = Matrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < r; ++c) {
        l(r, c) = scalar(2, 2);
        u(c, r) = scalar(2, 2);
      }
    return l * u;
  }

  std::uint64_t seed() { return static_cast<std::uint64_t>(uniform(0, 1L << 30)); }

 private:
  std::mt19937_64 engine_;
};

/// Nonzero eigenvalue representatives and the full eigenvalue set used by the corpora.
inline std::vector<Scalar> positive_eigenvalues() { return {Scalar(1), Scalar(2), Scalar::i()}; }

inline std::vector<Scalar> all_eigenvalues() {
  return {Scalar(0), Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), Scalar::i(), -Scalar::i()};
}

/// Calls `visit` on every multiset drawn from `units` (with weights) of total weight in [1, max].
template <typename Unit>
void for_each_multiset(const std::vector<Unit>& units, const std::vector<std::size_t>& weight, std::size_t max,
                       const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> counts(units.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == units.size()) {
      if (used > 0) visit(counts);
      return;
    }
    for (std::size_t c = 0; used + c * weight[i] <= max; ++c) {
      counts[i] = c;
      rec(i + 1, used + c * weight[i]);
    }
    counts[i] = 0;
  };
  rec(0, 0);
}

/// Every canonical spec (Prop24 shape) over the corpus eigenvalues with half-order at most `max_half`.
inline std::vector<spreal::CanonicalSpec> canonical_specs(std::size_t max_half) {
  std::vector<spreal::CanonicalBlock> units;
  std::vector<std::size_t> weight;
  for (std::size_t h = 1; h <= max_half; ++h) {
    for (const auto& l : positive_eigenvalues()) units.push_back(spreal::PairBlock{l, h});
    units.push_back(spreal::EvenNilBlock{h});
    if (h % 2 == 1) units.push_back(spreal::PairBlock{Scalar{}, h});
    while (weight.size() < units.size()) weight.push_back(h);
  }
  std::vector<spreal::CanonicalSpec> out;
  for_each_multiset(units, weight, max_half, [&](const std::vector<std::size_t>& counts) {
    spreal::CanonicalSpec spec;
    for (std::size_t i = 0; i < units.size(); ++i) spec.blocks.insert(spec.blocks.end(), counts[i], units[i]);
    std::stable_sort(spec.blocks.begin(), spec.blocks.end(), spreal::block_less);
    out.push_back(std::move(spec));
  });
  return out;
}

/// Every Jordan structure realizable by a Hamiltonian matrix of order exactly `order`.
inline std::vector<spreal::JordanStructure> hamiltonian_structures(std::size_t order) {
  struct Unit {
    Scalar lambda;
    std::size_t size;
    bool paired;  // contributes (λ, k) and (−λ, k), or two copies of (0, k)
  };
  std::vector<Unit> units;
  std::vector<std::size_t> weight;
  for (std::size_t k = 1; k <= order; ++k) {
    for (const auto& l : positive_eigenvalues()) {
      units.push_back({l, k, true});
      weight.push_back(2 * k);
    }
    units.push_back({Scalar{}, k, k % 2 == 1});
    weight.push_back(k % 2 == 1 ? 2 * k : k);
  }
  std::vector<spreal::JordanStructure> out;
  for_each_multiset(units, weight, order, [&](const std::vector<std::size_t>& counts) {
    spreal::JordanStructure js;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (counts[i] == 0) continue;
      const Unit& u = units[i];
      if (!u.lambda.is_zero()) {
        js.add(u.lambda, u.size, counts[i]);
        js.add(-u.lambda, u.size, counts[i]);
      } else {
        js.add(u.lambda, u.size, u.paired ? 2 * counts[i] : counts[i]);
      }
    }
    if (js.order() == order) out.push_back(std::move(js));
  });
  return out;
}

/// Every Jordan structure realizable by a skew-Hamiltonian matrix of order at most `max_order`.
inline std::vector<spreal::JordanStructure> skew_hamiltonian_structures(std::size_t max_order) {
  std::vector<std::pair<Scalar, std::size_t>> units;
  std::vector<std::size_t> weight;
  for (std::size_t k = 1; 2 * k <= max_order; ++k)
    for (const auto& l : all_eigenvalues()) {
      units.emplace_back(l, k);
      weight.push_back(2 * k);
    }
  std::vector<spreal::JordanStructure> out;
  for_each_multiset(units, weight, max_order, [&](const std::vector<std::size_t>& counts) {
    spreal::JordanStructure js;
    for (std::size_t i = 0; i < units.size(); ++i) js.add(units[i].first, units[i].second, 2 * counts[i]);
    out.push_back(std::move(js));
  });
  return out;
}

/// J(λ, k) ⊕ J(λ, k)ᵀ blocks realizing a skew-Hamiltonian structure.
inline spreal::SkewCanonicalSpec skew_spec(const spreal::JordanStructure& js) {
  spreal::SkewCanonicalSpec spec;
  for (const auto& [b, m] : js.blocks())
    for (std::size_t i = 0; i < m / 2; ++i) spec.blocks.push_back({b.lambda, b.size});
  std::stable_sort(spec.blocks.begin(), spec.blocks.end(), spreal::skew_block_less);
  return spec;
}

}  // namespace gen
