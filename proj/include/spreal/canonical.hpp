#pragma once

// Symplectic Jordan forms of Hamiltonian matrices and a constructive symplectic similarity
// that brings any Hamiltonian matrix with spectrum in Q(i) to that form.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spreal/conic.hpp"
#include "spreal/jordan.hpp"
#include "spreal/matrix.hpp"

namespace spreal {

/// J(λ, k) ⊕ −J(λ, k)ᵀ, of order 2k.
struct PairBlock {
  Scalar lambda;
  std::size_t k = 1;
  friend bool operator==(const PairBlock&, const PairBlock&) = default;
};

/// Λ₂ₗ = [[J(0, l), I_l], [0, −J(0, l)ᵀ]], of order 2l.
struct EvenNilBlock {
  std::size_t l = 1;
  friend bool operator==(const EvenNilBlock&, const EvenNilBlock&) = default;
};

using CanonicalBlock = std::variant<PairBlock, EvenNilBlock>;

enum class CanonicalPolicy { Prop24, ReverserFriendly };

struct CanonicalSpec {
  std::vector<CanonicalBlock> blocks;
  CanonicalPolicy policy = CanonicalPolicy::Prop24;

  friend bool operator==(const CanonicalSpec&, const CanonicalSpec&) = default;
};

inline std::size_t half_order(const CanonicalBlock& b) {
  return std::visit(
      [](const auto& blk) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(blk)>, PairBlock>)
          return blk.k;
        else
          return blk.l;
      },
      b);
}

inline std::size_t order(const CanonicalSpec& spec) {
  std::size_t n = 0;
  for (const auto& b : spec.blocks) n += 2 * half_order(b);
  return n;
}

/// Nilpotent blocks first (by half-order, pairs before Λ), then pair blocks by (re λ, im λ, k).
inline bool block_less(const CanonicalBlock& a, const CanonicalBlock& b) {
  auto lambda_of = [](const CanonicalBlock& x) {
    const auto* p = std::get_if<PairBlock>(&x);
    return p ? p->lambda : Scalar{};
  };
  const Scalar la = lambda_of(a), lb = lambda_of(b);
  if (la.is_zero() != lb.is_zero()) return la.is_zero();
  if (la != lb) return la < lb;
  if (half_order(a) != half_order(b)) return half_order(a) < half_order(b);
  return a.index() < b.index();
}

/// Of ±λ, the one with re > 0, or re = 0 and im > 0.
inline Scalar pair_representative(const Scalar& lambda) {
  const int s = lambda.re().sign() != 0 ? lambda.re().sign() : lambda.im().sign();
  return s >= 0 ? lambda : -lambda;
}

/// Λ₂ₗ.
inline Matrix build_lambda(std::size_t l) {
  Matrix out(2 * l, 2 * l);
  out.set_block(0, 0, jordan_block(0, l));
  out.set_block(0, l, Matrix::identity(l));
  out.set_block(l, l, -transpose(jordan_block(0, l)));
  return out;
}

/// Δ₂ₗ: as Λ₂ₗ but with only the (l, l) entry of the upper-right block set.
inline Matrix build_delta(std::size_t l) {
  Matrix out(2 * l, 2 * l);
  out.set_block(0, 0, jordan_block(0, l));
  out(l - 1, 2 * l - 1) = 1;
  out.set_block(l, l, -transpose(jordan_block(0, l)));
  return out;
}

inline Matrix block_matrix(const CanonicalBlock& b) {
  if (const auto* p = std::get_if<PairBlock>(&b)) {
    Matrix j = jordan_block(p->lambda, p->k);
    return direct_sum(j, -transpose(j));
  }
  return build_lambda(std::get<EvenNilBlock>(b).l);
}

/// ⊞ of the listed blocks, in order.
inline Matrix build(const CanonicalSpec& spec) {
  std::vector<Matrix> parts;
  parts.reserve(spec.blocks.size());
  for (const auto& b : spec.blocks) parts.push_back(block_matrix(b));
  return expanding_sum(parts);
}

inline CanonicalSpec spec_from_jordan(const JordanStructure& js, CanonicalPolicy policy) {
  if (!is_valid_hamiltonian_structure(js))
    throw Error(ErrorCode::InvalidHamiltonianStructure, "Jordan structure is not Hamiltonian");
  CanonicalSpec spec;
  spec.policy = policy;
  for (const auto& [b, m] : js.blocks()) {
    if (!b.lambda.is_zero()) {
      if (pair_representative(b.lambda) == b.lambda)
        spec.blocks.insert(spec.blocks.end(), m, PairBlock{b.lambda, b.size});
    } else if (b.size % 2 == 1) {
      spec.blocks.insert(spec.blocks.end(), m / 2, PairBlock{Scalar{}, b.size});
    } else if (policy == CanonicalPolicy::Prop24) {
      spec.blocks.insert(spec.blocks.end(), m, EvenNilBlock{b.size / 2});
    } else {
      spec.blocks.insert(spec.blocks.end(), m / 2, PairBlock{Scalar{}, b.size});
      spec.blocks.insert(spec.blocks.end(), m % 2, EvenNilBlock{b.size / 2});
    }
  }
  std::stable_sort(spec.blocks.begin(), spec.blocks.end(), block_less);
  return spec;
}

namespace detail {

using Vec = std::vector<Scalar>;

inline Vec axpy(Vec y, const Scalar& a, const Vec& x) {
  if (a.is_zero()) return y;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i].add_product(a, x[i]);
  return y;
}

inline Vec scaled(Vec v, const Scalar& a) {
  for (auto& s : v)
    if (!s.is_zero()) s *= a;
  return v;
}

inline bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

/// [v, T v, T² v, …] with `len` entries.
inline std::vector<Vec> chain(const Matrix& t, const Vec& v, std::size_t len) {
  std::vector<Vec> out{v};
  for (std::size_t i = 1; i < len; ++i) out.push_back(spreal::apply(t, out.back()));
  return out;
}

inline std::vector<Vec> columns(const Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.col(c));
  return out;
}

inline Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
  return m;
}

/// Basis of the ω-complement of span{p, q} inside span(u), for a symplectic family with
/// ω(p_i, q_j) = δ_ij and isotropic p, q.
/// Component of x in the ω-complement of the symplectic pairs (p_i, q_i).
inline Vec project_off(const Vec& x, const std::vector<Vec>& p, const std::vector<Vec>& q) {
  Vec y = x;
  for (std::size_t i = 0; i < p.size(); ++i) {
    y = axpy(std::move(y), -omega(x, q[i]), p[i]);
    y = axpy(std::move(y), omega(x, p[i]), q[i]);
  }
  return y;
}

inline std::vector<Vec> split_off(const std::vector<Vec>& u, const std::vector<Vec>& p,
                                  const std::vector<Vec>& q) {
  if (u.empty()) return {};
  std::vector<Vec> rest;
  for (const auto& x : u) rest.push_back(project_off(x, p, q));
  return columns(column_space(from_columns(rest, u.front().size())));
}

/// Smallest m with T^m killing span(u).
inline std::size_t nilpotency_index(const Matrix& t, std::vector<Vec> u) {
  std::size_t m = 0;
  while (!std::all_of(u.begin(), u.end(), is_zero_vec)) {
    for (auto& v : u) v = spreal::apply(t, v);
    ++m;
  }
  return m;
}

// Truncated power series in t modulo t^m, used as scalars acting through t ↦ X.
namespace series {

using Series = std::vector<Scalar>;

inline Series mul(const Series& a, const Series& b) {
  Series out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j)
      if (!b[j].is_zero()) out[i + j].add_product(a[i], b[j]);
  }
  return out;
}

inline Series inv(const Series& a) {
  Series out(a.size());
  const Scalar c = a[0].inv();
  out[0] = c;
  for (std::size_t n = 1; n < a.size(); ++n) {
    Scalar s;
    for (std::size_t k = 1; k <= n; ++k)
      if (!a[k].is_zero() && !out[n - k].is_zero()) s.add_product(a[k], out[n - k]);
    out[n] = -s * c;
  }
  return out;
}

/// r with r² = a, r₀ = 1; requires a₀ = 1.
inline Series sqrt_unit(const Series& a) {
  Series out(a.size());
  out[0] = 1;
  const Scalar half = Rational(1, 2);
  for (std::size_t n = 1; n < a.size(); ++n) {
    Scalar s = a[n];
    for (std::size_t k = 1; k < n; ++k)
      if (!out[k].is_zero() && !out[n - k].is_zero()) s.add_product(out[k], out[n - k], -1);
    out[n] = s * half;
  }
  return out;
}

/// t ↦ −t.
inline Series star(Series a) {
  for (std::size_t i = 1; i < a.size(); i += 2) a[i] = -a[i];
  return a;
}

inline bool is_zero(const Series& a) { return is_zero_vec(a); }

/// r(X) v.
inline Vec act(const Series& r, const Matrix& x, const Vec& v) {
  Vec out(v.size());
  Vec pw = v;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k) pw = spreal::apply(x, pw);
    out = axpy(std::move(out), r[k], pw);
  }
  return out;
}

/// H(a, b) = Σ_s ω(a, X^s b) t^{m−1−s}. For X nilpotent of index m and ω-skew,
/// H(p(X) a, b) = p(−t) H(a, b) and H(a, p(X) b) = p(t) H(a, b).
inline Series form(const Matrix& x, const Vec& a, const Vec& b, std::size_t m) {
  Series out(m);
  Vec pw = b;
  for (std::size_t s = 0; s < m; ++s) {
    if (s) pw = spreal::apply(x, pw);
    out[m - 1 - s] = omega(a, pw);
  }
  return out;
}

}  // namespace series

struct ExtractedBlock {
  CanonicalBlock block;
  std::vector<Vec> p;
  std::vector<Vec> q;
};

/// Coefficient-space helpers for the top form B(a, b) = ω(a, X^{m−1} b) on a subspace basis.
struct TopForm {
  Matrix gram;  // symmetric or skew

  Scalar value(const Vec& a, const Vec& b) const {
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!b[j].is_zero() && !gram(i, j).is_zero()) s += a[i] * gram(i, j) * b[j];
    }
    return s;
  }

  /// Orthogonal vectors with nonzero values spanning a complement of the radical, by
  /// Gram–Schmidt on `work`.
  std::vector<std::pair<Vec, Scalar>> diagonalize(std::vector<Vec> work) const {
    const std::size_t r = gram.rows();
    std::vector<std::pair<Vec, Scalar>> out;
    for (;;) {
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < work.size() && !pick; ++i)
        if (!value(work[i], work[i]).is_zero()) pick = i;
      for (std::size_t i = 0; i < work.size() && !pick; ++i)
        for (std::size_t j = i + 1; j < work.size() && !pick; ++j)
          if (!value(work[i], work[j]).is_zero()) {
            for (std::size_t c = 0; c < r; ++c) work[i][c] += work[j][c];
            pick = i;
          }
      if (!pick) break;
      Vec w = work[*pick];
      const Scalar a = value(w, w);
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(*pick));
      for (auto& v : work) v = axpy(std::move(v), -(value(v, w) / a), w);
      out.emplace_back(std::move(w), a);
    }
    return out;
  }
};

using Diagonal = std::vector<std::pair<Vec, Scalar>>;

inline Vec combine(const std::vector<Vec>& basis, const Vec& coeffs) {
  Vec out(basis.front().size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out = axpy(std::move(out), coeffs[i], basis[i]);
  return out;
}

/// Diagonal bases of a form: the standard one first, then ones started from unit
/// upper-triangular changes of basis with small entries.
template <typename Visit>
bool for_each_diagonal(const TopForm& form, Visit&& visit) {
  const std::size_t r = form.gram.rows();
  std::mt19937_64 rng(0x5eed);
  auto coeff = [&rng] { return static_cast<int>(rng() % 5) - 2; };
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<Vec> start;
    for (std::size_t i = 0; i < r; ++i) {
      Vec e(r);
      e[i] = 1;
      if (attempt)
        for (std::size_t j = i + 1; j < r; ++j) e[j] = Scalar{Rational(coeff()), Rational(coeff())};
      start.push_back(std::move(e));
    }
    if (attempt)
      for (std::size_t i = r; i > 1; --i) std::swap(start[i - 1], start[rng() % i]);
    if (visit(form.diagonalize(std::move(start)))) return true;
  }
  return false;
}

/// Square classes of the diagonal values; nullopt where a value is too hard to factor.
inline std::vector<std::optional<SquareClass>> square_classes(const Diagonal& diag) {
  std::vector<std::optional<SquareClass>> out;
  for (const auto& [w, a] : diag) {
    try {
      out.emplace_back(square_class(a));
    } catch (const FactoringBudgetExceeded&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

inline std::optional<std::array<Scalar, 3>> try_ternary(const std::optional<SquareClass>& a,
                                                        const std::optional<SquareClass>& b,
                                                        const std::optional<SquareClass>& c) {
  if (!a || !b || !c) return std::nullopt;
  try {
    return isotropic_ternary(*a, *b, *c);
  } catch (const FactoringBudgetExceeded&) {
    return std::nullopt;
  }
}

/// Isotropic vector in the span of two or three diagonal vectors.
inline std::optional<Vec> isotropic_vector(const Diagonal& diag,
                                           const std::vector<std::optional<SquareClass>>& classes) {
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j)
      if (auto t = sqrt_if_square(-diag[i].second / diag[j].second)) return axpy(diag[i].first, *t, diag[j].first);
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j)
      for (std::size_t k = j + 1; k < diag.size(); ++k)
        if (auto xyz = try_ternary(classes[i], classes[j], classes[k])) {
          const auto& [x, y, z] = *xyz;
          return axpy(axpy(scaled(diag[i].first, x), y, diag[j].first), z, diag[k].first);
        }
  return std::nullopt;
}

/// f with B(e, f) ≠ 0 and B(f, f) = 0, given B(e, e) = 0.
inline std::optional<Vec> hyperbolic_partner(const TopForm& form, const Diagonal& diag, const Vec& e) {
  for (const auto& [w, a] : diag) {
    const Scalar c = form.value(e, w);
    if (c.is_zero()) continue;
    return axpy(w, -(a / (Scalar(2) * c)), e);
  }
  return std::nullopt;
}

/// Coefficient vector w with B(w, w) = target exactly, if one can be found.
inline std::optional<Vec> find_vector_with_value(const TopForm& form, const Scalar& target) {
  std::optional<Vec> found;
  for_each_diagonal(form, [&](const Diagonal& diag) {
    for (const auto& [w, a] : diag)
      if (auto s = sqrt_if_square(a / target)) {
        found = scaled(w, s->inv());
        return true;
      }
    const auto classes = square_classes(diag);
    const auto minus_target = square_classes({{Vec{}, -target}}).front();
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j)
        if (auto xyz = try_ternary(classes[i], classes[j], minus_target)) {
          const auto& [x, y, z] = *xyz;
          if (z.is_zero()) continue;
          found = axpy(scaled(diag[i].first, x / z), y / z, diag[j].first);
          return true;
        }
    // A hyperbolic plane represents every value.
    auto e = isotropic_vector(diag, classes);
    if (!e) return false;
    auto f = hyperbolic_partner(form, diag, *e);
    if (!f) return false;
    found = axpy(*f, target / (Scalar(2) * form.value(*e, *f)), *e);
    return true;
  });
  return found;
}

/// Coefficient vectors (e, f) with B(e, e) = B(f, f) = 0 and B(e, f) ≠ 0 for a symmetric form.
inline std::optional<std::pair<Vec, Vec>> find_hyperbolic_pair(const TopForm& form) {
  std::optional<std::pair<Vec, Vec>> found;
  for_each_diagonal(form, [&](const Diagonal& diag) {
    std::optional<Vec> e;
    for (std::size_t i = 0; i < diag.size() && !e; ++i)
      for (std::size_t j = i + 1; j < diag.size() && !e; ++j)
        if (auto t = sqrt_if_square(-diag[i].second / diag[j].second)) e = axpy(diag[i].first, *t, diag[j].first);
    if (!e) e = isotropic_vector(diag, square_classes(diag));
    if (!e) return false;
    auto f = hyperbolic_partner(form, diag, *e);
    if (!f) return false;
    found = std::make_pair(std::move(*e), std::move(*f));
    return true;
  });
  return found;
}

/// Mutually B-orthogonal pieces of a symmetric top form: `pairs` hyperbolic pairs, then
/// `singles` vectors with B(w, w) = target. Coefficient vectors are in the form's basis.
inline std::optional<std::vector<std::vector<Vec>>> orthogonal_pieces(const TopForm& form, const Scalar& target,
                                                                      std::size_t pairs, std::size_t singles) {
  std::vector<Vec> cur;
  {
    const std::size_t r = form.gram.rows();
    std::vector<Vec> start;
    for (std::size_t i = 0; i < r; ++i) {
      Vec e(r);
      e[i] = 1;
      start.push_back(std::move(e));
    }
    for (auto& [w, a] : form.diagonalize(std::move(start))) cur.push_back(std::move(w));
  }
  std::vector<std::vector<Vec>> out;
  for (std::size_t k = 0; k < pairs + singles; ++k) {
    TopForm sub{Matrix(cur.size(), cur.size())};
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = 0; j < cur.size(); ++j) sub.gram(i, j) = form.value(cur[i], cur[j]);
    std::vector<Vec> piece;
    if (k < pairs) {
      auto ef = find_hyperbolic_pair(sub);
      if (!ef) return std::nullopt;
      piece = {combine(cur, ef->first), combine(cur, ef->second)};
    } else {
      auto w = find_vector_with_value(sub, target);
      if (!w) return std::nullopt;
      piece = {combine(cur, *w)};
    }
    for (auto& u : cur) {
      if (piece.size() == 1) {
        u = axpy(std::move(u), -(form.value(u, piece[0]) / target), piece[0]);
      } else {
        const Scalar c = form.value(piece[0], piece[1]);
        const Scalar along_e = form.value(u, piece[1]) / c, along_f = form.value(u, piece[0]) / c;
        u = axpy(axpy(std::move(u), -along_e, piece[0]), -along_f, piece[1]);
      }
    }
    out.push_back(std::move(piece));
  }
  return out;
}

inline TopForm top_form(const Matrix& x, const std::vector<Vec>& basis, std::size_t m) {
  const std::size_t r = basis.size();
  std::vector<Vec> image;
  for (const auto& b : basis) {
    Vec v = b;
    for (std::size_t s = 1; s < m; ++s) v = spreal::apply(x, v);
    image.push_back(std::move(v));
  }
  TopForm form{Matrix(r, r)};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) form.gram(i, j) = omega(basis[i], image[j]);
  return form;
}

/// Chains p_i = X^{m−i} e and q_j = (−X)^{j−1} f after making H(e, e) = H(f, f) = 0 and
/// H(e, f) = (−1)^{m−1}. Requires B(e, e) = B(f, f) = 0 and B(e, f) ≠ 0.
inline ExtractedBlock nilpotent_pair(const Matrix& x, Vec e, Vec f, std::size_t m) {
  using namespace series;
  const Scalar eps = m % 2 == 0 ? Scalar(1) : Scalar(-1);
  const Scalar half = Rational(1, 2);
  f = act(inv(form(x, e, f, m)), x, f);
  for (std::size_t iter = 0;; ++iter) {
    Series alpha = form(x, e, e, m);
    if (is_zero(alpha)) break;
    if (iter > m + 1) throw std::logic_error("nilpotent_pair: isotropy iteration did not converge");
    Series step(m);
    for (std::size_t i = 0; i < m; ++i) step[i] = -alpha[i] * half;
    e = axpy(std::move(e), Scalar(1), act(step, x, f));
    f = act(inv(form(x, e, f, m)), x, f);
  }
  Series beta = form(x, f, f, m);
  Series y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = -eps * beta[i] * half;
  f = axpy(std::move(f), Scalar(1), act(y, x, e));
  if (m % 2 == 0) f = scaled(std::move(f), Scalar(-1));

  ExtractedBlock out{PairBlock{Scalar{}, m}, {}, {}};
  auto ce = chain(x, e, m);
  auto cf = chain(x, f, m);
  for (std::size_t i = 1; i <= m; ++i) out.p.push_back(ce[m - i]);
  for (std::size_t j = 1; j <= m; ++j) out.q.push_back((j - 1) % 2 == 0 ? cf[j - 1] : scaled(cf[j - 1], Scalar(-1)));
  return out;
}

/// r(X) v with H(r(X) v, r(X) v) constant; requires the constant term B(v, v) ≠ 0 and m even.
inline Vec normalize_even_generator(const Matrix& x, const Vec& v, std::size_t m) {
  using namespace series;
  Series h = form(x, v, v, m);
  Series target = inv(h);
  for (auto& c : target) c *= h[0];
  return act(sqrt_unit(target), x, v);
}

struct EvenTemplate {
  Scalar value;      // H(v*, v*) for the normalized generator of Λ₂ₗ
  Matrix from_chain;  // standard basis of Λ₂ₗ in the chain basis of v*
};

inline EvenTemplate even_template(std::size_t l) {
  const std::size_t m = 2 * l;
  const Matrix lam = build_lambda(l);
  const auto basis = columns(Matrix::identity(m));
  const TopForm form = top_form(lam, basis, m);
  std::size_t pick = 0;
  while (form.gram(pick, pick).is_zero()) ++pick;
  const Vec v = normalize_even_generator(lam, basis[pick], m);
  return {form.gram(pick, pick), inverse(from_columns(chain(lam, v, m), m))};
}

/// Block on the chain of v. When B(v, v) = a differs from the template value t, the q side is
/// scaled by t / a: the basis stays symplectic and X acts as diag(I, (a/t) I) Λ₂ₗ diag(I, (t/a) I).
inline ExtractedBlock even_nil(const Matrix& x, const Vec& v, std::size_t l) {
  const std::size_t m = 2 * l;
  const EvenTemplate tpl = even_template(l);
  const Vec g = normalize_even_generator(x, v, m);
  const auto c = chain(x, g, m);
  const Scalar q_scale = tpl.value / omega(g, c.back());
  const Matrix basis = from_columns(c, x.rows()) * tpl.from_chain;
  ExtractedBlock out{EvenNilBlock{l}, {}, {}};
  for (std::size_t j = 0; j < l; ++j) {
    out.p.push_back(basis.col(j));
    out.q.push_back(scaled(basis.col(l + j), q_scale));
  }
  return out;
}

/// Pair chains for eigenvalues λ ≠ 0 and −λ: p_j = N^{k−j} u with N = X − λ, and
/// q_j = (−M)^{j−1} z with M = X + λ, normalized so ω(p_i, q_j) = δ_ij.
inline ExtractedBlock nonzero_pair(const Matrix& x, const Scalar& lambda, const std::vector<Vec>& plus,
                                   const std::vector<Vec>& minus, std::size_t k) {
  const Matrix n_op = shift(x, lambda);
  const Matrix m_op = shift(x, -lambda);
  std::optional<Vec> u, top;
  for (const auto& b : plus) {
    auto c = chain(n_op, b, k);
    if (!is_zero_vec(c.back())) {
      u = b;
      top = c.back();
      break;
    }
  }
  if (!u) throw std::logic_error("nonzero_pair: no chain of the expected length");
  std::optional<Vec> z;
  for (const auto& b : minus)
    if (!omega(*top, b).is_zero()) {
      z = b;
      break;
    }
  if (!z) throw std::logic_error("nonzero_pair: pairing is degenerate");

  auto cz = chain(m_op, *z, k);
  std::vector<Scalar> g(k);
  for (std::size_t s = 0; s < k; ++s) g[s] = omega(*u, cz[s]);
  // Kill ω(u, M^s z) for s < k − 1 by z ← z + Σ a_t M^t z.
  std::vector<Scalar> a(k);
  const Scalar lead_inv = g[k - 1].inv();
  for (std::size_t s = k - 1; s-- > 0;) {
    Scalar acc = g[s];
    for (std::size_t t = 1; t + s < k - 1; ++t) acc.add_product(a[t], g[s + t]);
    a[k - 1 - s] = -acc * lead_inv;
  }
  Vec zz = *z;
  for (std::size_t t = 1; t < k; ++t) zz = axpy(std::move(zz), a[t], cz[t]);
  Scalar scale = g[k - 1];
  if ((k - 1) % 2 == 1) scale = -scale;
  zz = scaled(std::move(zz), scale.inv());

  ExtractedBlock out{PairBlock{lambda, k}, {}, {}};
  auto cu = chain(n_op, *u, k);
  const Matrix neg_m = -m_op;
  auto cq = chain(neg_m, zz, k);
  for (std::size_t j = 1; j <= k; ++j) out.p.push_back(cu[k - j]);
  out.q = std::move(cq);
  return out;
}

inline std::vector<Vec> generalized_eigenspace(const Matrix& x, const JordanStructure& js, const Scalar& lambda) {
  std::size_t index = 0, dim = 0;
  for (const auto& [b, m] : js.blocks())
    if (b.lambda == lambda) {
      index = std::max(index, b.size);
      dim += b.size * m;
    }
  if (dim == x.rows()) return columns(Matrix::identity(dim));
  return columns(power_nullspace(shift(x, lambda), static_cast<unsigned>(index)));
}

/// With `exact` false, Λ blocks keep whatever form value their generator has (see even_nil).
inline std::vector<ExtractedBlock> extract_nilpotent(const Matrix& x, const JordanStructure& js,
                                                     CanonicalPolicy policy, bool exact = true) {
  std::map<std::size_t, std::size_t> remaining;
  for (const auto& [b, m] : js.blocks())
    if (b.lambda.is_zero()) remaining[b.size] = m;
  std::vector<ExtractedBlock> out;
  if (remaining.empty()) return out;
  auto space = generalized_eigenspace(x, js, Scalar{});
  // Generators for the even size in progress, split off the earlier blocks as they go.
  std::vector<std::vector<Vec>> pending;
  while (!remaining.empty()) {
    const std::size_t m = remaining.rbegin()->first;
    std::size_t& count = remaining.rbegin()->second;
    ExtractedBlock blk;
    const bool pair = m % 2 == 1 || (policy == CanonicalPolicy::ReverserFriendly && count >= 2);
    if (m % 2 == 1) {
      const TopForm form = top_form(x, space, m);
      std::optional<std::pair<std::size_t, std::size_t>> ij;
      for (std::size_t i = 0; i < space.size() && !ij; ++i)
        for (std::size_t j = i + 1; j < space.size() && !ij; ++j)
          if (!form.gram(i, j).is_zero()) ij = {i, j};
      if (!ij) throw std::logic_error("extract_nilpotent: odd top form is degenerate");
      blk = nilpotent_pair(x, space[ij->first], space[ij->second], m);
    } else {
      const EvenTemplate tpl = even_template(m / 2);
      if (pending.empty() && !pair && !exact) {
        for (auto& [w, a] : top_form(x, space, m).diagonalize(columns(Matrix::identity(space.size()))))
          pending.push_back({combine(space, w)});
      }
      if (pending.empty()) {
        const std::size_t pairs = policy == CanonicalPolicy::ReverserFriendly ? count / 2 : 0;
        auto pieces = orthogonal_pieces(top_form(x, space, m), tpl.value, pairs, count - 2 * pairs);
        if (!pieces)
          throw Error(ErrorCode::FieldExtensionRequired,
                      pairs ? "no isotropic pair for nilpotent blocks of size " + std::to_string(m) + " over Q(i)"
                            : "normalizing a nilpotent block of size " + std::to_string(m) +
                                  " needs a square root outside Q(i)");
        for (auto& piece : *pieces) {
          for (auto& v : piece) v = combine(space, v);
          pending.push_back(std::move(piece));
        }
      }
      const std::vector<Vec> piece = std::move(pending.front());
      pending.erase(pending.begin());
      blk = pair ? nilpotent_pair(x, piece[0], piece[1], m) : even_nil(x, piece[0], m / 2);
      for (auto& rest : pending)
        for (auto& v : rest) v = project_off(v, blk.p, blk.q);
    }
    count -= pair ? 2 : 1;
    if (count == 0) remaining.erase(m);
    space = split_off(space, blk.p, blk.q);
    out.push_back(std::move(blk));
  }
  return out;
}

inline std::vector<ExtractedBlock> extract_nonzero(const Matrix& x, const JordanStructure& js,
                                                   const Scalar& lambda) {
  std::map<std::size_t, std::size_t> remaining;
  for (const auto& [b, m] : js.blocks())
    if (b.lambda == lambda) remaining[b.size] = m;
  auto plus = generalized_eigenspace(x, js, lambda);
  auto minus = generalized_eigenspace(x, js, -lambda);
  std::vector<ExtractedBlock> out;
  while (!remaining.empty()) {
    const std::size_t k = remaining.rbegin()->first;
    ExtractedBlock blk = nonzero_pair(x, lambda, plus, minus, k);
    if (--remaining.rbegin()->second == 0) remaining.erase(k);
    plus = split_off(plus, blk.p, blk.q);
    minus = split_off(minus, blk.p, blk.q);
    out.push_back(std::move(blk));
  }
  return out;
}

/// S = [p¹ p² … | q¹ q² …] for blocks laid out by ⊞ in the given order.
inline Matrix layout(const std::vector<std::vector<Vec>>& ps, const std::vector<std::vector<Vec>>& qs,
                     std::size_t dim) {
  const std::size_t n = dim / 2;
  Matrix s(dim, dim);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps[i].size(); ++j) {
      s.set_col(offset + j, ps[i][j]);
      s.set_col(n + offset + j, qs[i][j]);
    }
    offset += ps[i].size();
  }
  if (offset != n) throw std::logic_error("layout: blocks do not fill the space");
  return s;
}

/// Orders the extracted blocks like `expected` and lays them out.
inline Matrix assemble(std::vector<ExtractedBlock> blocks, const std::vector<CanonicalBlock>& expected,
                       std::size_t dim) {
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const ExtractedBlock& a, const ExtractedBlock& b) { return block_less(a.block, b.block); });
  if (blocks.size() != expected.size()) throw std::logic_error("assemble: block count mismatch");
  std::vector<std::vector<Vec>> ps, qs;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!(blocks[i].block == expected[i])) throw std::logic_error("assemble: block order mismatch");
    ps.push_back(std::move(blocks[i].p));
    qs.push_back(std::move(blocks[i].q));
  }
  return layout(ps, qs, dim);
}

}  // namespace detail

struct SymplecticTransform {
  Matrix s;
  CanonicalSpec spec;
};

namespace detail {

inline SymplecticTransform transform(const Matrix& x, CanonicalPolicy policy, bool exact) {
  if (!x.is_square() || x.rows() % 2 != 0 || !is_hamiltonian(x))
    throw Error(ErrorCode::NotHamiltonian, "symplectic_transform needs a Hamiltonian matrix");
  const JordanStructure js = jordan_structure(x);
  CanonicalSpec spec = spec_from_jordan(js, policy);
  auto blocks = detail::extract_nilpotent(x, js, policy, exact);
  for (const auto& lambda : js.spectrum()) {
    if (lambda.is_zero() || pair_representative(lambda) != lambda) continue;
    auto more = detail::extract_nonzero(x, js, lambda);
    blocks.insert(blocks.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  Matrix s = detail::assemble(std::move(blocks), spec.blocks, x.rows());
  return {std::move(s), std::move(spec)};
}

}  // namespace detail

/// S ∈ Sp(2n, Q(i)) with S⁻¹ X S = build(spec), spec = spec_from_jordan(jordan_structure(X), policy).
inline SymplecticTransform symplectic_transform(const Matrix& x, CanonicalPolicy policy) {
  return detail::transform(x, policy, true);
}

/// Like symplectic_transform with Prop24, except that each Λ₂ₗ block may come out as
/// D Λ₂ₗ D⁻¹ with D = diag(I, aI). Needs no square roots.
inline SymplecticTransform scaled_symplectic_transform(const Matrix& x) {
  return detail::transform(x, CanonicalPolicy::Prop24, false);
}

}  // namespace spreal
