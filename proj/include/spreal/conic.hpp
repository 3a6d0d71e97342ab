#pragma once

// Diagonal ternary quadratic forms over Q(i): a x² + b y² + c z² = 0.

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spreal/field.hpp"
#include "spreal/gaussint.hpp"
#include "spreal/polynomial.hpp"

namespace spreal {
namespace detail {

inline GaussInt gauss_conj(const GaussInt& a) { return {a.re, -a.im}; }
inline GaussInt gauss_add(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }

/// Remainder of a modulo m with N(r) ≤ N(m) / 2.
inline GaussInt gauss_mod(const GaussInt& a, const GaussInt& m) {
  const mpz_class n = m.norm();
  GaussInt q{round_div(a.re * m.re + a.im * m.im, n), round_div(a.im * m.re - a.re * m.im, n)};
  return a - q * m;
}

/// (g, u, v) with u a + v b = g = gcd(a, b).
inline std::array<GaussInt, 3> gauss_xgcd(GaussInt a, GaussInt b) {
  GaussInt u0{1, 0}, v0{0, 0}, u1{0, 0}, v1{1, 0};
  while (!b.is_zero()) {
    const mpz_class n = b.norm();
    GaussInt q{round_div(a.re * b.re + a.im * b.im, n), round_div(a.im * b.re - a.re * b.im, n)};
    GaussInt r = a - q * b;
    a = std::move(b);
    b = std::move(r);
    GaussInt u2 = u0 - q * u1, v2 = v0 - q * v1;
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  return {a, u0, v0};
}

/// Thrown when a norm does not factor within the effort bound.
struct FactoringBudgetExceeded {};

inline constexpr unsigned long kRhoLimit = 1ul << 15;

/// a = unit · Π π^e over Gaussian primes, one representative per associate class.
inline std::vector<std::pair<GaussInt, int>> gauss_factor(const GaussInt& a, GaussInt* unit = nullptr) {
  std::map<mpz_class, int> rational;
  if (!factor_into(a.norm(), rational, kRhoLimit)) throw FactoringBudgetExceeded{};
  std::vector<std::pair<GaussInt, int>> out;
  GaussInt rest = a;
  for (const auto& [p, unused] : rational)
    for (const auto& pi : gaussian_primes_over(p)) {
      int e = 0;
      while (auto q = exact_div(rest, pi)) {
        rest = *q;
        ++e;
      }
      if (e) out.emplace_back(pi, e);
    }
  if (unit) *unit = rest;
  return out;
}

/// a = s² d with d squarefree.
inline std::pair<GaussInt, GaussInt> squarefree_split(const GaussInt& a) {
  GaussInt unit;
  GaussInt s{1, 0}, d{1, 0};
  for (const auto& [pi, e] : gauss_factor(a, &unit)) {
    for (int k = 0; k < e / 2; ++k) s = s * pi;
    if (e % 2) d = d * pi;
  }
  // −1 = i², so only the unit classes 1 and i survive.
  if (unit.re == -1 || unit.im == -1) {
    s = s * GaussInt{0, 1};
    unit = unit * GaussInt{-1, 0};
  }
  return {s, d * unit};
}

inline mpz_class mod_p(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline mpz_class pow_mod(const mpz_class& b, const mpz_class& e, const mpz_class& p) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

/// Square root of a modulo an odd prime p, by Tonelli–Shanks.
inline std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a0, const mpz_class& p) {
  const mpz_class a = mod_p(a0, p);
  if (a == 0) return mpz_class(0);
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  mpz_class c = pow_mod(z, q, p), r = pow_mod(a, (q + 1) / 2, p), t = pow_mod(a, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = mod_p(tt * tt, p);
      ++i;
    }
    mpz_class b = c;
    for (unsigned long k = 0; k + i + 1 < m; ++k) b = mod_p(b * b, p);
    r = mod_p(r * b, p);
    c = mod_p(b * b, p);
    t = mod_p(t * c, p);
    m = i;
  }
  return r;
}

/// t with t² ≡ a modulo the Gaussian prime pi.
inline std::optional<GaussInt> sqrt_mod_gauss_prime(const GaussInt& a, const GaussInt& pi) {
  const mpz_class n = pi.norm();
  if (n == 2) return exact_div(a, pi) ? GaussInt{0, 0} : GaussInt{1, 0};
  if (pi.im != 0 && pi.re != 0) {
    // Z[i]/π ≅ F_p with i ↦ −re/im.
    const mpz_class r = mod_p(-pi.re * inv_mod(mod_p(pi.im, n), n), n);
    auto t = sqrt_mod_prime(a.re + a.im * r, n);
    if (!t) return std::nullopt;
    return GaussInt{*t, 0};
  }
  // Inert p ≡ 3 (mod 4): F_p[i].
  const mpz_class p = pi.re != 0 ? abs(pi.re) : abs(pi.im);
  const mpz_class re = mod_p(a.re, p), im = mod_p(a.im, p);
  if (re == 0 && im == 0) return GaussInt{0, 0};
  auto c = sqrt_mod_prime(re * re + im * im, p);
  if (!c) return std::nullopt;
  const mpz_class half = inv_mod(2, p);
  for (const mpz_class& cc : {*c, mpz_class(p - *c)}) {
    auto x = sqrt_mod_prime((re + cc) * half, p);
    if (!x || *x == 0) continue;
    const mpz_class y = mod_p(im * half * inv_mod(*x, p), p);
    if (mod_p(*x * *x - y * y - re, p) == 0 && mod_p(2 * *x * y - im, p) == 0) return GaussInt{*x, y};
  }
  // a ∈ F_p with −a a square: √a = y i.
  if (im == 0)
    if (auto y = sqrt_mod_prime(p - re, p)) return GaussInt{0, *y};
  return std::nullopt;
}

/// t with t² ≡ a modulo a squarefree b, by the Chinese remainder theorem.
inline std::optional<GaussInt> sqrt_mod_squarefree(const GaussInt& a, const GaussInt& b) {
  GaussInt t{0, 0}, m{1, 0};
  for (const auto& [pi, e] : gauss_factor(b)) {
    auto r = sqrt_mod_gauss_prime(a, pi);
    if (!r) return std::nullopt;
    const auto [g, u, v] = gauss_xgcd(m, pi);
    const GaussInt k = gauss_mod((*r - t) * u * gauss_conj(g), pi);
    t = gauss_add(t, m * k);
    m = m * pi;
    t = gauss_mod(t, m);
  }
  return t;
}

using Triple = std::array<Scalar, 3>;

inline Scalar to_scalar(const GaussInt& g) { return g.to_scalar(); }

/// Small nontrivial solution of x² = A y² + B z² with |A|, |B| ≤ 2, by enumeration.
inline std::optional<Triple> legendre_small(const Scalar& a, const Scalar& b) {
  std::vector<Scalar> box;
  for (int re = -2; re <= 2; ++re)
    for (int im = -2; im <= 2; ++im) box.push_back(Scalar{Rational(re), Rational(im)});
  for (const auto& y : box)
    for (const auto& z : box) {
      if (y.is_zero() && z.is_zero()) continue;
      if (auto x = sqrt_if_square(a * y * y + b * z * z)) return Triple{*x, y, z};
    }
  return std::nullopt;
}

/// Nontrivial (x, y, z) with x² = A y² + B z², A and B squarefree and nonzero; nullopt when
/// only the trivial solution exists.
inline std::optional<Triple> legendre(const GaussInt& a, const GaussInt& b) {
  const Scalar as = to_scalar(a), bs = to_scalar(b);
  if (auto s = sqrt_if_square(as)) return Triple{*s, Scalar(1), Scalar(0)};
  if (auto s = sqrt_if_square(bs)) return Triple{*s, Scalar(0), Scalar(1)};
  if (auto r = sqrt_if_square(-bs / as)) return Triple{Scalar(0), *r, Scalar(1)};
  if (a.norm() > b.norm()) {
    auto sol = legendre(b, a);
    if (!sol) return std::nullopt;
    return Triple{(*sol)[0], (*sol)[2], (*sol)[1]};
  }
  if (b.norm() <= 4) return legendre_small(as, bs);
  auto t = sqrt_mod_squarefree(a, b);
  if (!t) return std::nullopt;
  const GaussInt b1 = *exact_div(*t * *t - a, b);
  const auto [s, b2] = squarefree_split(b1);
  auto sol = legendre(a, b2);
  if (!sol) return std::nullopt;
  // (x + y√A)(t + √A) has norm B (B₁ z)².
  const auto& [x, y, z] = *sol;
  const Scalar ts = to_scalar(*t);
  return Triple{x * ts + as * y, x + ts * y, to_scalar(b1) * z / to_scalar(s)};
}

/// q = root² · free with free a squarefree Gaussian integer.
struct SquareClass {
  Scalar root;
  GaussInt free;
};

inline SquareClass square_class(const Scalar& q) {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), q.re().denominator().get_mpz_t(), q.im().denominator().get_mpz_t());
  const mpz_class d2 = den * den;
  const mpz_class re = q.re().numerator() * (d2 / q.re().denominator());
  const mpz_class im = q.im().numerator() * (d2 / q.im().denominator());
  const auto [s, g] = squarefree_split(GaussInt{re, im});
  return {to_scalar(s) / Scalar(Rational(den)), g};
}

/// −a b = s² d for squarefree a, b, without factoring.
inline std::pair<GaussInt, GaussInt> negated_product(const GaussInt& a, const GaussInt& b) {
  const GaussInt g = gauss_gcd(a, b);
  return {g, GaussInt{-1, 0} * *exact_div(a, g) * *exact_div(b, g)};
}

/// Nontrivial (x, y, z) with a x² + b y² + c z² = 0, or nullopt when the form is anisotropic.
inline std::optional<Triple> isotropic_ternary(const SquareClass& a, const SquareClass& b, const SquareClass& c) {
  // With X = root_a x etc.: (a X)² = −ab Y² − ac Z².
  const auto [s1, g1] = negated_product(a.free, b.free);
  const auto [s2, g2] = negated_product(a.free, c.free);
  auto sol = legendre(g1, g2);
  if (!sol) return std::nullopt;
  const auto& [u, v, w] = *sol;
  const Scalar x = u / to_scalar(a.free), y = v / to_scalar(s1), z = w / to_scalar(s2);
  return Triple{x / a.root, y / b.root, z / c.root};
}

}  // namespace detail

/// Nontrivial (x, y, z) over Q(i) with a x² + b y² + c z² = 0 for nonzero a, b, c, or nullopt
/// when the form is anisotropic. Throws detail::FactoringBudgetExceeded when a coefficient is
/// too hard to factor.
inline std::optional<std::array<Scalar, 3>> isotropic_ternary(const Scalar& a, const Scalar& b, const Scalar& c) {
  using namespace detail;
  return isotropic_ternary(square_class(a), square_class(b), square_class(c));
}

}  // namespace spreal
