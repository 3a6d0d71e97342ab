#pragma once

// Univariate polynomials over Q(i), characteristic polynomials, and the search for roots
// lying in Q(i) by divisor enumeration in the Gaussian integers.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spreal/field.hpp"
#include "spreal/gaussint.hpp"
#include "spreal/matrix.hpp"

namespace spreal {

/// Coefficients from the constant term upward; never has a zero leading coefficient.
using Polynomial = std::vector<Scalar>;

namespace poly {

inline void trim(Polynomial& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int degree(const Polynomial& p) { return static_cast<int>(p.size()) - 1; }

inline Polynomial mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j].add_product(a[i], b[j]);
  }
  trim(out);
  return out;
}

inline Polynomial sub(Polynomial a, const Polynomial& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline Polynomial scale(Polynomial a, const Scalar& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

/// (quotient, remainder) of a / b; b must be nonzero.
inline std::pair<Polynomial, Polynomial> divmod(Polynomial a, const Polynomial& b) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Polynomial q(a.size() - b.size() + 1);
  const Scalar lead_inv = b.back().inv();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Scalar c = a[k + b.size() - 1] * lead_inv;
    q[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) a[k + j].add_product(c, b[j], -1);
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.size() <= 1) return {};
  Polynomial d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Scalar(static_cast<long>(i));
  trim(d);
  return d;
}

inline Polynomial monic(Polynomial p) {
  if (p.empty()) return p;
  return scale(std::move(p), p.back().inv());
}

inline Polynomial gcd(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

inline Scalar eval(const Polynomial& p, const Scalar& x) {
  Scalar acc;
  for (std::size_t k = p.size(); k-- > 0;) {
    acc *= x;
    acc += p[k];
  }
  return acc;
}

}  // namespace poly

/// det(x·I − A), monic, by Berkowitz's division-free recurrence on L·A over Z[i], where L
/// clears every denominator of A.
inline Polynomial characteristic_polynomial(const Matrix& a) {
  detail::require_square(a, "characteristic_polynomial");
  using detail::GaussInt;
  const std::size_t n = a.rows();
  mpz_class l;
  const detail::IntMatrix m = detail::IntMatrix::cleared(a, &l);
  auto addmul = [](GaussInt& z, const GaussInt& x, const GaussInt& y) {
    mpz_addmul(z.re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
    mpz_submul(z.re.get_mpz_t(), x.im.get_mpz_t(), y.im.get_mpz_t());
    mpz_addmul(z.im.get_mpz_t(), x.re.get_mpz_t(), y.im.get_mpz_t());
    mpz_addmul(z.im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
  };
  // Highest degree first.
  std::vector<GaussInt> coeffs{GaussInt{1, 0}};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<GaussInt> t(r + 2);
    t[0] = GaussInt{1, 0};
    t[1] = GaussInt{-m(r, r).re, -m(r, r).im};
    std::vector<GaussInt> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      GaussInt dot;
      for (std::size_t i = 0; i < r; ++i) addmul(dot, m(r, i), v[i]);
      t[k + 2] = GaussInt{-dot.re, -dot.im};
      if (k + 1 == r) break;
      std::vector<GaussInt> w(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) addmul(w[i], m(i, j), v[j]);
      v = std::move(w);
    }
    std::vector<GaussInt> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) addmul(next[i], t[i - j], coeffs[j]);
    coeffs = std::move(next);
  }
  Polynomial p(n + 1);
  mpz_class scale = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    const GaussInt& c = coeffs[k];
    p[n - k] = Scalar{Rational(mpq_class(c.re, scale)), Rational(mpq_class(c.im, scale))};
    scale *= l;
  }
  return p;
}

namespace detail {

/// Exact quotient a / b in Z[i], if b divides a.
inline std::optional<GaussInt> exact_div(const GaussInt& a, const GaussInt& b) {
  const mpz_class n = b.norm();
  const mpz_class re = a.re * b.re + a.im * b.im;
  const mpz_class im = a.im * b.re - a.re * b.im;
  if (mpz_divisible_p(re.get_mpz_t(), n.get_mpz_t()) == 0 ||
      mpz_divisible_p(im.get_mpz_t(), n.get_mpz_t()) == 0)
    return std::nullopt;
  return GaussInt{re / n, im / n};
}

inline mpz_class round_div(const mpz_class& a, const mpz_class& n) {
  // floor((2a + n) / 2n), n > 0
  mpz_class q;
  mpz_class num = 2 * a + n;
  mpz_class den = 2 * n;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline GaussInt gauss_gcd(GaussInt a, GaussInt b) {
  while (!b.is_zero()) {
    const mpz_class n = b.norm();
    GaussInt q{round_div(a.re * b.re + a.im * b.im, n), round_div(a.im * b.re - a.re * b.im, n)};
    GaussInt r = a - q * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// A nontrivial factor of an odd composite n, by Brent's variant of Pollard's rho; 0 when
/// `limit` > 0 iterations of the map did not find one.
inline mpz_class pollard_rho(const mpz_class& n, unsigned long limit = 0) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  const unsigned long batch = 128;
  unsigned long spent = 0;
  for (unsigned long c = 1;; ++c) {
    auto step = [&](const mpz_class& v) {
      mpz_class r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    auto gcd_with_n = [&](const mpz_class& v) {
      mpz_class d = v, g;
      mpz_abs(d.get_mpz_t(), d.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      return g;
    };
    mpz_class x, y = 2, ys, q = 1, g = 1;
    for (unsigned long r = 1; g == 1; r *= 2) {
      if (limit && spent > limit) return 0;
      spent += 2 * r;
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      for (unsigned long k = 0; k < r && g == 1; k += batch) {
        ys = y;
        for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
          y = step(y);
          q *= x - y;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd_with_n(q);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd_with_n(x - ys);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

/// Adds the prime factorization of n to `out`. With `limit` > 0, gives up (returning false)
/// on a composite that Pollard's rho cannot split within `limit` iterations.
inline bool factor_into(mpz_class n, std::map<mpz_class, int>& out, unsigned long limit = 0) {
  if (n <= 1) return true;
  for (unsigned long p = 2; p < 1000 && p * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  if (n == 1) return true;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return true;
  }
  mpz_class d = pollard_rho(n, limit);
  if (d == 0) return false;
  return factor_into(d, out, limit) && factor_into(n / d, out, limit);
}

/// Gaussian primes (one per associate class) dividing a rational prime p.
inline std::vector<GaussInt> gaussian_primes_over(const mpz_class& p) {
  if (p == 2) return {GaussInt{1, 1}};
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), p.get_mpz_t(), 4);
  if (r == 3) return {GaussInt{p, 0}};
  // p ≡ 1 (mod 4): x² ≡ −1 from a quadratic non-residue, then gcd(p, x + i).
  mpz_class half = (p - 1) / 2, quarter = (p - 1) / 4, x;
  for (unsigned long c = 2;; ++c) {
    mpz_class base = c, t;
    mpz_powm(t.get_mpz_t(), base.get_mpz_t(), half.get_mpz_t(), p.get_mpz_t());
    if (t == p - 1) {
      mpz_powm(x.get_mpz_t(), base.get_mpz_t(), quarter.get_mpz_t(), p.get_mpz_t());
      break;
    }
  }
  GaussInt pi = gauss_gcd(GaussInt{p, 0}, GaussInt{x, 1});
  return {pi, GaussInt{pi.re, -pi.im}};
}

/// All divisors of a nonzero Gaussian integer, one representative per associate class.
inline std::vector<GaussInt> gaussian_divisors(const GaussInt& a) {
  std::map<mpz_class, int> rational;
  factor_into(a.norm(), rational);
  std::vector<GaussInt> divisors{GaussInt{1, 0}};
  for (const auto& [p, unused] : rational) {
    for (const auto& pi : gaussian_primes_over(p)) {
      int e = 0;
      GaussInt rest = a;
      while (auto q = exact_div(rest, pi)) {
        rest = *q;
        ++e;
      }
      const std::size_t base = divisors.size();
      GaussInt pw{1, 0};
      for (int k = 1; k <= e; ++k) {
        pw = pw * pi;
        for (std::size_t d = 0; d < base; ++d) divisors.push_back(divisors[d] * pw);
      }
    }
  }
  return divisors;
}

}  // namespace detail

/// Roots in Q(i) of a nonzero polynomial, with multiplicity, sorted by (re, im). Returns nullopt
/// when the polynomial does not split over Q(i).
inline std::optional<std::vector<Scalar>> roots_in_field(Polynomial p) {
  poly::trim(p);
  if (p.empty()) throw Error(ErrorCode::DivisionByZero, "roots of the zero polynomial");
  std::vector<Scalar> roots;
  std::size_t zeros = 0;
  while (zeros < p.size() && p[zeros].is_zero()) ++zeros;
  roots.insert(roots.end(), zeros, Scalar{});
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  if (poly::degree(p) == 0) return roots;

  Polynomial squarefree = poly::divmod(p, poly::gcd(p, poly::derivative(p))).first;
  // Rational root test in Z[i] on the denominator-free polynomial.
  mpz_class common = 1;
  for (const auto& c : squarefree) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.re().denominator().get_mpz_t());
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.im().denominator().get_mpz_t());
  }
  auto to_int = [&](const Scalar& c) {
    return detail::GaussInt{mpq_class(c.re().value() * common).get_num(), mpq_class(c.im().value() * common).get_num()};
  };
  const auto numerators = detail::gaussian_divisors(to_int(squarefree.front()));
  const auto denominators = detail::gaussian_divisors(to_int(squarefree.back()));
  const Scalar units[] = {Scalar(1), Scalar::i(), Scalar(-1), -Scalar::i()};

  std::vector<Scalar> simple;
  Polynomial rest = squarefree;
  for (const auto& num : numerators) {
    for (const auto& den : denominators) {
      const Scalar base = num.to_scalar() / den.to_scalar();
      for (const auto& u : units) {
        if (poly::degree(rest) <= 0) break;
        const Scalar cand = u * base;
        if (!poly::eval(rest, cand).is_zero()) continue;
        simple.push_back(cand);
        rest = poly::divmod(rest, {-cand, Scalar(1)}).first;
      }
    }
  }
  if (poly::degree(rest) > 0) return std::nullopt;

  for (const auto& r : simple) {
    const Polynomial factor{-r, Scalar(1)};
    for (;;) {
      auto [q, rem] = poly::divmod(p, factor);
      if (!rem.empty()) break;
      roots.push_back(r);
      p = std::move(q);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace spreal
