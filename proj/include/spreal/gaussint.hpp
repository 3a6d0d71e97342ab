#pragma once

// Gaussian integers and fraction-free elimination over Z[i].

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "spreal/field.hpp"

namespace spreal::detail {

struct GaussInt {
  mpz_class re = 0;
  mpz_class im = 0;

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
  bool is_zero() const { return re == 0 && im == 0; }
  mpz_class norm() const { return re * re + im * im; }
  GaussInt operator*(const GaussInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
  Scalar to_scalar() const { return {Rational(re), Rational(im)}; }
};

/// Dense matrix over Z[i].
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// `m` scaled by the lcm of all denominators.
  template <typename M>
  static IntMatrix cleared(const M& m, mpz_class* scale = nullptr) {
    mpz_class l = 1;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) lcm_into(l, m(r, c));
    IntMatrix out = scaled(m, [&](std::size_t, std::size_t) -> const mpz_class& { return l; });
    if (scale) *scale = std::move(l);
    return out;
  }

  /// `m` with row r scaled by scales[r], the lcm of its denominators; same rank as `m`.
  template <typename M>
  static IntMatrix cleared_rows(const M& m, std::vector<mpz_class>* scales = nullptr) {
    std::vector<mpz_class> ls(m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) lcm_into(ls[r], m(r, c));
    IntMatrix out = scaled(m, [&](std::size_t r, std::size_t) -> const mpz_class& { return ls[r]; });
    if (scales) *scales = std::move(ls);
    return out;
  }

  /// `m` with column c scaled by scales[c], the lcm of its denominators.
  template <typename M>
  static IntMatrix cleared_cols(const M& m, std::vector<mpz_class>* scales = nullptr) {
    std::vector<mpz_class> ls(m.cols(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) lcm_into(ls[c], m(r, c));
    IntMatrix out = scaled(m, [&](std::size_t, std::size_t c) -> const mpz_class& { return ls[c]; });
    if (scales) *scales = std::move(ls);
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GaussInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const GaussInt& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const GaussInt& y = b(k, j);
          if (y.is_zero()) continue;
          GaussInt& z = out(i, j);
          mpz_addmul(z.re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
          mpz_submul(z.re.get_mpz_t(), x.im.get_mpz_t(), y.im.get_mpz_t());
          mpz_addmul(z.im.get_mpz_t(), x.re.get_mpz_t(), y.im.get_mpz_t());
          mpz_addmul(z.im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
        }
      }
    return out;
  }

  IntMatrix select_columns(const std::vector<std::size_t>& cols) const {
    IntMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t i = 0; i < cols.size(); ++i) out(r, i) = (*this)(r, cols[i]);
    return out;
  }

  /// Divides every row by the integer gcd of its entries.
  void make_rows_primitive() {
    mpz_class g;
    for (std::size_t r = 0; r < rows_; ++r) {
      g = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), (*this)(r, c).re.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), (*this)(r, c).im.get_mpz_t());
      }
      if (g <= 1) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        GaussInt& e = (*this)(r, c);
        mpz_divexact(e.re.get_mpz_t(), e.re.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(e.im.get_mpz_t(), e.im.get_mpz_t(), g.get_mpz_t());
      }
    }
  }

  /// Divides every column by the integer gcd of its entries.
  void make_columns_primitive() {
    mpz_class g;
    for (std::size_t c = 0; c < cols_; ++c) {
      g = 0;
      for (std::size_t r = 0; r < rows_; ++r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), (*this)(r, c).re.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), (*this)(r, c).im.get_mpz_t());
      }
      if (g <= 1) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        GaussInt& e = (*this)(r, c);
        mpz_divexact(e.re.get_mpz_t(), e.re.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(e.im.get_mpz_t(), e.im.get_mpz_t(), g.get_mpz_t());
      }
    }
  }

 private:
  static void lcm_into(mpz_class& l, const Scalar& s) {
    if (!s.re().is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.re().denominator().get_mpz_t());
    if (!s.im().is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.im().denominator().get_mpz_t());
  }

  template <typename M, typename Scale>
  static IntMatrix scaled(const M& m, Scale&& scale) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const Scalar& s = m(r, c);
        if (s.is_zero()) continue;
        const mpz_class& l = scale(r, c);
        GaussInt& e = out(r, c);
        if (!s.re().is_zero()) e.re = l / s.re().denominator() * s.re().numerator();
        if (!s.im().is_zero()) e.im = l / s.im().denominator() * s.im().numerator();
      }
    return out;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussInt> data_;
};

/// Pivot columns of the row echelon form, by Bareiss's fraction-free elimination. The listed
/// columns of `a` form a basis of its column space.
inline std::vector<std::size_t> pivot_columns(IntMatrix m) {
  std::vector<std::size_t> pivots;
  GaussInt prev{1, 0};
  mpz_class prev_norm = 1;
  mpz_class vr, vi, tr, ti;
  std::size_t k = 0;
  for (std::size_t c = 0; c < m.cols() && k < m.rows(); ++c) {
    std::size_t pivot = k;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != k)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(k, j));
    const GaussInt p = m(k, c);
    for (std::size_t r = k + 1; r < m.rows(); ++r) {
      const GaussInt f = m(r, c);
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        GaussInt& e = m(r, j);
        const GaussInt& u = m(k, j);
        // v = p·e − f·u
        vr = p.re * e.re;
        mpz_submul(vr.get_mpz_t(), p.im.get_mpz_t(), e.im.get_mpz_t());
        vi = p.re * e.im;
        mpz_addmul(vi.get_mpz_t(), p.im.get_mpz_t(), e.re.get_mpz_t());
        if (!f.is_zero() && !u.is_zero()) {
          mpz_submul(vr.get_mpz_t(), f.re.get_mpz_t(), u.re.get_mpz_t());
          mpz_addmul(vr.get_mpz_t(), f.im.get_mpz_t(), u.im.get_mpz_t());
          mpz_submul(vi.get_mpz_t(), f.re.get_mpz_t(), u.im.get_mpz_t());
          mpz_submul(vi.get_mpz_t(), f.im.get_mpz_t(), u.re.get_mpz_t());
        }
        if (prev_norm == 1 && prev.re == 1) {
          e.re = vr;
          e.im = vi;
          continue;
        }
        // e = v · conj(prev) / |prev|²
        tr = vr * prev.re;
        mpz_addmul(tr.get_mpz_t(), vi.get_mpz_t(), prev.im.get_mpz_t());
        ti = vi * prev.re;
        mpz_submul(ti.get_mpz_t(), vr.get_mpz_t(), prev.im.get_mpz_t());
        mpz_divexact(e.re.get_mpz_t(), tr.get_mpz_t(), prev_norm.get_mpz_t());
        mpz_divexact(e.im.get_mpz_t(), ti.get_mpz_t(), prev_norm.get_mpz_t());
      }
      m(r, c) = GaussInt{};
    }
    prev = p;
    prev_norm = p.norm();
    pivots.push_back(c);
    ++k;
  }
  return pivots;
}

/// Fraction-free Gauss–Jordan over Z[i]. Every pivot entry ends equal to `scale`, so the
/// reduced row echelon form is m / scale.
struct FractionFreeRref {
  IntMatrix m;
  std::vector<std::size_t> pivots;
  GaussInt scale{1, 0};
};

inline FractionFreeRref fraction_free_rref(IntMatrix m) {
  FractionFreeRref out;
  GaussInt prev{1, 0};
  mpz_class prev_norm = 1;
  mpz_class vr, vi, tr, ti;
  std::size_t k = 0;
  for (std::size_t c = 0; c < m.cols() && k < m.rows(); ++c) {
    std::size_t pivot = k;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != k)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(k, j));
    const GaussInt p = m(k, c);
    const bool unit_prev = prev_norm == 1 && prev.re == 1;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == k) continue;
      const GaussInt f = m(r, c);
      if (f.is_zero() && p == prev) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        GaussInt& e = m(r, j);
        const GaussInt& u = m(k, j);
        const bool lhs = !e.is_zero();
        const bool rhs = !f.is_zero() && !u.is_zero();
        if (!lhs && !rhs) continue;
        vr = 0;
        vi = 0;
        if (lhs) {
          mpz_addmul(vr.get_mpz_t(), p.re.get_mpz_t(), e.re.get_mpz_t());
          mpz_submul(vr.get_mpz_t(), p.im.get_mpz_t(), e.im.get_mpz_t());
          mpz_addmul(vi.get_mpz_t(), p.re.get_mpz_t(), e.im.get_mpz_t());
          mpz_addmul(vi.get_mpz_t(), p.im.get_mpz_t(), e.re.get_mpz_t());
        }
        if (rhs) {
          mpz_submul(vr.get_mpz_t(), f.re.get_mpz_t(), u.re.get_mpz_t());
          mpz_addmul(vr.get_mpz_t(), f.im.get_mpz_t(), u.im.get_mpz_t());
          mpz_submul(vi.get_mpz_t(), f.re.get_mpz_t(), u.im.get_mpz_t());
          mpz_submul(vi.get_mpz_t(), f.im.get_mpz_t(), u.re.get_mpz_t());
        }
        if (unit_prev) {
          e.re = vr;
          e.im = vi;
          continue;
        }
        tr = vr * prev.re;
        mpz_addmul(tr.get_mpz_t(), vi.get_mpz_t(), prev.im.get_mpz_t());
        ti = vi * prev.re;
        mpz_submul(ti.get_mpz_t(), vr.get_mpz_t(), prev.im.get_mpz_t());
        mpz_divexact(e.re.get_mpz_t(), tr.get_mpz_t(), prev_norm.get_mpz_t());
        mpz_divexact(e.im.get_mpz_t(), ti.get_mpz_t(), prev_norm.get_mpz_t());
      }
    }
    prev = p;
    prev_norm = p.norm();
    out.pivots.push_back(c);
    ++k;
  }
  out.scale = prev;
  out.m = std::move(m);
  return out;
}

}  // namespace spreal::detail
