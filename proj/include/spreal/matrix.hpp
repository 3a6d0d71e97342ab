#pragma once

// Dense exact matrices over Q(i), the symplectic form, and the block algebras (⊕, ⊞).

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spreal/error.hpp"
#include "spreal/field.hpp"
#include "spreal/gaussint.hpp"

namespace spreal {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix zero(std::size_t n) { return Matrix(n, n); }

  static Matrix diagonal(std::initializer_list<Scalar> d) {
    Matrix m(d.size(), d.size());
    std::size_t i = 0;
    for (const auto& v : d) {
      m(i, i) = v;
      ++i;
    }
    return m;
  }

  /// Column matrix from a vector.
  static Matrix column(std::span<const Scalar> v) {
    Matrix m(v.size(), 1);
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> data() const { return data_; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Scalar> col(std::size_t c) const {
    std::vector<Scalar> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_col(std::size_t c, std::span<const Scalar> v) {
    if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": shapes differ");
}

inline void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquareInput, std::string(op) + ": matrix is not square");
}

inline void require_even_square(const Matrix& a, const char* op) {
  require_square(a, op);
  if (a.rows() % 2 != 0) throw Error(ErrorCode::OddOrderInput, std::string(op) + ": odd order");
}

}  // namespace detail

inline Matrix add(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "add");
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

inline Matrix sub(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "sub");
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

/// Product computed over Z[i] after clearing row denominators of `a` and column denominators
/// of `b`; each entry is reduced once.
inline Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "mul: inner dimensions differ");
  std::vector<mpz_class> row_scale, col_scale;
  const auto p = detail::IntMatrix::cleared_rows(a, &row_scale) * detail::IntMatrix::cleared_cols(b, &col_scale);
  Matrix out(a.rows(), b.cols());
  mpz_class den;
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) {
      const auto& e = p(r, c);
      if (e.is_zero()) continue;
      den = row_scale[r] * col_scale[c];
      out(r, c) = Scalar{Rational(mpq_class(e.re, den)), Rational(mpq_class(e.im, den))};
    }
  return out;
}

inline Matrix scalar_mul(const Scalar& s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  if (s.is_zero()) return out;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero()) out(r, c) = s * a(r, c);
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }
inline Matrix operator*(const Scalar& s, const Matrix& a) { return scalar_mul(s, a); }
inline Matrix operator-(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero()) out(r, c) = -a(r, c);
  return out;
}

/// A - s·I.
inline Matrix shift(const Matrix& a, const Scalar& s) {
  detail::require_square(a, "shift");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= s;
  return out;
}

inline Matrix power(const Matrix& a, unsigned k) {
  detail::require_square(a, "power");
  Matrix out = Matrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

inline std::vector<Scalar> apply(const Matrix& a, std::span<const Scalar> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "apply: length");
  std::vector<Scalar> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero() && !v[c].is_zero()) out[r].add_product(a(r, c), v[c]);
  return out;
}

inline Matrix inverse(const Matrix& a) {
  detail::require_square(a, "inverse");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && work(pivot, c).is_zero()) ++pivot;
    if (pivot == n) throw Error(ErrorCode::SingularMatrix, "inverse: matrix is singular");
    work.swap_rows(pivot, c);
    inv.swap_rows(pivot, c);
    Scalar scale = work(c, c).inv();
    for (std::size_t j = 0; j < n; ++j) {
      if (!work(c, j).is_zero()) work(c, j) *= scale;
      if (!inv(c, j).is_zero()) inv(c, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || work(r, c).is_zero()) continue;
      Scalar f = work(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!work(c, j).is_zero()) work(r, j).add_product(f, work(c, j), -1);
        if (!inv(c, j).is_zero()) inv(r, j).add_product(f, inv(c, j), -1);
      }
    }
  }
  return inv;
}

/// Exact rank, by fraction-free elimination over Z[i] after clearing row denominators.
inline std::size_t rank(const Matrix& a) {
  return detail::pivot_columns(detail::IntMatrix::cleared_rows(a)).size();
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  auto ff = detail::fraction_free_rref(detail::IntMatrix::cleared_rows(m));
  const Scalar inv_scale = ff.scale.to_scalar().inv();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& e = ff.m(r, c);
      m(r, c) = e.is_zero() ? Scalar{} : e.to_scalar() * inv_scale;
    }
  return ff.pivots;
}

namespace detail {

inline Matrix nullspace(IntMatrix a) {
  const std::size_t cols = a.cols();
  auto ff = fraction_free_rref(std::move(a));
  const Scalar inv_scale = ff.scale.to_scalar().inv();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ff.pivots) is_pivot[p] = true;
  Matrix basis(cols, cols - ff.pivots.size());
  std::size_t out = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, out) = 1;
    for (std::size_t i = 0; i < ff.pivots.size(); ++i)
      if (!ff.m(i, free).is_zero()) basis(ff.pivots[i], out) = -(ff.m(i, free).to_scalar() * inv_scale);
    ++out;
  }
  return basis;
}

}  // namespace detail

/// Basis of the kernel as the columns of the result (one column per free variable).
inline Matrix nullspace(const Matrix& a) { return detail::nullspace(detail::IntMatrix::cleared_rows(a)); }

/// nullspace(power(a, k)), computed over Z[i] with the rows of each partial power made primitive.
inline Matrix power_nullspace(const Matrix& a, unsigned k) {
  detail::require_square(a, "power_nullspace");
  if (k == 0) return Matrix(a.cols(), 0);
  const auto step = detail::IntMatrix::cleared(a);
  auto p = step;
  for (unsigned i = 1; i < k; ++i) {
    p = p * step;
    p.make_rows_primitive();
  }
  return detail::nullspace(std::move(p));
}

/// Canonical basis (reduced echelon in the transposed sense) of the span of the columns.
inline Matrix column_space(const Matrix& a) {
  Matrix t = transpose(a);
  auto pivots = rref(t);
  Matrix basis(a.rows(), pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t r = 0; r < a.rows(); ++r) basis(r, i) = t(i, r);
  return basis;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack: row counts differ");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

/// P ⊕ Q, the block-diagonal sum.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  detail::require_square(a, "direct_sum");
  detail::require_square(b, "direct_sum");
  Matrix out(a.rows() + b.rows(), a.rows() + b.rows());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.rows(), b);
  return out;
}

/// A ⊞ B: split both into four equal quadrants and take the direct sum quadrant-wise.
inline Matrix expanding_sum(const Matrix& a, const Matrix& b) {
  detail::require_even_square(a, "expanding_sum");
  detail::require_even_square(b, "expanding_sum");
  const std::size_t m = a.rows() / 2;
  const std::size_t n = b.rows() / 2;
  const std::size_t half = m + n;
  auto place_a = [&](std::size_t i) { return i < m ? i : i - m + half; };
  auto place_b = [&](std::size_t i) { return i < n ? m + i : half + m + (i - n); };
  Matrix out(2 * half, 2 * half);
  for (std::size_t r = 0; r < 2 * m; ++r)
    for (std::size_t c = 0; c < 2 * m; ++c) out(place_a(r), place_a(c)) = a(r, c);
  for (std::size_t r = 0; r < 2 * n; ++r)
    for (std::size_t c = 0; c < 2 * n; ++c) out(place_b(r), place_b(c)) = b(r, c);
  return out;
}

/// Left fold of ⊞ over a nonempty list.
inline Matrix expanding_sum(std::span<const Matrix> parts) {
  if (parts.empty()) return Matrix{};
  Matrix acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = expanding_sum(acc, parts[i]);
  return acc;
}

/// J₂ₙ = [[0, Iₙ], [−Iₙ, 0]].
inline Matrix symplectic_form(std::size_t n) {
  Matrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

/// J·A without a general product.
inline Matrix form_times(const Matrix& a) {
  const std::size_t n = a.rows() / 2;
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out(r, c) = a(n + r, c);
      out(n + r, c) = -a(r, c);
    }
  return out;
}

/// A·J without a general product.
inline Matrix times_form(const Matrix& a) {
  const std::size_t n = a.cols() / 2;
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = -a(r, n + c);
      out(r, n + c) = a(r, c);
    }
  return out;
}

/// ω(a, b) = aᵀ J b.
inline Scalar omega(std::span<const Scalar> a, std::span<const Scalar> b) {
  const std::size_t n = a.size() / 2;
  Scalar s;
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i].is_zero() && !b[n + i].is_zero()) s.add_product(a[i], b[n + i]);
    if (!a[n + i].is_zero() && !b[i].is_zero()) s.add_product(a[n + i], b[i], -1);
  }
  return s;
}

inline bool is_symplectic(const Matrix& g) {
  detail::require_even_square(g, "is_symplectic");
  return transpose(g) * form_times(g) == symplectic_form(g.rows() / 2);
}

/// −J gᵀ J, which is g⁻¹ when g is symplectic.
inline Matrix symplectic_inverse(const Matrix& g) {
  detail::require_even_square(g, "symplectic_inverse");
  return -form_times(times_form(transpose(g)));
}

inline bool is_hamiltonian(const Matrix& x) {
  detail::require_even_square(x, "is_hamiltonian");
  return times_form(transpose(x)) == -form_times(x);
}

inline bool is_skew_hamiltonian(const Matrix& x) {
  detail::require_even_square(x, "is_skew_hamiltonian");
  return times_form(transpose(x)) == form_times(x);
}

inline bool is_involution(const Matrix& g) {
  detail::require_even_square(g, "is_involution");
  return g * g == Matrix::identity(g.rows());
}

inline bool is_skew_involution(const Matrix& g) {
  detail::require_even_square(g, "is_skew_involution");
  return g * g == -Matrix::identity(g.rows());
}

}  // namespace spreal
