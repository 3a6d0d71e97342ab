#pragma once

// Exact scalars: reduced rationals over GMP and the Gaussian rationals Q(i).

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "spreal/error.hpp"

namespace spreal {

class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    value_.canonicalize();
  }

  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  explicit Rational(const mpz_class& v) : value_(v) {}

  /// Parses `['-'] digits ['/' digits]`. Non-reduced input is accepted and reduced.
  static Rational parse(std::string_view text) {
    auto fail = [&] {
      return Error(ErrorCode::MalformedInput, "bad rational literal '" + std::string(text) + "'");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
      negative = true;
      ++pos;
    }
    auto digits = [&](std::size_t from) {
      std::size_t end = from;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      return end;
    };
    std::size_t num_end = digits(pos);
    if (num_end == pos) throw fail();
    mpz_class num(std::string(text.substr(pos, num_end - pos)), 10);
    mpz_class den = 1;
    if (num_end < text.size()) {
      if (text[num_end] != '/') throw fail();
      std::size_t den_end = digits(num_end + 1);
      if (den_end == num_end + 1 || den_end != text.size()) throw fail();
      den = mpz_class(std::string(text.substr(num_end + 1, den_end - num_end - 1)), 10);
      if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational literal with zero denominator");
    }
    if (negative) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
  }

  std::string str() const { return value_.get_str(10); }

  const mpq_class& value() const { return value_; }
  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  Rational operator-() const {
    Rational out;
    mpq_neg(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  /// *this += sign·a·b.
  Rational& add_product(const Rational& a, const Rational& b, int sign = 1) {
    thread_local mpq_class t;
    mpq_mul(t.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
    if (sign > 0)
      mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
    else
      mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
    return *this;
  }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

/// Nonnegative rational square root, if one exists.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  mpz_class num = r.numerator();
  mpz_class den = r.denominator();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(sn, sd));
}

/// a + b·i with a, b rational.
class GaussianRational {
 public:
  GaussianRational() = default;

  template <std::integral T>
  GaussianRational(T re) : re_(re) {}  // NOLINT(google-explicit-constructor)

  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  /// re² + im², the field norm down to Q.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (o.im_.is_zero()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    Rational re, im;
    re.add_product(re_, o.re_).add_product(im_, o.im_, -1);
    im.add_product(re_, o.im_).add_product(im_, o.re_);
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  /// *this += sign·a·b.
  GaussianRational& add_product(const GaussianRational& a, const GaussianRational& b, int sign = 1) {
    if (!a.re_.is_zero()) {
      if (!b.re_.is_zero()) re_.add_product(a.re_, b.re_, sign);
      if (!b.im_.is_zero()) im_.add_product(a.re_, b.im_, sign);
    }
    if (!a.im_.is_zero()) {
      if (!b.im_.is_zero()) re_.add_product(a.im_, b.im_, -sign);
      if (!b.re_.is_zero()) im_.add_product(a.im_, b.re_, sign);
    }
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inv(); }

  GaussianRational inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  /// Lexicographic on (re, im); used for every deterministic ordering in the library.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
    if (auto c = a.re_ <=> b.re_; c != 0) return c;
    return a.im_ <=> b.im_;
  }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string s = re_.is_zero() ? std::string() : re_.str() + (im_.sign() > 0 ? "+" : "");
    return s + im_.str() + "i";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

using Scalar = GaussianRational;

inline GaussianRational add(const GaussianRational& a, const GaussianRational& b) { return a + b; }
inline GaussianRational mul(const GaussianRational& a, const GaussianRational& b) { return a * b; }
inline GaussianRational neg(const GaussianRational& a) { return -a; }
inline GaussianRational inv(const GaussianRational& a) { return a.inv(); }

/// Square root in Q(i) with re > 0, or re = 0 and im >= 0; nullopt when `a` is not a square.
inline std::optional<GaussianRational> sqrt_if_square(const GaussianRational& a) {
  if (a.is_zero()) return GaussianRational{};
  // (x + yi)² = a forces x² - y² = re a and x² + y² = |a|.
  auto modulus = rational_sqrt(a.norm());
  if (!modulus) return std::nullopt;
  auto x = rational_sqrt((a.re() + *modulus) / Rational(2));
  if (!x) return std::nullopt;
  Rational y;
  if (!x->is_zero()) {
    y = a.im() / (Rational(2) * *x);
  } else {
    auto yy = rational_sqrt(-a.re());
    if (!yy) return std::nullopt;
    y = *yy;
  }
  GaussianRational root{*x, y};
  if (root * root != a) return std::nullopt;
  return root;
}

/// True when a / b is a nonzero square in Q(i).
inline bool same_square_class(const GaussianRational& a, const GaussianRational& b) {
  if (a.is_zero() || b.is_zero()) return false;
  return sqrt_if_square(a / b).has_value();
}

}  // namespace spreal
