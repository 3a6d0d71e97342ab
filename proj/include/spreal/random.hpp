#pragma once

// Seeded generator of symplectic matrices for test corpora.

#include <cstdint>
#include <random>

#include "spreal/matrix.hpp"

namespace spreal {

namespace detail {

// mt19937_64's output sequence is fixed by the standard; the distributions are not, so
// draws are reduced by hand to keep corpora byte-identical across standard libraries.
class SmallDraw {
 public:
  explicit SmallDraw(std::uint64_t seed) : rng_(seed) {}

  long in_range(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
  }

  /// re and im each with numerator in [-3, 3] and denominator in [1, 3].
  Scalar gaussian() {
    Rational re(in_range(-3, 3), in_range(1, 3));
    Rational im(in_range(-3, 3), in_range(1, 3));
    return {re, im};
  }

 private:
  std::mt19937_64 rng_;
};

inline Matrix block_diag_symplectic(const Matrix& g) {
  return direct_sum(g, transpose(inverse(g)));
}

}  // namespace detail

inline constexpr unsigned kDefaultSymplecticFactors = 4;

/// Product of `factors` generators of Sp(2n, Q(i)) drawn from a seeded stream:
/// diag(g, g⁻ᵀ) with g unit lower or upper triangular, [[I, B], [0, I]] with B symmetric,
/// and J₂ₙ. Zero factors yields the identity.
inline Matrix random_symplectic(std::size_t n, std::uint64_t seed,
                                unsigned factors = kDefaultSymplecticFactors) {
  detail::SmallDraw draw(seed);
  Matrix s = Matrix::identity(2 * n);
  for (unsigned f = 0; f < factors; ++f) {
    Matrix gen;
    const long kind = draw.in_range(0, 3);
    switch (kind) {
      case 0:
      case 1: {
        const bool lower = kind == 0;
        Matrix g = Matrix::identity(n);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            if ((lower && c < r) || (!lower && c > r)) g(r, c) = draw.gaussian();
        gen = detail::block_diag_symplectic(g);
        break;
      }
      case 2: {
        Matrix b(n, n);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = r; c < n; ++c) b(r, c) = b(c, r) = draw.gaussian();
        gen = Matrix::identity(2 * n);
        gen.set_block(0, n, b);
        break;
      }
      default:
        gen = symplectic_form(n);
        break;
    }
    s = s * gen;
  }
  return s;
}

}  // namespace spreal
