// Symplectic involution negating a skew-Hamiltonian matrix.

#include <iostream>

#include "spreal/random.hpp"
#include "spreal/spreal.hpp"

int main() {
  using namespace spreal;

  const SkewCanonicalSpec spec{{SkewBlock{0, 2}, SkewBlock{Scalar::i(), 1}, SkewBlock{-Scalar::i(), 1}}};
  const Matrix s0 = random_symplectic(build(spec).rows() / 2, 7);
  const Matrix x = s0 * build(spec) * symplectic_inverse(s0);

  std::cout << "similar to -X: " << std::boolalpha << is_similar_to_negative(x) << '\n';
  const auto result = negation_involution(x);
  if (const auto* cert = std::get_if<ReverserCertificate>(&result))
    std::cout << "g =\n" << cert->reverser << "checks pass: " << cert->checks.all() << '\n';

  const auto t = skew_canonical_transform(x);
  std::cout << "S^-1 X S equals the canonical form: " << (symplectic_inverse(t.s) * x * t.s == build(t.spec))
            << '\n';
}
