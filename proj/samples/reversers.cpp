// Builds a Hamiltonian matrix from its canonical form, hides it behind a symplectic change of
// basis, then recovers both kinds of reverser.

#include <iostream>

#include "spreal/random.hpp"
#include "spreal/spreal.hpp"

int main() {
  using namespace spreal;

  const CanonicalSpec spec{{PairBlock{0, 1}, PairBlock{2, 1}, PairBlock{2, 1}}};
  const Matrix s0 = random_symplectic(order(spec) / 2, 42);
  const Matrix x = s0 * build(spec) * symplectic_inverse(s0);
  std::cout << "X =\n" << x << '\n';

  const auto skew = skew_reverser(x);
  std::cout << "skew-involution reverser, all checks " << (skew.checks.all() ? "pass" : "fail") << ":\n"
            << skew.reverser << '\n';

  const auto strong = strong_reverser(x);
  if (const auto* cert = std::get_if<ReverserCertificate>(&strong)) {
    std::cout << "involution reverser, all checks " << (cert->checks.all() ? "pass" : "fail") << ":\n"
              << cert->reverser << '\n';
  } else {
    for (const auto& [block, m] : std::get<StrongRealityReport>(strong).violations)
      std::cout << "J(" << block.lambda << ", " << block.size << ") appears " << m << " times\n";
  }

  // Λ₂ is reversed by diag(i, −i) but by no symplectic involution.
  const auto lambda2 = strong_reverser(build_lambda(1));
  std::cout << "Lambda_2 strongly real: " << std::boolalpha
            << std::holds_alternative<ReverserCertificate>(lambda2) << '\n';
}
