#include <gtest/gtest.h>

#include "spreal/canonical.hpp"
#include "spreal/jordan.hpp"
#include "spreal/random.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using spreal::JordanStructure;
using spreal::Matrix;
using spreal::Scalar;

TEST(JordanBlock, Definition) {
  EXPECT_EQ(spreal::jordan_block(0, 2), (Matrix{{0, 1}, {0, 0}}));
  EXPECT_EQ(spreal::jordan_block(Scalar(7), 1), (Matrix{{7}}));
  const Scalar i = Scalar::i();
  EXPECT_EQ(spreal::jordan_block(i, 3), (Matrix{{i, 1, 0}, {0, i, 1}, {0, 0, i}}));
}

TEST(Eigenvalues, Examples) {
  EXPECT_EQ(spreal::eigenvalues(Matrix::diagonal({1, -1})), (std::vector<Scalar>{-1, 1}));
  EXPECT_EQ(spreal::eigenvalues(spreal::build_lambda(2)), (std::vector<Scalar>(4, Scalar(0))));
  EXPECT_EQ(spreal::eigenvalues(Matrix{{0, 1}, {-1, 0}}), (std::vector<Scalar>{-Scalar::i(), Scalar::i()}));
}

TEST(CharacteristicPolynomial, MatchesOracleDeterminant) {
  gen::Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = rng.uniform(1, 6);
    const Matrix a = rng.matrix(n, n);
    const auto p = spreal::characteristic_polynomial(a);
    ASSERT_EQ(p.size(), n + 1);
    for (int x = -2; x <= static_cast<int>(n); ++x) {
      const Scalar point = x % 2 == 0 ? Scalar(x) : Scalar(x) + Scalar::i();
      EXPECT_EQ(oracle::from(spreal::poly::eval(p, point)),
                oracle::det(oracle::from(spreal::scalar_mul(point, Matrix::identity(n)) - a)));
    }
  }
}

TEST(Eigenvalues, OutsideFieldThrows) {
  try {
    (void)spreal::eigenvalues(Matrix{{0, 2}, {1, 0}});
    FAIL();
  } catch (const spreal::Error& e) {
    EXPECT_EQ(e.code(), spreal::ErrorCode::SpectrumNotInField);
  }
}

TEST(JordanStructure, Examples) {
  const Matrix j = spreal::jordan_block(0, 2);
  const Matrix x = spreal::direct_sum(j, -spreal::transpose(j));
  EXPECT_EQ(spreal::jordan_structure(x), (JordanStructure{{{0, 2}, 2}}));
  EXPECT_EQ(oracle::jordan(oracle::from(x), {Scalar(0)}), oracle::flatten(JordanStructure{{{0, 2}, 2}}));
  EXPECT_EQ(spreal::jordan_structure(Matrix::diagonal({1, -1})), (JordanStructure{{{1, 1}, 1}, {{-1, 1}, 1}}));
  for (std::size_t l = 1; l <= 4; ++l)
    EXPECT_EQ(spreal::jordan_structure(spreal::build_lambda(l)), (JordanStructure{{{0, 2 * l}, 1}}));
}

TEST(JordanStructure, Validity) {
  EXPECT_FALSE(spreal::is_valid_hamiltonian_structure(JordanStructure{{{0, 3}, 1}}));
  EXPECT_TRUE(spreal::is_valid_hamiltonian_structure(JordanStructure{{{0, 2}, 1}}));
  EXPECT_TRUE(spreal::is_valid_skew_hamiltonian_structure(JordanStructure{{{1, 1}, 2}}));
  EXPECT_FALSE(spreal::is_valid_skew_hamiltonian_structure(JordanStructure{{{1, 1}, 1}}));
  EXPECT_FALSE(spreal::is_valid_hamiltonian_structure(JordanStructure{{{1, 1}, 1}}));
}

TEST(JordanStructure, RoundTripThroughDirectSums) {
  gen::Rng rng(31);
  const auto eig = gen::all_eigenvalues();
  for (int t = 0; t < 150; ++t) {
    JordanStructure js;
    std::size_t left = rng.uniform(1, 6);
    while (left > 0) {
      const std::size_t k = rng.uniform(1, static_cast<long>(left));
      js.add(eig[rng.uniform(0, static_cast<long>(eig.size()) - 1)], k);
      left -= k;
    }
    const Matrix a = spreal::jordan_matrix(js);
    EXPECT_EQ(spreal::jordan_structure(a), js);
    const Matrix s = rng.invertible(a.rows());
    const Matrix conj = s * a * spreal::inverse(s);
    EXPECT_EQ(spreal::jordan_structure(conj), js);
    EXPECT_EQ(oracle::jordan(oracle::from(conj), eig), oracle::flatten(js));
  }
}

TEST(JordanStructure, SymplecticConjugatesOfCanonicalForms) {
  gen::Rng rng(32);
  const auto specs = gen::canonical_specs(3);
  for (int t = 0; t < 60; ++t) {
    const auto& spec = specs[rng.uniform(0, static_cast<long>(specs.size()) - 1)];
    const Matrix c = spreal::build(spec);
    const Matrix s = spreal::random_symplectic(c.rows() / 2, rng.seed());
    const Matrix x = s * c * spreal::symplectic_inverse(s);
    const JordanStructure js = spreal::jordan_structure(x);
    EXPECT_EQ(js, spreal::jordan_structure(c));
    EXPECT_TRUE(spreal::is_valid_hamiltonian_structure(js));
    EXPECT_EQ(js.negated(), js);
  }
}
