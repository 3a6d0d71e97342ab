#include <gtest/gtest.h>

#include "spreal/random.hpp"
#include "spreal/skew_hamiltonian.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using spreal::JordanStructure;
using spreal::Matrix;
using spreal::ReverserCertificate;
using spreal::Scalar;
using spreal::SkewBlock;
using spreal::SkewCanonicalSpec;

namespace {

const spreal::CertificateChecks kAllTrue{true, true, true, true};

Matrix conjugate(const Matrix& x, std::uint64_t seed) {
  const Matrix s = spreal::random_symplectic(x.rows() / 2, seed);
  return s * x * spreal::symplectic_inverse(s);
}

Matrix p0() {
  const Matrix j = spreal::jordan_block(0, 2);
  return spreal::direct_sum(j, spreal::transpose(j));
}

}  // namespace

TEST(SkewCanonical, BuildAndSpec) {
  EXPECT_EQ(spreal::build(SkewCanonicalSpec{{SkewBlock{1, 1}}}), Matrix::identity(2));
  EXPECT_EQ(spreal::build(SkewCanonicalSpec{{SkewBlock{0, 2}}}), p0());
  EXPECT_TRUE(spreal::is_skew_hamiltonian(p0()));
  EXPECT_EQ(spreal::skew_spec_from_jordan({{{1, 1}, 2}, {{0, 2}, 4}}),
            (SkewCanonicalSpec{{SkewBlock{0, 2}, SkewBlock{0, 2}, SkewBlock{1, 1}}}));
  try {
    (void)spreal::skew_spec_from_jordan({{{1, 1}, 1}});
    FAIL();
  } catch (const spreal::Error& e) {
    EXPECT_EQ(e.code(), spreal::ErrorCode::NotSkewHamiltonian);
  }
}

TEST(SkewCanonical, Examples) {
  auto t = spreal::skew_canonical_transform(Matrix::diagonal({1, 1}));
  EXPECT_EQ(t.spec, (SkewCanonicalSpec{{SkewBlock{1, 1}}}));
  EXPECT_EQ(t.s, Matrix::identity(2));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix x = conjugate(p0(), seed);
    t = spreal::skew_canonical_transform(x);
    EXPECT_EQ(t.spec, (SkewCanonicalSpec{{SkewBlock{0, 2}}}));
    EXPECT_TRUE(spreal::is_symplectic(t.s));
    EXPECT_EQ(x * t.s, t.s * p0());
  }
}

TEST(SkewCanonical, RejectsNonSkewHamiltonian) {
  try {
    (void)spreal::skew_canonical_transform(Matrix{{0, 1}, {0, 0}} + Matrix::diagonal({1, 2}));
    FAIL();
  } catch (const spreal::Error& e) {
    EXPECT_EQ(e.code(), spreal::ErrorCode::NotSkewHamiltonian);
  }
}

TEST(SkewCanonical, RoundTripOnCorpus) {
  gen::Rng rng(61);
  for (const auto& js : gen::skew_hamiltonian_structures(6)) {
    const SkewCanonicalSpec spec = gen::skew_spec(js);
    const Matrix c = spreal::build(spec);
    EXPECT_TRUE(spreal::is_skew_hamiltonian(c));
    EXPECT_EQ(spreal::jordan_structure(c), js);
    EXPECT_EQ(spreal::skew_spec_from_jordan(js), spec);
    const Matrix x = conjugate(c, rng.seed());
    const auto t = spreal::skew_canonical_transform(x);
    EXPECT_EQ(t.spec, spec);
    EXPECT_TRUE(oracle::is_symplectic(oracle::from(t.s)));
    EXPECT_EQ(oracle::mul(oracle::from(x), oracle::from(t.s)), oracle::mul(oracle::from(t.s), oracle::from(c)));
  }
}

TEST(SimilarToNegative, Examples) {
  EXPECT_TRUE(spreal::is_similar_to_negative(p0()));
  EXPECT_FALSE(spreal::is_similar_to_negative(Matrix::diagonal({1, 1})));
  EXPECT_TRUE(spreal::is_similar_to_negative(Matrix::diagonal({1, -1, 1, -1})));
}

TEST(NegationInvolution, WorkedExamples) {
  auto result = spreal::negation_involution(p0());
  ASSERT_TRUE(std::holds_alternative<ReverserCertificate>(result));
  EXPECT_EQ(std::get<ReverserCertificate>(result).reverser, Matrix::diagonal({1, -1, 1, -1}));
  EXPECT_EQ(std::get<ReverserCertificate>(result).checks, kAllTrue);

  result = spreal::negation_involution(Matrix::diagonal({1, -1, 1, -1}));
  ASSERT_TRUE(std::holds_alternative<ReverserCertificate>(result));
  const Matrix h{{0, 1}, {1, 0}};
  EXPECT_EQ(std::get<ReverserCertificate>(result).reverser, spreal::direct_sum(h, h));
  EXPECT_EQ(std::get<ReverserCertificate>(result).checks, kAllTrue);

  result = spreal::negation_involution(Matrix::diagonal({1, 1}));
  ASSERT_TRUE(std::holds_alternative<JordanStructure>(result));
  EXPECT_EQ(std::get<JordanStructure>(result), (JordanStructure{{{1, 1}, 2}}));
}

TEST(NegationInvolution, AgreesWithMultisetOracle) {
  gen::Rng rng(62);
  for (const auto& js : gen::skew_hamiltonian_structures(6)) {
    const Matrix x = conjugate(spreal::build(gen::skew_spec(js)), rng.seed());
    const bool expected = oracle::negation_symmetric(js);
    EXPECT_EQ(spreal::is_similar_to_negative(x), expected);
    const auto result = spreal::negation_involution(x);
    if (expected) {
      ASSERT_TRUE(std::holds_alternative<ReverserCertificate>(result));
      const auto& cert = std::get<ReverserCertificate>(result);
      EXPECT_EQ(cert.checks, kAllTrue);
      const auto g = oracle::from(cert.reverser), ox = oracle::from(x);
      EXPECT_EQ(oracle::mul(g, g), oracle::identity(g.size()));
      EXPECT_EQ(oracle::mul(g, ox), oracle::neg(oracle::mul(ox, g)));
    } else {
      ASSERT_TRUE(std::holds_alternative<JordanStructure>(result));
      EXPECT_NE(spreal::jordan_structure(x), spreal::jordan_structure(-x));
    }
  }
}

TEST(NegationInvolution, CombinesUnderExpandingSum) {
  gen::Rng rng(63);
  std::vector<std::pair<Matrix, Matrix>> pieces;
  for (const auto& js : gen::skew_hamiltonian_structures(4)) {
    if (!oracle::negation_symmetric(js)) continue;
    const Matrix x = conjugate(spreal::build(gen::skew_spec(js)), rng.seed());
    pieces.emplace_back(x, std::get<ReverserCertificate>(spreal::negation_involution(x)).reverser);
  }
  ASSERT_FALSE(pieces.empty());
  for (int t = 0; t < 30; ++t) {
    const auto& [x1, g1] = pieces[rng.uniform(0, static_cast<long>(pieces.size()) - 1)];
    const auto& [x2, g2] = pieces[rng.uniform(0, static_cast<long>(pieces.size()) - 1)];
    EXPECT_EQ(spreal::verify_reverser(spreal::expanding_sum(x1, x2), spreal::expanding_sum(g1, g2),
                                      spreal::ReverserKind::Involution, spreal::SubjectClass::SkewHamiltonian),
              kAllTrue);
  }
}
