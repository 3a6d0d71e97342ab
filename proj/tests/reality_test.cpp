#include <gtest/gtest.h>

#include <algorithm>

#include "spreal/random.hpp"
#include "spreal/reality.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using spreal::CanonicalPolicy;
using spreal::JordanStructure;
using spreal::Matrix;
using spreal::ReverserCertificate;
using spreal::ReverserKind;
using spreal::Scalar;
using spreal::StrongRealityReport;

namespace {

const spreal::CertificateChecks kAllTrue{true, true, true, true};

/// Reversal, order and membership recomputed with the reference arithmetic.
void expect_oracle_valid(const ReverserCertificate& cert) {
  const auto x = oracle::from(cert.subject), g = oracle::from(cert.reverser);
  EXPECT_TRUE(oracle::is_symplectic(g));
  const auto id = oracle::identity(g.size());
  EXPECT_EQ(oracle::mul(g, g), cert.kind == ReverserKind::Involution ? id : oracle::neg(id));
  EXPECT_EQ(oracle::mul(g, x), oracle::neg(oracle::mul(x, g)));
  EXPECT_TRUE(cert.subject_class == spreal::SubjectClass::Hamiltonian ? oracle::is_hamiltonian(x)
                                                                      : oracle::is_skew_hamiltonian(x));
}

Matrix conjugate(const Matrix& x, std::uint64_t seed) {
  const Matrix s = spreal::random_symplectic(x.rows() / 2, seed);
  return s * x * spreal::symplectic_inverse(s);
}

}  // namespace

TEST(SigmaTau, Examples) {
  EXPECT_EQ(spreal::sigma(3), Matrix::diagonal({1, -1, 1}));
  EXPECT_EQ(spreal::tau(2), (Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(spreal::sigma(1), Matrix{{1}});
  EXPECT_EQ(spreal::tau(1), Matrix{{1}});
}

TEST(SigmaTau, IntertwineJordanBlocks) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Matrix j = spreal::jordan_block(0, n);
    EXPECT_EQ(spreal::sigma(n) * j * spreal::sigma(n), -j);
    EXPECT_EQ(spreal::tau(n) * j * spreal::tau(n), spreal::transpose(j));
  }
}

TEST(SkewReverser, EvenNilBlocks) {
  const Scalar i = Scalar::i();
  EXPECT_EQ(spreal::skew_reverser_even_nil(1), Matrix::diagonal({i, -i}));
  EXPECT_EQ(spreal::skew_reverser_even_nil(2), Matrix::diagonal({i, -i, -i, i}));
  for (std::size_t l = 1; l <= 4; ++l)
    EXPECT_EQ(spreal::verify_reverser(spreal::build_lambda(l), spreal::skew_reverser_even_nil(l),
                                      ReverserKind::SkewInvolution),
              kAllTrue);
}

TEST(SkewReverser, PairBlocks) {
  EXPECT_EQ(spreal::skew_reverser_pair(5, 1), (Matrix{{0, 1}, {-1, 0}}));
  EXPECT_EQ(spreal::verify_reverser(Matrix::diagonal({5, -5}), spreal::skew_reverser_pair(5, 1),
                                    ReverserKind::SkewInvolution),
            kAllTrue);
  EXPECT_EQ(spreal::verify_reverser(spreal::build({{spreal::PairBlock{0, 3}}}), spreal::skew_reverser_pair(0, 3),
                                    ReverserKind::SkewInvolution),
            kAllTrue);
}

TEST(SkewReverser, Examples) {
  const auto cert = spreal::skew_reverser(Matrix{{0, 1}, {0, 0}});
  EXPECT_EQ(cert.reverser, Matrix::diagonal({Scalar::i(), -Scalar::i()}));
  EXPECT_EQ(cert.checks, kAllTrue);
  EXPECT_EQ(spreal::skew_reverser(Matrix::zero(4)).checks, kAllTrue);
  const Matrix x = spreal::expanding_sum(spreal::build_lambda(1), Matrix::diagonal({1, -1}));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = spreal::skew_reverser(conjugate(x, seed));
    EXPECT_EQ(c.checks, kAllTrue);
    expect_oracle_valid(c);
  }
}

TEST(InvolutionReverser, PairBlocks) {
  const Matrix s3 = spreal::sigma(3);
  EXPECT_EQ(spreal::involution_reverser_pair_block(0, 3), spreal::direct_sum(s3, s3));
  EXPECT_EQ(spreal::verify_reverser(spreal::build({{spreal::PairBlock{0, 3}}}),
                                    spreal::involution_reverser_pair_block(0, 3), ReverserKind::Involution),
            kAllTrue);
  const Matrix h{{0, 1}, {-1, 0}};
  Matrix g(4, 4);
  g.set_block(0, 2, h);
  g.set_block(2, 0, -h);
  EXPECT_EQ(spreal::involution_reverser_pair_block(1, 1), g);
  EXPECT_EQ(g * g, Matrix::identity(4));
  EXPECT_EQ(spreal::verify_reverser(Matrix::diagonal({1, 1, -1, -1}), g, ReverserKind::Involution), kAllTrue);
  EXPECT_EQ(spreal::involution_reverser_pair_block(0, 1), Matrix::identity(2));
  EXPECT_EQ(spreal::verify_reverser(Matrix::zero(2), Matrix::identity(2), ReverserKind::Involution), kAllTrue);
}

TEST(InvolutionReverser, DoubledBlocksForEveryLambda) {
  for (const auto& lambda : {Scalar(1), Scalar(-3), Scalar::i(), Scalar(spreal::Rational(1, 2), 2)})
    for (std::size_t k = 1; k <= 3; ++k) {
      const Matrix b = spreal::build({{spreal::PairBlock{lambda, k}}});
      EXPECT_EQ(spreal::verify_reverser(spreal::expanding_sum(b, b), spreal::involution_reverser_pair_block(lambda, k),
                                        ReverserKind::Involution),
                kAllTrue);
    }
}

TEST(ClassifyStrong, Examples) {
  auto r = spreal::classify_strong({{{0, 2}, 1}});
  EXPECT_FALSE(r.verdict);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].first, (spreal::JordanBlock{0, 2}));
  EXPECT_EQ(r.violations[0].second, 1u);

  r = spreal::classify_strong({{{1, 1}, 1}, {{-1, 1}, 1}});
  EXPECT_FALSE(r.verdict);
  ASSERT_EQ(r.violations.size(), 2u);
  EXPECT_EQ(r.violations[0].first, (spreal::JordanBlock{-1, 1}));
  EXPECT_EQ(r.violations[1].first, (spreal::JordanBlock{1, 1}));

  EXPECT_TRUE(spreal::classify_strong({{{0, 3}, 2}}).verdict);
  EXPECT_TRUE(spreal::classify_strong({{{1, 1}, 2}, {{-1, 1}, 2}}).verdict);
}

TEST(ClassifyStrong, LambdaParity) {
  gen::Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    const Scalar lambda = rng.nonzero_scalar();
    const std::size_t k = rng.uniform(1, 3), m = rng.uniform(1, 4);
    const JordanStructure js{{{lambda, k}, m}, {{-lambda, k}, m}};
    EXPECT_EQ(spreal::classify_strong(js).verdict, m % 2 == 0);
  }
}

TEST(ClassifyStrong, MatchesOracleOnAllSmallStructures) {
  for (std::size_t order : {2, 4, 6, 8})
    for (const auto& js : gen::hamiltonian_structures(order)) {
      const auto report = spreal::classify_strong(js);
      const auto expected = oracle::strong_violations(js);
      EXPECT_EQ(report.verdict, expected.empty());
      std::vector<std::tuple<std::string, std::string, std::size_t, std::size_t>> got;
      for (const auto& [b, m] : report.violations) got.emplace_back(b.lambda.re().str(), b.lambda.im().str(), b.size, m);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expected);
    }
}

TEST(StrongReverser, Examples) {
  auto result = spreal::strong_reverser(Matrix{{0, 1}, {0, 0}});
  ASSERT_TRUE(std::holds_alternative<StrongRealityReport>(result));
  const auto& report = std::get<StrongRealityReport>(result);
  EXPECT_FALSE(report.verdict);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].first, (spreal::JordanBlock{0, 2}));

  result = spreal::strong_reverser(Matrix::diagonal({1, 1, -1, -1}));
  ASSERT_TRUE(std::holds_alternative<ReverserCertificate>(result));
  const auto& cert = std::get<ReverserCertificate>(result);
  EXPECT_EQ(cert.reverser, spreal::involution_reverser_pair_block(1, 1));
  EXPECT_EQ(cert.checks, kAllTrue);
}

TEST(StrongReverser, DoubledJordanPairRegression) {
  const Matrix j = spreal::jordan_block(1, 2);
  const Matrix p = spreal::direct_sum(j, j);
  const Matrix x = spreal::direct_sum(p, -spreal::transpose(p));
  const auto result = spreal::strong_reverser(x);
  ASSERT_TRUE(std::holds_alternative<ReverserCertificate>(result));
  const auto& cert = std::get<ReverserCertificate>(result);
  EXPECT_EQ(cert.checks, kAllTrue);
  EXPECT_EQ(cert.kind, ReverserKind::Involution);
  expect_oracle_valid(cert);
}

TEST(StrongReverser, ConstructiveOnConjugates) {
  gen::Rng rng(52);
  int positives = 0;
  for (std::size_t order : {2, 4, 6})
    for (const auto& js : gen::hamiltonian_structures(order)) {
      if (!spreal::classify_strong(js).verdict) continue;
      ++positives;
      for (auto policy : {CanonicalPolicy::Prop24, CanonicalPolicy::ReverserFriendly}) {
        const Matrix x = conjugate(spreal::build(spreal::spec_from_jordan(js, policy)), rng.seed());
        const auto result = spreal::strong_reverser(x);
        ASSERT_TRUE(std::holds_alternative<ReverserCertificate>(result));
        EXPECT_EQ(std::get<ReverserCertificate>(result).checks, kAllTrue);
      }
    }
  EXPECT_GT(positives, 10);
}

TEST(StrongReverser, RejectsNonHamiltonian) {
  try {
    (void)spreal::strong_reverser(Matrix::identity(2));
    FAIL();
  } catch (const spreal::Error& e) {
    EXPECT_EQ(e.code(), spreal::ErrorCode::NotHamiltonian);
  }
}

TEST(VerifyReverser, Examples) {
  const Matrix l2{{0, 1}, {0, 0}};
  EXPECT_EQ(spreal::verify_reverser(l2, Matrix::diagonal({Scalar::i(), -Scalar::i()}), ReverserKind::SkewInvolution),
            kAllTrue);
  EXPECT_FALSE(spreal::verify_reverser(l2, Matrix::identity(2), ReverserKind::Involution).reversal);
  const auto c = spreal::verify_reverser(Matrix::diagonal({1, -1}), Matrix{{0, 1}, {1, 0}}, ReverserKind::Involution);
  EXPECT_FALSE(c.symplectic);
  EXPECT_TRUE(c.reversal);
  try {
    (void)spreal::verify_reverser(l2, Matrix::identity(4), ReverserKind::Involution);
    FAIL();
  } catch (const spreal::Error& e) {
    EXPECT_EQ(e.code(), spreal::ErrorCode::DimensionMismatch);
  }
}

TEST(VerifyReverser, TamperedReverserFails) {
  gen::Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const auto specs = gen::canonical_specs(2);
    const Matrix x = conjugate(spreal::build(specs[rng.uniform(0, static_cast<long>(specs.size()) - 1)]), rng.seed());
    auto cert = spreal::skew_reverser(x);
    const std::size_t r = rng.uniform(0, static_cast<long>(x.rows()) - 1), c = rng.uniform(0, static_cast<long>(x.rows()) - 1);
    cert.reverser(r, c) += Scalar(spreal::Rational(1, 7));
    EXPECT_FALSE(spreal::verify_reverser(cert.subject, cert.reverser, cert.kind).all());
  }
}

TEST(ExpandingSumOfReversers, InvolutionsCombine) {
  gen::Rng rng(54);
  std::vector<std::pair<Matrix, Matrix>> pieces;
  for (std::size_t order : {2, 4})
    for (const auto& js : gen::hamiltonian_structures(order)) {
      if (!spreal::classify_strong(js).verdict) continue;
      const Matrix x = conjugate(spreal::build(spreal::spec_from_jordan(js, CanonicalPolicy::ReverserFriendly)), rng.seed());
      pieces.emplace_back(x, std::get<ReverserCertificate>(spreal::strong_reverser(x)).reverser);
    }
  ASSERT_FALSE(pieces.empty());
  for (int t = 0; t < 40; ++t) {
    const auto& [x1, g1] = pieces[rng.uniform(0, static_cast<long>(pieces.size()) - 1)];
    const auto& [x2, g2] = pieces[rng.uniform(0, static_cast<long>(pieces.size()) - 1)];
    EXPECT_EQ(spreal::verify_reverser(spreal::expanding_sum(x1, x2), spreal::expanding_sum(g1, g2),
                                      ReverserKind::Involution),
              kAllTrue);
  }
}

TEST(ReverserCoset, QuotientCommutesWithSubject) {
  gen::Rng rng(55);
  const auto specs = gen::canonical_specs(3);
  for (int t = 0; t < 30; ++t) {
    const Matrix x = conjugate(spreal::build(specs[rng.uniform(0, static_cast<long>(specs.size()) - 1)]), rng.seed());
    const Matrix g1 = spreal::skew_reverser(x).reverser;
    const auto strong = spreal::strong_reverser(x);
    // g₁⁻¹ = −g₁ reverses X as well.
    const Matrix g2 = std::holds_alternative<ReverserCertificate>(strong)
                          ? std::get<ReverserCertificate>(strong).reverser
                          : spreal::symplectic_inverse(g1);
    const Matrix c = g1 * spreal::inverse(g2);
    EXPECT_EQ(c * x, x * c);
  }
}
