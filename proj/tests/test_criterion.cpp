#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hypdisc/criterion.hpp"
#include "hypdisc/dim4.hpp"
#include "hypdisc/errors.hpp"
#include "test_support.hpp"

using namespace hypdisc;
using hypdisc::testing::vec;

namespace {

ScrewTranslation unit_translation(std::size_t m) {
  Vec a = Vec::Zero(static_cast<Eigen::Index>(m));
  a(0) = 1.0;
  return ScrewTranslation::normalize(Mat::Identity(a.size(), a.size()), a);
}

MoebiusWord negative_reciprocal() { return MoebiusWord(1, {UnitInversion{}, Orthogonal{-Mat::Identity(1, 1)}}); }

}  // namespace

TEST(Certify, ModularPairIsNeverFlagged) {
  const auto g = unit_translation(1);
  const auto h = negative_reciprocal();
  for (int k = 1; k <= 100; ++k) {
    const double eps = std::asinh(1.0) * k / 100.0;
    const auto cert = certify(g, h, MargulisParams::from_epsilon(eps));
    EXPECT_EQ(cert.verdict, Verdict::Inconclusive);
    EXPECT_NEAR(cert.radius, 1.0, 1e-14);
    EXPECT_NEAR(cert.threshold, c_epsilon(eps), 1e-12);
    EXPECT_FALSE(cert.witness);
  }
}

TEST(Certify, PureTranslationWithLargeSphere) {
  const auto g = unit_translation(2);
  const auto params = MargulisParams::from_epsilon(0.3);
  const auto h = MoebiusWord::sphere_inversion(vec({0.3, 0.7}), 2.0 * params.c);
  const auto hh = compose(MoebiusWord::orthogonal(Mat::Identity(2, 2) * -1.0), h);
  for (const auto& word : {h, hh}) {
    const auto cert = certify(g, word, params);
    EXPECT_EQ(cert.verdict, Verdict::NonDiscrete);
    ASSERT_TRUE(cert.witness);
    EXPECT_TRUE(verify_witness(g, word, params, *cert.witness));
    EXPECT_NEAR(cert.threshold, params.c, 1e-12);
  }
  const auto small = MoebiusWord::sphere_inversion(vec({0.3, 0.7}), 0.5 * params.c);
  EXPECT_EQ(certify(g, small, params).verdict, Verdict::Inconclusive);
}

TEST(Certify, Rejections) {
  const auto g = unit_translation(2);
  const auto params = MargulisParams::from_epsilon(0.3);
  EXPECT_THROW(certify(g, MoebiusWord::translation(vec({0.0, 1.0})), params), FixesInfinity);
  EXPECT_THROW(certify(g, MoebiusWord::unit_inversion(3), params), DimensionMismatch);
}

TEST(Certify, CounterexampleFamily) {
  const auto params = MargulisParams::from_epsilon(0.1);
  const auto alpha = RotationNumber::parse("golden");

  const auto at6 = counterexample(alpha, 1e6);
  const auto cert6 = certify(at6.g.screw(), at6.h, params);
  EXPECT_NEAR(cert6.radius, 1e4, 1e-8);
  EXPECT_NEAR(cert6.b_center, 23751.95939652614764346924, 1e-12 * 23752.0);
  EXPECT_NEAR(cert6.b_cocenter, 23751.95939652614764346924, 1e-12 * 23752.0);
  EXPECT_EQ(cert6.center_eval.attained_index, 1597u);
  EXPECT_EQ(cert6.verdict, Verdict::Inconclusive);

  const auto rep6 = waterman_report(at6.g.screw(), at6.h, params);
  EXPECT_NEAR(rep6.waterman_threshold, 3728129.695253446948, 1e-9 * 3728129.7);
  EXPECT_EQ(rep6.waterman_verdict, Verdict::Inconclusive);

  // Far enough out the boundary function falls below R_h = r^{2/3}.
  const auto at9 = counterexample(alpha, 1e9);
  const auto cert9 = certify(at9.g.screw(), at9.h, params);
  EXPECT_EQ(cert9.verdict, Verdict::NonDiscrete);
  ASSERT_TRUE(cert9.witness);
  EXPECT_TRUE(verify_witness(at9.g.screw(), at9.h, params, *cert9.witness));
  const auto rep9 = waterman_report(at9.g.screw(), at9.h, params);
  EXPECT_EQ(rep9.our_verdict, Verdict::NonDiscrete);
  EXPECT_EQ(rep9.waterman_verdict, Verdict::Inconclusive);
}

TEST(Certify, WitnessFollowsVerticalLaw) {
  const auto params = MargulisParams::from_epsilon(0.1);
  const auto ex = counterexample(RotationNumber::parse("silver"), 1e10);
  const auto cert = certify(ex.g.screw(), ex.h, params);
  ASSERT_EQ(cert.verdict, Verdict::NonDiscrete);
  const HPoint x = *cert.witness;
  const HPoint y = apply_upper(ex.h, x);
  EXPECT_NEAR(y.t() / (cert.radius * cert.radius / x.t()), 1.0, 1e-8);
  EXPECT_GT(x.t(), cert.b_center * (1 + kCertificateGuard));
  EXPECT_GT(y.t(), cert.b_cocenter * (1 + kCertificateGuard));
}

TEST(VerifyWitness, StraddlingPoints) {
  const auto params = MargulisParams::from_epsilon(0.1);
  const auto alpha = RotationNumber::parse("golden");
  for (double r : {1e6, 1e9}) {
    const auto ex = counterexample(alpha, r);
    const auto sphere = isometric_sphere(ex.h);
    const double b = boundary_function(ex.g.screw(), params, sphere.center).value;
    const double b2 = boundary_function(ex.g.screw(), params, sphere.cocenter).value;
    const bool violated = sphere.radius * sphere.radius > b * b2;
    // The geometric mean of the two admissible heights is the best choice.
    const double s = std::sqrt(b * sphere.radius * sphere.radius / b2);
    EXPECT_EQ(verify_witness(ex.g.screw(), ex.h, params, vertical_point(sphere.center, s)), violated);
    EXPECT_FALSE(verify_witness(ex.g.screw(), ex.h, params, vertical_point(sphere.center, b * 1e-3)));
  }
}

TEST(Certify, InexactBoundary) {
  const auto params = MargulisParams::from_epsilon(0.1);
  const auto ex = counterexample(RotationNumber::parse("golden"), 1e6);
  EXPECT_THROW(certify(ex.g.screw(), ex.h, params, 50), InexactBoundary);
  // An upper bound that already certifies is kept.
  const auto g = unit_translation(3);
  const auto h = MoebiusWord::sphere_inversion(vec({0.0, 1.0, 0.0}), 100.0);
  EXPECT_EQ(certify(g, h, params, 1).verdict, Verdict::NonDiscrete);
}

TEST(Waterman, PureTranslationClosedForms) {
  const auto g = unit_translation(2);
  for (double eps : {0.1, 0.5, 0.8}) {
    const auto params = MargulisParams::from_epsilon(eps);
    const auto rep = waterman_report(g, MoebiusWord::sphere_inversion(vec({1.0, 2.0}), 0.9), params);
    EXPECT_NEAR(rep.waterman_threshold, 2.0, 1e-12);
    EXPECT_NEAR(rep.our_threshold, params.c, 1e-12);
    EXPECT_NEAR(rep.iterated_threshold / rep.our_threshold, 2.0 / params.c, 1e-12);
  }
}

TEST(Waterman, ScaledDominance) {
  std::mt19937_64 rng(200);
  std::uniform_real_distribution<double> eps(0.05, 1.0);
  for (int k = 0; k < 40; ++k) {
    const auto g = hypdisc::testing::random_irrational_screw(rng, 3 + k % 3);
    const auto h = hypdisc::testing::random_word_moving_infinity(rng, static_cast<Eigen::Index>(g.boundary_dimension()), 5);
    const auto params = MargulisParams::from_epsilon(eps(rng));
    const auto rep = waterman_report(g, h, params);
    EXPECT_LE(rep.our_threshold, 0.5 * params.c * rep.iterated_threshold * (1 + 1e-12));
  }
}

TEST(Conjugation, VerdictUnchanged) {
  std::mt19937_64 rng(201);
  const auto params = MargulisParams::from_epsilon(0.1);
  const auto alpha = RotationNumber::parse("golden");
  for (double r : {1e6, 1e9}) {
    const auto ex = counterexample(alpha, r);
    const Vec shift = hypdisc::testing::random_vec(rng, 3, -50.0, 50.0);
    const auto g2 = ex.g.screw().conjugated_by_translation(shift);
    const auto h2 = compose(MoebiusWord::translation(shift), compose(ex.h, MoebiusWord::translation(-shift)));
    const auto c1 = certify(ex.g.screw(), ex.h, params);
    const auto c2 = certify(g2, h2, params);
    EXPECT_EQ(c1.verdict, c2.verdict);
    EXPECT_NEAR(c2.radius / c1.radius, 1.0, 1e-8);
    EXPECT_NEAR(c2.threshold / c1.threshold, 1.0, 1e-8);
  }
}

TEST(AsymptoticSlack, CounterexampleFamily) {
  const auto params = MargulisParams::from_epsilon(0.1);
  const CylScrew g(RotationNumber::parse("golden"));
  const auto rows = asymptotic_slack(g.screw(), counterexample_map, params, {1e2, 1e4, 1e6, 1e8});
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LT(rows[k].our_ratio, rows[k - 1].our_ratio);
    EXPECT_LT(rows[k].radius_ratio, rows[k - 1].radius_ratio);
  }
  EXPECT_LT(rows.back().our_ratio, 1e-2);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.r_center, row.parameter, 1e-6 * row.parameter);
    EXPECT_GT(row.waterman_ratio, 1.0);
    EXPECT_LT(row.waterman_ratio, 4.0);
  }
}
