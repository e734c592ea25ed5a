#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hypdisc/errors.hpp"
#include "hypdisc/rotation_number.hpp"

using namespace hypdisc;

TEST(RotationNumber, Reduction) {
  const RotationNumber a(BigInt(7), BigInt(3));
  EXPECT_EQ(a.to_string(), "1/3");
  EXPECT_EQ(RotationNumber(BigInt(-1), BigInt(4)).to_string(), "3/4");
  EXPECT_EQ(RotationNumber(BigInt(6), BigInt(4)).to_string(), "1/2");
  EXPECT_TRUE(RotationNumber(BigInt(5), BigInt(5)).is_zero());
  EXPECT_THROW(RotationNumber(BigInt(1), BigInt(0)), DomainError);
}

TEST(RotationNumber, FromDoubleIsExact) {
  const auto a = RotationNumber::from_double(0.375);
  EXPECT_EQ(a.to_string(), "3/8");
  const auto b = RotationNumber::from_double(0.1);
  EXPECT_EQ(b.denominator(), BigInt(1) << 55);
  EXPECT_EQ(b.value(), 0.1);
  EXPECT_EQ(RotationNumber::from_double(-0.25).to_string(), "3/4");
}

TEST(RotationNumber, Parse) {
  EXPECT_EQ(RotationNumber::parse("2/5").to_string(), "2/5");
  EXPECT_EQ(RotationNumber::parse("0.5").to_string(), "1/2");
  // Correctly rounded: 0.6180339887498948482... and 0.4142135623730950488...
  EXPECT_EQ(RotationNumber::parse("golden").value(), 0.6180339887498948482);
  EXPECT_EQ(RotationNumber::parse("silver").value(), 0.4142135623730950488);
  EXPECT_THROW(RotationNumber::parse("abc"), DomainError);
  EXPECT_THROW(RotationNumber::parse("1/0"), DomainError);
  EXPECT_THROW(RotationNumber::parse("liouville:9"), DomainError);
  EXPECT_THROW(RotationNumber::parse("0.5x"), DomainError);
}

TEST(RotationNumber, Liouville) {
  const auto l3 = RotationNumber::liouville(3);
  // 0.1 + 0.01 + 0.000001
  EXPECT_EQ(l3.to_string(), "110001/1000000");
  const auto l4 = RotationNumber::liouville(4);
  EXPECT_EQ(l4.denominator(), boost::multiprecision::pow(BigInt(10), 24));
}

TEST(RotationNumber, DistanceToIntegerMatchesOrbit) {
  for (const auto& alpha : {RotationNumber::parse("golden"), RotationNumber::liouville(4),
                            RotationNumber::from_double(0.7123), RotationNumber::parse("3/7")}) {
    auto orbit = alpha.orbit();
    for (std::uint64_t i = 1; i <= 2000; ++i) {
      ASSERT_EQ(orbit.next(), alpha.distance_to_integer(i)) << alpha.to_string() << " i=" << i;
    }
  }
}

TEST(RotationNumber, HugeIndicesStayAccurate) {
  // ||q_k alpha|| for golden alpha is about 1 / (sqrt5 q_k).
  const auto golden = RotationNumber::parse("golden");
  const auto cf = continued_fraction(golden, 80);
  const auto qk = cf.q[60].convert_to<std::uint64_t>();
  const double d = golden.distance_to_integer(qk);
  EXPECT_NEAR(d * std::sqrt(5.0) * static_cast<double>(qk), 1.0, 1e-6);
}

TEST(ContinuedFraction, Golden) {
  const auto cf = continued_fraction(RotationNumber::parse("golden"), 40);
  ASSERT_EQ(cf.quotients.size(), 41u);
  EXPECT_EQ(cf.quotients[0], 0);
  for (std::size_t k = 1; k < cf.quotients.size(); ++k) EXPECT_EQ(cf.quotients[k], 1);
  // Fibonacci denominators.
  for (std::size_t k = 2; k < cf.q.size(); ++k) EXPECT_EQ(cf.q[k], cf.q[k - 1] + cf.q[k - 2]);
  EXPECT_TRUE(cf.is_convergent_denominator(BigInt(1597)));
  EXPECT_FALSE(cf.is_convergent_denominator(BigInt(1596)));
}

TEST(ContinuedFraction, SilverFromDouble) {
  const auto cf = continued_fraction(std::sqrt(2.0) - 1.0, 15);
  EXPECT_EQ(cf.source, ContinuedFraction::Source::RealInput);
  for (std::size_t k = 1; k < cf.quotients.size(); ++k) EXPECT_EQ(cf.quotients[k], 2);
}

TEST(ContinuedFraction, PrecisionHorizon) {
  EXPECT_THROW(continued_fraction(std::sqrt(2.0) - 1.0, 200), PrecisionHorizon);
  EXPECT_THROW(continued_fraction(0.0, 3), DomainError);
  EXPECT_THROW(continued_fraction(1.0, 3), DomainError);
  // A short exact dyadic expands completely.
  const auto cf = continued_fraction(0.375, 10);
  EXPECT_TRUE(cf.complete);
  EXPECT_EQ(cf.q.back(), 8);
}

TEST(ContinuedFraction, Invariants) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = u(rng);
    const auto alpha = RotationNumber::from_double(x);
    const auto cf = continued_fraction(alpha, 60);
    for (std::size_t k = 1; k < cf.q.size(); ++k) {
      if (k >= 2) EXPECT_GT(cf.q[k], cf.q[k - 1]);
      const BigInt det = cf.p[k] * cf.q[k - 1] - cf.p[k - 1] * cf.q[k];
      EXPECT_TRUE(det == 1 || det == -1);
    }
    // |alpha - p_k/q_k| < 1/(q_k q_{k+1}), checked exactly. A terminating
    // expansion reaches equality at its penultimate convergent.
    for (std::size_t k = 0; k + 1 < cf.q.size(); ++k) {
      BigInt lhs = alpha.numerator() * cf.q[k] - cf.p[k] * alpha.denominator();
      if (lhs < 0) lhs = -lhs;
      if (cf.complete && k + 2 == cf.q.size()) {
        EXPECT_EQ(lhs * cf.q[k + 1], alpha.denominator());
      } else {
        EXPECT_LT(lhs * cf.q[k + 1], alpha.denominator());
      }
    }
    const auto real_cf = continued_fraction(x, 5);
    for (std::size_t k = 0; k < real_cf.quotients.size(); ++k) {
      EXPECT_EQ(real_cf.quotients[k], cf.quotients[k]);
    }
  }
}

TEST(DetectRational, Tolerance) {
  const auto third = detect_rational(1.0 / 3.0, 1'000'000, 1e-12);
  ASSERT_TRUE(third);
  EXPECT_EQ(third->to_string(), "1/3");
  const auto seventh = detect_rational(3.0 / 7.0 + 1e-15, 1'000'000, 1e-12);
  ASSERT_TRUE(seventh);
  EXPECT_EQ(seventh->to_string(), "3/7");
  EXPECT_FALSE(detect_rational((std::sqrt(5.0) - 1.0) / 2.0, 1'000'000, 1e-12));
  // A generic angle is not declared rational just because some p/q with
  // q <= 1e6 lies within 1e-12 of it.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int rational = 0;
  for (int k = 0; k < 1000; ++k) rational += detect_rational(u(rng), 1'000'000, 1e-12).has_value();
  EXPECT_EQ(rational, 0);
}
