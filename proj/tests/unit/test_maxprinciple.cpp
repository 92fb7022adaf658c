#include <cmath>

#include <gtest/gtest.h>

#include "hartree/errors.hpp"
#include "hartree/maxprinciple.hpp"

namespace {

using namespace hartree;

// Smallest positive root of q by scanning for a sign change, then bisecting.
template <class Q>
double bisect_first_root(Q&& q, double r_hi) {
  double a = 0.0;
  double step = 1e-3;
  while (a < r_hi && q(a) * q(a + step) > 0.0) a += step;
  double b = a + step;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (q(a) * q(m) <= 0.0 ? b : a) = m;
  }
  return 0.5 * (a + b);
}

TEST(TestFunctionSpec, AboveQuarter) {
  const auto s = test_function_spec(9.0 / 16.0);
  EXPECT_EQ(s.regime, Regime::above_quarter);
  EXPECT_DOUBLE_EQ(s.beta, 0.75);
  EXPECT_DOUBLE_EQ(s.a, 1.0);
  EXPECT_NEAR(s.b, 3.0, 1e-14);
  EXPECT_NEAR(s.c, 12.0, 1e-13);
  EXPECT_TRUE(q_sign_analysis(s).always_positive);
}

TEST(TestFunctionSpec, BetweenSixteenthAndQuarter) {
  const auto s = test_function_spec(1.0 / 9.0);
  EXPECT_EQ(s.regime, Regime::between_sixteenth_and_quarter);
  EXPECT_NEAR(s.b, 18.0, 1e-12);
  EXPECT_NEAR(s.c, -108.0, 1e-11);
  const auto sign = q_sign_analysis(s);
  ASSERT_TRUE(sign.first_root.has_value());
  EXPECT_NEAR(*sign.first_root, bisect_first_root([&](double r) { return s.q(r); }, 100.0), 1e-10);
  EXPECT_NEAR(*sign.first_root, 4.7477271, 1e-7);
}

TEST(TestFunctionSpec, BelowSixteenth) {
  const auto s = test_function_spec(1.0 / 25.0);
  EXPECT_EQ(s.regime, Regime::below_sixteenth);
  EXPECT_DOUBLE_EQ(s.a, 0.0);
  EXPECT_DOUBLE_EQ(s.b, -1.0);
  const auto sign = q_sign_analysis(s);
  ASSERT_TRUE(sign.first_root.has_value());
  EXPECT_NEAR(*sign.first_root, 10.0 / 3.0, 1e-12);
}

TEST(TestFunctionSpec, ExactlyQuarter) {
  const auto s = test_function_spec(0.25 + 1e-13);
  EXPECT_EQ(s.regime, Regime::exactly_quarter);
  EXPECT_DOUBLE_EQ(s.beta, 0.5);
  EXPECT_DOUBLE_EQ(s.q(3.0), 1.0);
  EXPECT_DOUBLE_EQ(closed_form_rh(s, 2.0), 0.0);
}

TEST(TestFunctionSpec, Degenerate) {
  EXPECT_THROW(test_function_spec(0.0), ConfigError);
  EXPECT_THROW(test_function_spec(-0.1), ConfigError);
  EXPECT_THROW(test_function_spec(1.0 / 16.0), ConfigError);
  EXPECT_FALSE(test_function_spec(0.25 + 1e-8).warnings.empty());
  EXPECT_TRUE(test_function_spec(0.5).warnings.empty());
}

TEST(TestFunctionSpec, ClosedFormAgainstDirectDifferentiation) {
  // h = -phi'' - 2 phi'/r - phi/r + omega phi with phi = e^{-beta r} Q, by hand.
  for (double w : {0.03, 0.1, 0.2, 0.7}) {
    const auto s = test_function_spec(w);
    const double b = s.beta;
    for (double r : {0.5, 2.0, 7.0}) {
      const double q = s.q(r);
      const double dq = 2.0 * s.a * r + s.b;
      const double d2q = 2.0 * s.a;
      const double e = std::exp(-b * r);
      const double p1 = e * (dq - b * q);
      const double p2 = e * (d2q - 2.0 * b * dq + b * b * q);
      const double h = -p2 - 2.0 * p1 / r - e * q / r + w * e * q;
      EXPECT_NEAR(closed_form_rh(s, r), r * h / e, 1e-9 * (1.0 + r * r)) << w << " " << r;
    }
  }
}

TEST(ResidualH, NumericMatchesClosedForm) {
  for (double w : {0.04, 0.1, 0.25, 0.5625, 2.0}) {
    const auto tf = build_test_function(w);
    const auto res = residual_h(tf.spec, tf.phi);
    EXPECT_TRUE(res.closed_form.holds) << w << " " << res.closed_form.rel_residual;
    EXPECT_TRUE(res.h_nonnegative) << w;
  }
}

TEST(Sweep, Dichotomy) {
  const auto rows = maxprinciple_sweep(0.05, 0.6, 12);
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.consistent) << r.spec.omega;
    EXPECT_EQ(r.sign.always_positive, r.spec.omega >= 0.25) << r.spec.omega;
  }
  EXPECT_THROW(maxprinciple_sweep(0.0625, 0.0625, 1), ConfigError);
}

}  // namespace
