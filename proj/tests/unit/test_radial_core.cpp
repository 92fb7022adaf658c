#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hartree/errors.hpp"
#include "hartree/radial_field.hpp"
#include "hartree/radial_grid.hpp"

namespace {

using namespace hartree;
constexpr double kPi = std::numbers::pi;

TEST(RadialGrid, RejectsBadSizes) {
  EXPECT_THROW(build_grid(32, 10.0), ConfigError);
  EXPECT_THROW(build_grid(130, 10.0), ConfigError);  // not a multiple of 4
  EXPECT_THROW(build_grid(128, 0.0), ConfigError);
  EXPECT_THROW(build_grid(128, -1.0), ConfigError);
  EXPECT_NO_THROW(build_grid(130, 10.0, SpacingKind::log_uniform));
}

TEST(RadialGrid, DefaultGrid) {
  const auto g = default_grid();
  EXPECT_EQ(g.size(), 2048u);
  EXPECT_DOUBLE_EQ(g.r_max(), 60.0);
  EXPECT_TRUE(g.is_uniform());
  EXPECT_DOUBLE_EQ(g.nodes().back(), 60.0);
  EXPECT_NEAR(g.spacing(), 60.0 / 2048.0, 1e-15);
}

TEST(RadialGrid, SpacingNames) {
  EXPECT_EQ(spacing_kind_from_string("uniform"), SpacingKind::uniform);
  EXPECT_EQ(spacing_kind_from_string("log_uniform"), SpacingKind::log_uniform);
  EXPECT_EQ(to_string(SpacingKind::log_uniform), "log_uniform");
  EXPECT_THROW(spacing_kind_from_string("chebyshev"), ConfigError);
}

TEST(RadialGrid, WeightsIntegratePolynomialsExactly) {
  // Boole panels are exact through degree 5.
  const auto g = build_grid(64, 8.0);
  for (int p = 0; p <= 5; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * std::pow(g.nodes()[i], p);
    if (p == 0) s += g.origin_weight();
    EXPECT_NEAR(s, std::pow(8.0, p + 1) / (p + 1), 1e-10 * std::pow(8.0, p + 1)) << "degree " << p;
  }
}

TEST(RadialGrid, CumulativeIntegralOfExponential) {
  const auto g = build_grid(512, 20.0);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-g.nodes()[i]);
  const auto c = g.cumulative_integral(v, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(c[i] - (1.0 - v[i])));
  EXPECT_LT(worst, 1e-8);
}

TEST(RadialGrid, LogGridQuadrature) {
  const auto g = build_grid(1000, 40.0, SpacingKind::log_uniform);
  const auto f = RadialField::sample(g, [](double r) { return std::exp(-r); });
  EXPECT_NEAR(integrate_radial(f, 2), 2.0, 1e-6);
}

TEST(RadialField, MomentsOfExponential) {
  const auto g = default_grid();
  const auto f = RadialField::sample(g, [](double r) { return std::exp(-r); });
  EXPECT_NEAR(integrate_radial(f, 0), 1.0, 1e-9);
  EXPECT_NEAR(integrate_radial(f, 1), 1.0, 1e-10);
  EXPECT_NEAR(integrate_radial(f, 2), 2.0, 1e-10);
}

TEST(RadialField, NormsOfHydrogenGroundState) {
  // chi = e^{-r/2}: ||chi||^2 = 8 pi, ||grad chi||^2 = 2 pi, int chi^2/|x| = 4 pi.
  const auto g = default_grid();
  const auto chi = RadialField::sample(g, [](double r) { return std::exp(-0.5 * r); });
  const auto n = norms(chi);
  EXPECT_NEAR(n.l2_sq / (8.0 * kPi), 1.0, 1e-10);
  EXPECT_NEAR(n.h1dot_sq / (2.0 * kPi), 1.0, 1e-6);
  EXPECT_NEAR(kinetic_inner(chi, chi) / (2.0 * kPi), 1.0, 1e-9);
  EXPECT_NEAR(coulomb_inner(chi, chi) / (4.0 * kPi), 1.0, 1e-10);
}

TEST(RadialField, OriginValues) {
  const auto g = build_grid(256, 10.0);
  const auto smooth = RadialField::sample(g, [](double r) { return std::exp(-r); });
  EXPECT_NEAR(smooth.origin_value(), 1.0, 1e-7);
  const auto even = RadialField::sample(g, [](double r) { return std::exp(-r * r); }, OriginBehavior::even);
  EXPECT_NEAR(even.origin_value(), 1.0, 1e-7);
  const auto odd = RadialField::sample(g, [](double r) { return std::sin(r); }, OriginBehavior::odd);
  EXPECT_EQ(odd.origin_value(), 0.0);
}

TEST(RadialField, Arithmetic) {
  const auto g = build_grid(64, 4.0);
  const auto a = RadialField::sample(g, [](double r) { return r; });
  const auto b = RadialField::sample(g, [](double r) { return 2.0 * r; });
  const auto c = 3.0 * a - b;
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(c[i], g.nodes()[i]);
  const auto p = pointwise_product(a, b);
  EXPECT_DOUBLE_EQ(p[3], 2.0 * a[3] * a[3]);
  EXPECT_DOUBLE_EQ(abs(-1.0 * a)[5], a[5]);
  const auto other = build_grid(128, 4.0);
  EXPECT_THROW(a + RadialField::zeros(other), PreconditionError);
}

TEST(RadialField, Derivatives) {
  const auto g = build_grid(1024, 20.0);
  const auto f = RadialField::sample(g, [](double r) { return std::exp(-0.5 * r * r); });
  const auto d1 = differentiate(f, 1);
  const auto d2 = differentiate(f, 2);
  double e1 = 0.0;
  double e2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.nodes()[i];
    const double ex = std::exp(-0.5 * r * r);
    e1 = std::max(e1, std::abs(d1[i] + r * ex));
    e2 = std::max(e2, std::abs(d2[i] - (r * r - 1.0) * ex));
  }
  EXPECT_LT(e1, 1e-6);
  EXPECT_LT(e2, 1e-5);
}

TEST(RadialField, InterpolationAndDistance) {
  const auto g = build_grid(1024, 20.0);
  const auto f = RadialField::sample(g, [](double r) { return std::exp(-r) * std::cos(r); });
  for (double r : {0.013, 1.234567, 7.77, 19.99})
    EXPECT_NEAR(interpolate(f, r), std::exp(-r) * std::cos(r), 1e-7) << r;
  EXPECT_EQ(interpolate(f, 25.0), 0.0);
  EXPECT_NEAR(relative_l2_distance(1.01 * f, f), 0.01, 1e-12);
}

}  // namespace
