#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hartree/errors.hpp"
#include "hartree/verify.hpp"

namespace {

using namespace hartree;
constexpr double kPi = std::numbers::pi;

TEST(Reports, IdentitySemantics) {
  const auto r = make_identity("x", 1.0, 1.0 + 1e-11, 1e-10);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.kind, RelationKind::identity);
  EXPECT_NEAR(r.rel_residual, 1e-11, 1e-15);
  EXPECT_FALSE(make_identity("x", 1.0, 1.1, 1e-3).holds);
  EXPECT_TRUE(make_identity("zero", 0.0, 0.0, 1e-10).holds);
}

TEST(Reports, InequalitySemantics) {
  EXPECT_TRUE(make_inequality("le", 1.0, 2.0, 0.0).holds);
  EXPECT_TRUE(make_inequality("slack", 2.0 + 1e-10, 2.0, 1e-9).holds);
  EXPECT_FALSE(make_inequality("gt", 2.0 + 1e-8, 2.0, 1e-9).holds);
}

TEST(Reports, Accumulate) {
  BatchSummary s{"b"};
  accumulate(s, make_identity("a", 1.0, 1.0 + 1e-12, 1e-10));
  accumulate(s, make_identity("a", 1.0, 1.0 + 1e-9, 1e-10));
  accumulate(s, make_inequality("i", 0.5, 1.0, 1e-9));
  EXPECT_EQ(s.cases, 3u);
  EXPECT_EQ(s.failures, 1u);
  EXPECT_FALSE(s.holds());
  EXPECT_NEAR(s.worst, 1e-9, 1e-12);
}

TEST(Pohozaev, NonSolutionProbe) {
  // chi = e^{-r/2} at omega = 0.2 is not a critical point; the mass identity misses by
  // 2 pi + 1.6 pi - 4 pi + 20 pi^2.
  const auto chi = RadialField::sample(default_grid(), [](double r) { return std::exp(-0.5 * r); });
  const auto p = pohozaev_residuals(chi, 0.2);
  EXPECT_NEAR(p.mass.abs_residual, std::abs(2 * kPi + 1.6 * kPi - 4 * kPi + 20 * kPi * kPi), 1e-6);
  EXPECT_FALSE(p.mass.holds);
  EXPECT_FALSE(p.dilation.holds);
}

TEST(Pohozaev, RequiresConvergedMinimiser) {
  SolverConfig c;
  c.n = 256;
  c.max_iters = 1;
  const auto r = minimize_action(c);
  ASSERT_FALSE(r.converged);
  EXPECT_THROW(action_a_relation(r), PreconditionError);
}

TEST(Clarkson, EqualPairsAreEqualityCases) {
  const auto grid = default_grid();
  const auto f = random_radial_profile(grid, 9);
  EXPECT_TRUE(clarkson_L(f, f, 0.2).holds);
  const auto a = clarkson_A(f, f);
  EXPECT_TRUE(a.inequality.holds);
  EXPECT_NEAR(a.inequality.lhs, a.inequality.rhs, 1e-12 * a.inequality.rhs);
  EXPECT_TRUE(a.expansion.holds);
  // mu = nu = 1/2, g = f: (mu f + nu g) = f and the other is zero.
  const auto ii = clarkson_II(f, f, 0.5, 0.5, 0.2);
  EXPECT_TRUE(ii.l_identity.holds);
  EXPECT_TRUE(ii.a_inequality.holds);
}

TEST(Clarkson, RandomPairs) {
  const auto grid = default_grid();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_radial_profile(grid, 2 * s);
    const auto g = random_radial_profile(grid, 2 * s + 1);
    EXPECT_TRUE(clarkson_L(f, g, 0.2).holds) << s;
    const auto a = clarkson_A(f, g);
    EXPECT_TRUE(a.inequality.holds) << s;
    EXPECT_TRUE(a.expansion.holds) << s;
  }
}

TEST(Clarkson, IIPreconditions) {
  const auto grid = default_grid();
  const auto f = random_radial_profile(grid, 1);
  const auto g = random_radial_profile(grid, 2);
  EXPECT_THROW(clarkson_II(f, f, 0.5, 0.4, 0.2), PreconditionError);
  EXPECT_THROW(clarkson_II(f, f, -0.5, 0.5, 0.2), PreconditionError);
  EXPECT_THROW(clarkson_II(f, g, 0.5, 0.5, 0.2), PreconditionError);
}

TEST(Clarkson, MatchedRescalingSatisfiesIIPreconditions) {
  const auto grid = default_grid();
  int found = 0;
  for (std::uint64_t s = 0; s < 20 && found < 3; ++s) {
    const RadialProfile p = random_profile(s);
    const auto m = matched_rescaling(grid, p, 0.2);
    if (!m) continue;
    ++found;
    const auto f = RadialField::sample(grid, p);
    EXPECT_GT(std::abs(m->lambda - 1.0), 1e-3);
    EXPECT_NEAR(l_omega(m->g, 0.2), l_omega(f, 0.2), 1e-9 * kinetic_inner(f, f));
    const double af = a_form(square(f), square(f));
    EXPECT_NEAR(a_form(square(m->g), square(m->g)), af, 1e-9 * af);
    const double mu = std::sqrt(0.3);
    const auto ii = clarkson_II(f, m->g, mu, std::sqrt(0.5 - mu * mu), 0.2);
    EXPECT_TRUE(ii.l_identity.holds);
    EXPECT_TRUE(ii.a_inequality.holds);
  }
  EXPECT_GT(found, 0);
}

TEST(Quartic, ClosedForm) {
  EXPECT_DOUBLE_EQ(quartic_value(0.5), 1.0);
  EXPECT_DOUBLE_EQ(quartic_value(0.0), 0.5);
  // 2(mu^4 + nu^4 + 6 mu^2 nu^2) = 1 - (1 - 4 mu^2)^2 / 2 with nu^2 = 1/2 - mu^2
  for (double mu : {0.1, 0.3, 0.6, 0.7}) {
    const double m2 = mu * mu;
    EXPECT_NEAR(quartic_value(mu), 1.0 - 0.5 * (1.0 - 4.0 * m2) * (1.0 - 4.0 * m2), 1e-15);
  }
  const auto q = quartic_bound_scan(10001);
  EXPECT_TRUE(q.holds);
  EXPECT_NEAR(q.max_value, 1.0, 1e-12);
  EXPECT_NEAR(q.argmax_mu_sq, 0.25, 1e-12);
  EXPECT_THROW(quartic_bound_scan(50), ConfigError);
}

TEST(Reflection, ChainOnLatticeField) {
  const CartesianGrid grid{16, 10.0};
  const auto chi = random_lattice_field(grid, 42);
  const auto r = reflection_chain_check(chi, 0.2);
  EXPECT_TRUE(r.l_sum.holds);
  EXPECT_TRUE(r.a_sum.holds);
  EXPECT_TRUE(r.a_step_strict);
  EXPECT_TRUE(r.s_invariance.holds);
  EXPECT_TRUE(r.s_sum.holds);
  EXPECT_TRUE(r.holds);
}

TEST(Batches, SmallRadialBatches) {
  const auto grid = default_grid();
  const auto c = clarkson_batch_radial(grid, 20, 5, 0.2);
  EXPECT_EQ(c.l_identity.cases, 20u);
  EXPECT_TRUE(c.l_identity.holds());
  EXPECT_TRUE(c.a_inequality.holds());
  EXPECT_TRUE(c.a_expansion.holds());
  EXPECT_EQ(c.ii_identity.cases, 20u);
  EXPECT_TRUE(c.ii_identity.holds());
  EXPECT_TRUE(c.ii_inequality.holds());
  const auto f = form_batch_radial(grid, 20, 5);
  EXPECT_TRUE(f.parallelogram.holds());
  EXPECT_TRUE(f.cauchy_squares.holds());
  EXPECT_TRUE(f.cauchy_product.holds());
}

TEST(RandomProfiles, ReproducibleAndBounded) {
  const RadialProfile a = random_profile(77);
  const RadialProfile b = random_profile(77);
  ASSERT_EQ(a.bumps.size(), b.bumps.size());
  EXPECT_GE(a.bumps.size(), 1u);
  EXPECT_LE(a.bumps.size(), 3u);
  for (const auto& bump : a.bumps) {
    EXPECT_GE(bump.r0, 0.0);
    EXPECT_LE(bump.r0, 4.0);
    EXPECT_GE(bump.s, 0.7);
    EXPECT_LE(bump.s, 2.5);
  }
  EXPECT_EQ(a(1.3), b(1.3));
}

}  // namespace
