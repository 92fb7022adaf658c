#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hartree/errors.hpp"
#include "hartree/functionals.hpp"
#include "hartree/spectral.hpp"
#include "hartree/verify.hpp"

namespace {

using namespace hartree;

TEST(Hydrogen, ExactLevels) {
  EXPECT_DOUBLE_EQ(hydrogen_level(0), 0.25);
  EXPECT_DOUBLE_EQ(hydrogen_level(1), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(hydrogen_level(2), 1.0 / 36.0);
}

class HydrogenPairs : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { pairs_ = new std::vector<EigenPair>(hydrogen_eigenpairs(build_grid(4096, 100.0), 2)); }
  static void TearDownTestSuite() {
    delete pairs_;
    pairs_ = nullptr;
  }
  static std::vector<EigenPair>* pairs_;
};

std::vector<EigenPair>* HydrogenPairs::pairs_ = nullptr;

TEST_F(HydrogenPairs, LevelsAndOrdering) {
  ASSERT_EQ(pairs_->size(), 3u);
  // k = 2 feels the Dirichlet wall at r = 100 at the 1e-7 level.
  for (const auto& p : *pairs_) EXPECT_NEAR(p.omega / hydrogen_level(p.index), 1.0, 1e-6) << p.index;
  EXPECT_GT((*pairs_)[0].omega, (*pairs_)[1].omega);
}

TEST_F(HydrogenPairs, GroundStateShape) {
  const auto& e0 = (*pairs_)[0].e;
  const auto exact = RadialField::sample(e0.grid(), [](double r) { return std::exp(-0.5 * r) / std::sqrt(8.0 * std::numbers::pi); });
  EXPECT_LT(relative_l2_distance(e0, exact), 1e-6);
}

TEST_F(HydrogenPairs, Orthonormal) {
  for (std::size_t i = 0; i < pairs_->size(); ++i)
    for (std::size_t j = 0; j < pairs_->size(); ++j)
      EXPECT_NEAR(l2_inner((*pairs_)[i].e, (*pairs_)[j].e), i == j ? 1.0 : 0.0, 1e-8) << i << j;
}

TEST_F(HydrogenPairs, EigenEquationInWeakForm) {
  // L_omega(e_k) = 0 at omega = omega_k.
  for (const auto& p : *pairs_) EXPECT_NEAR(l_omega(p.e, p.omega), 0.0, 1e-9) << p.index;
}

TEST_F(HydrogenPairs, GortBoundOnOrthogonalComplement) {
  const auto& e0 = (*pairs_)[0].e;
  const auto f = random_radial_profile(e0.grid(), 4);
  const auto proj = project_e0(f, e0);
  EXPECT_NEAR(l2_inner(proj.remainder, e0), 0.0, 1e-12 * std::sqrt(l2_norm_sq(f)));
  for (double w : {0.01, 0.05, 0.2, 0.5}) {
    const auto c = gort_lower_bound_check(proj.remainder, w, e0);
    EXPECT_TRUE(c.holds) << w << " " << c.lhs << " " << c.rhs;
  }
  // e1 attains the bound.
  const auto c1 = gort_lower_bound_check((*pairs_)[1].e, 0.1, e0);
  EXPECT_NEAR(c1.lhs, c1.rhs, 1e-8);
  EXPECT_THROW(gort_lower_bound_check(f, 0.1, e0), PreconditionError);
}

TEST(Hydrogen, GridTooSmall) {
  EXPECT_THROW(hydrogen_eigenpairs(build_grid(1024, 60.0), 9), GridTooSmall);
  // Level k = 5 extends far beyond a 20 bohr box.
  EXPECT_THROW(hydrogen_eigenpairs(build_grid(512, 20.0), 5), GridTooSmall);
  EXPECT_NO_THROW(compute_hydrogen_eigenpairs(build_grid(512, 20.0), 5));
  EXPECT_THROW(hydrogen_eigenpairs(build_grid(512, 20.0, SpacingKind::log_uniform), 1), PreconditionError);
}

}  // namespace
