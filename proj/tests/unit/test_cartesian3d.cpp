#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hartree/cartesian3d.hpp"
#include "hartree/errors.hpp"
#include "hartree/solver.hpp"
#include "hartree/verify.hpp"

namespace {

using namespace hartree;
constexpr double kPi = std::numbers::pi;

TEST(CartesianGrid, Validation) {
  EXPECT_NO_THROW((CartesianGrid{16, 10.0}.validate()));
  EXPECT_THROW((CartesianGrid{15, 10.0}.validate()), ConfigError);
  EXPECT_THROW((CartesianGrid{8, 10.0}.validate()), ConfigError);
  EXPECT_THROW((CartesianGrid{50, 10.0}.validate()), ConfigError);
  EXPECT_THROW((CartesianGrid{16, 9.0}.validate()), ConfigError);
}

TEST(CartesianGrid, CellCentres) {
  const CartesianGrid g{16, 10.0};
  EXPECT_DOUBLE_EQ(g.spacing(), 1.25);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 1.25 * 1.25 * 1.25);
  EXPECT_DOUBLE_EQ(g.coordinate(0), -10.0 + 0.625);
  EXPECT_DOUBLE_EQ(g.coordinate(15), 10.0 - 0.625);
  EXPECT_DOUBLE_EQ(g.coordinate(7), -g.coordinate(8));
}

TEST(UnitCube, SelfEnergyConstant) {
  // <1/|x-y|> = 8 int_{[0,1]^3} prod(1 - t_i) / |t| dt. On the wedge t3 >= t1, t2 put
  // t = t3 (a, b, 1); the t3 integral is 1/6 - (a+b)/12 + ab/20, leaving a smooth 2D integral.
  const int m = 1000;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double a = static_cast<double>(i) / m;
    const double wa = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    for (int j = 0; j <= m; ++j) {
      const double b = static_cast<double>(j) / m;
      const double wb = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      s += wa * wb * (1.0 / 6.0 - (a + b) / 12.0 + a * b / 20.0) / std::sqrt(1.0 + a * a + b * b);
    }
  }
  const double mean = 24.0 * s / (9.0 * m * m);
  EXPECT_NEAR(kUnitCubeSelfEnergy, mean, 1e-11);
}

TEST(Reflect, Involution) {
  const CartesianGrid g{16, 10.0};
  const auto f = random_lattice_field(g, 3);
  for (int axis = 1; axis <= 3; ++axis) {
    const auto rr = reflect(reflect(f, axis), axis);
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_EQ(rr[i], f[i]);
  }
  const auto r1 = reflect(f, 1);
  EXPECT_EQ(r1[g.index(0, 3, 5)], f[g.index(15, 3, 5)]);
  EXPECT_THROW(reflect(f, 0), PreconditionError);
  EXPECT_THROW(reflect(f, 4), PreconditionError);
}

TEST(ADirect, TwoCellHandFormula) {
  const CartesianGrid g{16, 10.0};
  auto f = CartesianField::zeros(g);
  const std::size_t i1 = g.index(2, 3, 4);
  const std::size_t i2 = g.index(9, 1, 12);
  f.mutable_values()[i1] = 0.7;
  f.mutable_values()[i2] = -1.3;
  const double h = g.spacing();
  const double vol = g.cell_volume();
  const double d = std::hypot(g.coordinate(2) - g.coordinate(9), g.coordinate(3) - g.coordinate(1),
                              g.coordinate(4) - g.coordinate(12));
  const double exact = vol * vol * ((0.7 * 0.7 + 1.3 * 1.3) * kUnitCubeSelfEnergy / h + 2.0 * 0.7 * -1.3 / d);
  EXPECT_NEAR(a_direct(f, f), exact, 1e-12 * std::abs(exact));

  auto a = CartesianField::zeros(g);
  auto b = CartesianField::zeros(g);
  a.mutable_values()[i1] = 2.0;
  b.mutable_values()[i2] = 5.0;
  EXPECT_NEAR(a_direct(a, b), vol * vol * 10.0 / d, 1e-12 * vol * vol * 10.0 / d);
  EXPECT_NEAR(a_form(b, a), a_direct(a, b), 1e-14);
}

TEST(ADirect, BilinearAndSymmetric) {
  const CartesianGrid g{16, 10.0};
  const auto f = random_lattice_field(g, 1);
  const auto h = random_lattice_field(g, 2);
  const double afh = a_direct(f, h);
  EXPECT_NEAR(afh, a_direct(h, f), 1e-12 * std::abs(afh));
  const double sum = a_direct(f + h, f + h);
  EXPECT_NEAR(sum, a_direct(f, f) + 2.0 * afh + a_direct(h, h), 1e-11 * sum);
  EXPECT_THROW(a_direct(CartesianField::zeros({50, 10.0}), CartesianField::zeros({50, 10.0})), ConfigError);
}

// A(e^{-a|x|^2}) = (pi/a)^3 (2/sqrt(pi)) sqrt(a/2)
double gaussian_self_energy(double a) { return std::pow(kPi / a, 3) * 2.0 / std::sqrt(kPi) * std::sqrt(0.5 * a); }

CartesianField gaussian(const CartesianGrid& g, double a) {
  return CartesianField::sample(g, [a](double x, double y, double z) { return std::exp(-a * (x * x + y * y + z * z)); });
}

TEST(ADirect, GaussianDensitySecondOrder) {
  const double exact = gaussian_self_energy(0.25);
  const double coarse = a_direct(gaussian({16, 10.0}, 0.25), gaussian({16, 10.0}, 0.25)) / exact - 1.0;
  const double fine = a_direct(gaussian({32, 10.0}, 0.25), gaussian({32, 10.0}, 0.25)) / exact - 1.0;
  EXPECT_LT(std::abs(fine), 1e-2);
  EXPECT_GT(std::abs(coarse) / std::abs(fine), 3.0);
}

TEST(Poisson, GaussianDensitySecondOrder) {
  const double exact = gaussian_self_energy(0.25);
  auto rel = [&](std::size_t n) {
    const auto rho = gaussian({n, 10.0}, 0.25);
    return l2_inner(poisson_hartree(rho), rho) / exact - 1.0;
  };
  const double coarse = rel(16);
  const double fine = rel(32);
  EXPECT_LT(std::abs(fine), 1e-2);
  EXPECT_GT(std::abs(coarse) / std::abs(fine), 3.0);
  EXPECT_THROW(poisson_hartree(gaussian({16, 10.0}, 0.25), {1e-30, 3}), NumericalError);
}

TEST(Symmetry, DeficitOfRadialAndSkewedFields) {
  const CartesianGrid g{16, 10.0};
  const auto radial = CartesianField::sample(g, [](double x, double y, double z) { return std::exp(-std::sqrt(x * x + y * y + z * z)); });
  EXPECT_LT(symmetry_deficit(radial), 1e-14);
  EXPECT_GT(symmetry_deficit(random_lattice_field(g, 5)), 1e-3);
  EXPECT_THROW(symmetry_deficit(CartesianField::zeros(g)), PreconditionError);
}

TEST(Symmetry, SampledRadialProfile) {
  const CartesianGrid g{16, 10.0};
  const auto chi = RadialField::sample(default_grid(), [](double r) { return std::exp(-0.5 * r); });
  const auto f = sample_radial(g, chi);
  EXPECT_LT(radial_profile_distance(f, chi), 1e-8);
  EXPECT_NEAR(f[g.index(7, 7, 7)], std::exp(-0.5 * std::sqrt(3.0) * 0.625), 1e-8);
}

TEST(Forms, LatticeLOmegaIdentity) {
  const CartesianGrid g{16, 10.0};
  const auto f = random_lattice_field(g, 11);
  const auto h = random_lattice_field(g, 12);
  EXPECT_TRUE(clarkson_L(f, h, 0.2).holds);
  EXPECT_NEAR(kinetic_inner(f, h), kinetic_inner(h, f), 1e-12 * std::abs(kinetic_inner(f, f)));
  EXPECT_GT(kinetic_inner(f, f), 0.0);
  const auto rep = report(f, 0.2);
  EXPECT_NEAR(rep.l_omega, l_omega(f, 0.2), 1e-12 * std::abs(rep.l_omega));
}

TEST(Solver3D, RadialStartStaysSymmetric) {
  Solver3DConfig c;
  c.grid = {16, 10.0};
  c.init = Init3D::radial;
  c.max_iters = 50;
  const auto r = minimize_action_3d(c);
  EXPECT_LT(r.symmetry_deficit, 1e-10);
  EXPECT_LT(r.report.action, 0.0);
}

}  // namespace
