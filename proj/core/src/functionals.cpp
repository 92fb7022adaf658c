#include "hartree/functionals.hpp"

#include <cmath>
#include <numbers>

#include "hartree/errors.hpp"

namespace hartree {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

struct PoissonData {
  std::vector<double> b;  // w_i r_i rho_i on nodes 1..n-1
  double q = 0.0;         // 4 pi int rho r^2, the enclosed charge at r_max
};

PoissonData poisson_data(const RadialField& rho) {
  const auto& g = rho.grid();
  const auto r = g.nodes();
  const auto w = g.weights();
  const std::size_t n = rho.size();
  PoissonData d;
  d.b.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d.b[i] = w[i] * r[i] * rho[i];
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) q += w[i] * r[i] * r[i] * rho[i];
  d.q = kFourPi * q;
  return d;
}

}  // namespace

RadialField hartree_potential_of_density(const RadialField& rho) {
  const auto& g = rho.grid();
  const auto r = g.nodes();
  const std::size_t n = rho.size();
  std::vector<double> m2(n);
  std::vector<double> m1(n);
  for (std::size_t i = 0; i < n; ++i) {
    m2[i] = rho[i] * r[i] * r[i];
    m1[i] = rho[i] * r[i];
  }
  const auto inner = g.cumulative_integral(m2, 0.0);
  const auto outer = g.cumulative_integral(m1, 0.0);
  const double total = outer[n - 1];
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = kFourPi * (inner[i] / r[i] + total - outer[i]);
  return RadialField(g, std::move(phi));
}

RadialField hartree_potential(const RadialField& chi) {
  return hartree_potential_of_density(square(chi));
}

RadialField poisson_potential_of_density(const RadialField& rho) {
  const auto& g = rho.grid();
  if (!g.is_uniform()) return hartree_potential_of_density(rho);
  const auto r = g.nodes();
  const std::size_t n = rho.size();
  PoissonData d = poisson_data(rho);
  g.dirichlet_stiffness_factor().solve_in_place(d.b);
  std::vector<double> phi(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    phi[i] = (kFourPi * d.b[i] + d.q * r[i] / g.r_max()) / r[i];
  phi[n - 1] = d.q / g.r_max();
  return RadialField(g, std::move(phi));
}

double a_form(const RadialField& f, const RadialField& g) {
  if (!f.grid().same_as(g.grid())) detail::throw_precondition("fields live on different grids");
  const auto& grid = f.grid();
  if (!grid.is_uniform()) {
    const RadialField phi = hartree_potential_of_density(f);
    return l2_inner(phi, g);
  }
  PoissonData df = poisson_data(f);
  const PoissonData dg = poisson_data(g);
  grid.dirichlet_stiffness_factor().solve_in_place(df.b);
  double s = 0.0;
  for (std::size_t i = 0; i < dg.b.size(); ++i) s += dg.b[i] * df.b[i];
  return kFourPi * kFourPi * s + df.q * dg.q / grid.r_max();
}

double l_omega_form(const RadialField& f, const RadialField& g, double omega) {
  return kinetic_inner(f, g) - coulomb_inner(f, g) + omega * l2_inner(f, g);
}

double l_omega(const RadialField& chi, double omega) { return l_omega_form(chi, chi, omega); }

FunctionalReport report(const RadialField& chi, double omega) {
  FunctionalReport rep;
  rep.omega = omega;
  rep.l2_sq = l2_norm_sq(chi);
  rep.h1dot_sq = kinetic_inner(chi, chi);
  rep.coulomb_attraction = coulomb_inner(chi, chi);
  const RadialField rho = square(chi);
  rep.a_quad = a_form(rho, rho);
  rep.l_omega = rep.h1dot_sq - rep.coulomb_attraction + omega * rep.l2_sq;
  rep.energy = 0.5 * rep.h1dot_sq + 0.25 * rep.a_quad - 0.5 * rep.coulomb_attraction;
  rep.action = 0.5 * rep.l_omega + 0.25 * rep.a_quad;
  return rep;
}

double hminus1_norm_sq(const RadialField& f) { return a_form(f, f) / kFourPi; }

double sobolev_ratio_probe(const RadialField& chi) {
  if (chi.max_abs() == 0.0) detail::throw_precondition("sobolev_ratio_probe: zero field");
  std::vector<double> cube(chi.size());
  for (std::size_t i = 0; i < cube.size(); ++i) cube[i] = std::pow(std::abs(chi[i]), 3);
  const double l3 = kFourPi * integrate_radial(RadialField(chi.grid(), std::move(cube)), 2);
  const double h1 = kinetic_inner(chi, chi);
  const double hm1 = hminus1_norm_sq(square(chi));
  return std::cbrt(l3) / (std::pow(h1, 1.0 / 6.0) * std::pow(hm1, 1.0 / 6.0));
}

}  // namespace hartree
