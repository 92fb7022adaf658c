#pragma once

#include "hartree/radial_field.hpp"

namespace hartree {

/// All terms of the energy and action of a radial state at a given omega.
struct FunctionalReport {
  double omega = 0.0;
  double l2_sq = 0.0;               ///< ||chi||^2
  double h1dot_sq = 0.0;            ///< ||grad chi||^2
  double coulomb_attraction = 0.0;  ///< int chi^2 / |x|
  double a_quad = 0.0;              ///< A(chi^2, chi^2)
  double l_omega = 0.0;             ///< h1dot_sq - coulomb_attraction + omega * l2_sq
  double energy = 0.0;              ///< h1dot_sq/2 + a_quad/4 - coulomb_attraction/2
  double action = 0.0;              ///< energy + omega * l2_sq / 2
};

/// Hartree potential Phi(r) = 4 pi int rho(s) s^2 / max(r, s) ds of the density chi^2,
/// by split cumulative sums.
RadialField hartree_potential(const RadialField& chi);
/// Same, for an explicit density.
RadialField hartree_potential_of_density(const RadialField& rho);

/// Potential of a density from the discrete radial Poisson problem. On uniform grids this
/// is the potential whose pairing with a density is exactly a_form. Falls back to the
/// cumulative route on log grids.
RadialField poisson_potential_of_density(const RadialField& rho);

/// Coulomb bilinear form A(f, g) = int int f(x) g(y) / |x - y| of radial densities.
double a_form(const RadialField& f, const RadialField& g);

/// L_omega(f, g) = <grad f, grad g> - int f g / |x| + omega <f, g>.
double l_omega_form(const RadialField& f, const RadialField& g, double omega);
double l_omega(const RadialField& chi, double omega);

FunctionalReport report(const RadialField& chi, double omega);

/// ||f||^2 in the homogeneous H^{-1} norm, A(f, f) / (4 pi).
double hminus1_norm_sq(const RadialField& f);

/// (int |chi|^3)^{1/3} / (||chi||_{H1dot}^{1/3} ||chi^2||_{H^-1}^{1/3}); dilation invariant.
double sobolev_ratio_probe(const RadialField& chi);

}  // namespace hartree
