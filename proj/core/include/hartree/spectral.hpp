#pragma once

#include <cstddef>
#include <vector>

#include "hartree/radial_field.hpp"

namespace hartree {

/// Bound state of Delta + 1/|x|: Delta e + e/|x| = omega e, with ||e|| = 1.
struct EigenPair {
  std::size_t index = 0;
  double omega = 0.0;
  RadialField e;
};

/// Exact level 1 / (4 (k+1)^2).
double hydrogen_level(std::size_t k);

/// Largest k_max accepted by hydrogen_eigenpairs.
inline constexpr std::size_t kMaxHydrogenLevel = 5;

/// The k_max + 1 highest bound states (omega_0 > omega_1 > ...), radial channel, Dirichlet
/// at r_max. Requires a uniform grid. Throws GridTooSmall when a level misses its exact
/// value by more than 1e-5 relative or when k_max > kMaxHydrogenLevel.
std::vector<EigenPair> hydrogen_eigenpairs(const RadialGrid& grid, std::size_t k_max);

/// Same computation without the tolerance check.
std::vector<EigenPair> compute_hydrogen_eigenpairs(const RadialGrid& grid, std::size_t k_max);

struct Projection {
  double coeff = 0.0;
  RadialField remainder;
};

/// f = coeff e0 + remainder with remainder orthogonal to e0.
Projection project_e0(const RadialField& f, const RadialField& e0);

struct GortCheck {
  double lhs = 0.0;  ///< L_omega(g)
  double rhs = 0.0;  ///< (omega - 1/16) ||g||^2
  bool holds = false;
};

/// Lower bound L_omega(g) >= (omega - 1/16)||g||^2 for g orthogonal to e0.
/// Throws PreconditionError when |<g, e0>| > 1e-8 ||g||.
GortCheck gort_lower_bound_check(const RadialField& g, double omega, const RadialField& e0);

}  // namespace hartree
