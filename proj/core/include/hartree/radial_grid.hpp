#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "hartree/banded.hpp"

namespace hartree {

enum class SpacingKind { uniform, log_uniform };

std::string_view to_string(SpacingKind kind);
SpacingKind spacing_kind_from_string(std::string_view s);

/// Radial mesh on (0, r_max] with quadrature weights for integrals over [0, r_max].
///
/// The origin is never a node. Its quadrature weight is kept separately
/// (`origin_weight`) and multiplies the integrand's limit at r = 0, which
/// callers supply from the field's origin behaviour.
///
/// Uniform grids have nodes r_i = i*h, i = 1..n, and are read as a chain of
/// quartic Lagrange panels [4kh, 4(k+1)h]; the weights are composite Boole
/// weights and the grid carries the panel stiffness matrix of the reduced
/// variable u = r*chi, used by the kinetic form, the Poisson solve and the
/// eigensolver. Log-uniform grids only support quadrature and differentiation.
///
/// Copies share the immutable node data.
class RadialGrid {
 public:
  static constexpr std::size_t kMinNodes = 64;
  static constexpr std::size_t kPanelIntervals = 4;

  std::size_t size() const;
  double r_max() const;
  SpacingKind kind() const;
  bool is_uniform() const { return kind() == SpacingKind::uniform; }
  /// Uniform spacing h; only meaningful on uniform grids.
  double spacing() const;

  std::span<const double> nodes() const;
  std::span<const double> weights() const;
  double origin_weight() const;

  /// Quartic-panel stiffness matrix, nodes 1..n (u(0) = 0 eliminated). Uniform grids only.
  const SymmetricBandMatrix& stiffness() const;
  /// u^T S v for the stiffness above, summed panel by panel on differences from each panel's
  /// first node. Same value as stiffness().bilinear without its O(1/h) cancellation. Uniform grids only.
  double stiffness_form(std::span<const double> u, std::span<const double> v) const;
  /// Cholesky factor of the Dirichlet block, nodes 1..n-1. Uniform grids only.
  const BandCholesky& dirichlet_stiffness_factor() const;

  /// Cumulative integral weights: for node i, int_0^{r_i} g dr = sum_j c_ij g_j + c_i0 g(0).
  /// Returns the running integrals of g sampled on the nodes (origin value g0).
  std::vector<double> cumulative_integral(std::span<const double> g, double g0) const;

  bool same_as(const RadialGrid& other) const;

  struct Data;

 private:
  friend RadialGrid build_grid(std::size_t, double, SpacingKind);
  explicit RadialGrid(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Builds a grid; throws ConfigError for n < 64, r_max <= 0, or (uniform) n not a multiple of 4.
RadialGrid build_grid(std::size_t n, double r_max, SpacingKind kind = SpacingKind::uniform);

/// The default grid: n = 2048, r_max = 60, uniform.
RadialGrid default_grid();

}  // namespace hartree
