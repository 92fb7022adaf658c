#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hartree/functionals.hpp"
#include "hartree/radial_field.hpp"

namespace hartree {

/// Mean of 1/|x - y| over two points drawn uniformly from the unit cube.
inline constexpr double kUnitCubeSelfEnergy = 1.8823126443896672;

/// Cell-centred lattice on [-L, L]^3 with n cells per axis; x varies fastest.
struct CartesianGrid {
  std::size_t n = 32;
  double half_width = 11.0;

  /// Throws ConfigError unless n is even, 16 <= n <= 48 and half_width >= 10.
  void validate() const;
  double spacing() const { return 2.0 * half_width / static_cast<double>(n); }
  double cell_volume() const;
  double coordinate(std::size_t i) const;
  std::size_t points() const { return n * n * n; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return i + n * (j + n * k); }
  bool operator==(const CartesianGrid&) const = default;
};

class CartesianField {
 public:
  CartesianField(CartesianGrid grid, std::vector<double> values);

  template <class F>
  static CartesianField sample(const CartesianGrid& grid, F&& f) {
    std::vector<double> v(grid.points());
    for (std::size_t k = 0; k < grid.n; ++k)
      for (std::size_t j = 0; j < grid.n; ++j)
        for (std::size_t i = 0; i < grid.n; ++i)
          v[grid.index(i, j, k)] = f(grid.coordinate(i), grid.coordinate(j), grid.coordinate(k));
    return CartesianField(grid, std::move(v));
  }
  static CartesianField zeros(const CartesianGrid& grid);

  const CartesianGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double max_abs() const;
  /// Largest |value| on the outermost cell layer relative to the largest |value|.
  double boundary_shell_ratio() const;

  CartesianField& operator+=(const CartesianField& other);
  CartesianField& operator-=(const CartesianField& other);
  CartesianField& operator*=(double s);

 private:
  CartesianGrid grid_;
  std::vector<double> values_;
};

CartesianField operator+(CartesianField a, const CartesianField& b);
CartesianField operator-(CartesianField a, const CartesianField& b);
CartesianField operator*(double s, CartesianField a);
CartesianField operator*(CartesianField a, double s);
CartesianField pointwise_product(const CartesianField& a, const CartesianField& b);
CartesianField square(const CartesianField& a);
CartesianField abs(const CartesianField& a);

/// Mirror image across the plane x_axis = 0, axis in {1, 2, 3}.
CartesianField reflect(const CartesianField& f, int axis);

double l2_inner(const CartesianField& f, const CartesianField& g);
double l2_norm_sq(const CartesianField& f);
/// Seven-point Dirichlet form h^3 sum f (-Delta_h g), zero outside the box.
double kinetic_inner(const CartesianField& f, const CartesianField& g);
/// h^3 sum V f g with V the cell average of 1/|x|.
double coulomb_inner(const CartesianField& f, const CartesianField& g);

/// Direct double sum of f(x) g(y) / |x - y| over cell pairs; a cell paired with itself uses
/// kUnitCubeSelfEnergy / h. Throws ConfigError for n > 48.
double a_direct(const CartesianField& f, const CartesianField& g);
/// Same as a_direct, so generic code can use one name for both pipelines.
double a_form(const CartesianField& f, const CartesianField& g);

double l_omega_form(const CartesianField& f, const CartesianField& g, double omega);
double l_omega(const CartesianField& f, double omega);
/// Report with a_quad from a_direct.
FunctionalReport report(const CartesianField& chi, double omega);

struct PoissonOptions {
  double rel_tol = 1e-10;
  std::size_t max_iters = 5000;
};

/// Solves -Delta_h phi = 4 pi f with Dirichlet values M/|x| on the ghost layer,
/// M = h^3 sum f. Throws NumericalError if conjugate gradients do not reach rel_tol.
CartesianField poisson_hartree(const CartesianField& f, const PoissonOptions& options = {});

/// max over axes of ||f - reflect(f)|| / ||f||. Throws PreconditionError for f = 0.
double symmetry_deficit(const CartesianField& f);

/// ||f - chi(|x|)|| / ||chi(|x|)|| over the lattice, chi interpolated from the radial grid.
double radial_profile_distance(const CartesianField& f, const RadialField& chi);

/// Lattice samples of a radial profile (zero beyond its r_max).
CartesianField sample_radial(const CartesianGrid& grid, const RadialField& chi);

enum class Init3D { random_nonsymmetric, radial };

struct Solver3DConfig {
  CartesianGrid grid;
  double omega = 0.2;
  std::size_t max_iters = 400;
  double el_tol = 1e-6;
  std::uint64_t seed = 0;
  Init3D init = Init3D::random_nonsymmetric;
};

struct Solver3DResult {
  CartesianField chi;
  double symmetry_deficit = 0.0;
  double max_deficit_seen = 0.0;  ///< largest deficit over all iterates
  FunctionalReport report;        ///< a_quad from the Poisson potential
  double el_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Preconditioned descent on the lattice action, Hartree term from poisson_hartree.
Solver3DResult minimize_action_3d(const Solver3DConfig& config);

}  // namespace hartree
