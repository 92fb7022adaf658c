#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hartree/radial_grid.hpp"

namespace hartree {

/// How a field is continued to r = 0, where the grid has no node.
enum class OriginBehavior {
  smooth,  ///< polynomial extrapolation from the first nodes
  even,    ///< extrapolation in r^2 (zero slope at the origin)
  odd,     ///< the field vanishes at the origin
};

/// Radial profile chi(r) sampled on the nodes of a RadialGrid.
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<double> values,
              OriginBehavior origin = OriginBehavior::smooth);

  template <class F>
  static RadialField sample(const RadialGrid& grid, F&& f,
                            OriginBehavior origin = OriginBehavior::smooth) {
    std::vector<double> v(grid.size());
    const auto r = grid.nodes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(r[i]);
    return RadialField(grid, std::move(v), origin);
  }
  static RadialField zeros(const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  OriginBehavior origin_behavior() const { return origin_; }

  /// Value continued to r = 0.
  double origin_value() const;
  double max_abs() const;

  RadialField& operator+=(const RadialField& other);
  RadialField& operator-=(const RadialField& other);
  RadialField& operator*=(double s);

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  OriginBehavior origin_;
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(double s, RadialField a);
RadialField operator*(RadialField a, double s);
/// Pointwise product (the origin behaviour of the result is smooth).
RadialField pointwise_product(const RadialField& a, const RadialField& b);
RadialField square(const RadialField& a);
RadialField abs(const RadialField& a);

/// int_0^{r_max} f(r) r^moment dr, moment in {0, 1, 2}. No 4*pi factor.
double integrate_radial(const RadialField& f, int moment);

/// First or second derivative by five-point finite differences.
RadialField differentiate(const RadialField& f, int order);

struct Norms {
  double l2_sq = 0.0;     ///< 4 pi int f^2 r^2 dr
  double h1dot_sq = 0.0;  ///< 4 pi int f'^2 r^2 dr
};

Norms norms(const RadialField& f);

/// 4 pi int f g r^2 dr.
double l2_inner(const RadialField& f, const RadialField& g);
double l2_norm_sq(const RadialField& f);
/// 4 pi int f' g' r^2 dr; on uniform grids this is the quartic-panel form in u = r f.
double kinetic_inner(const RadialField& f, const RadialField& g);
/// 4 pi int f g r dr.
double coulomb_inner(const RadialField& f, const RadialField& g);

/// Cubic Lagrange interpolation of f at radius r, with the origin value as an extra node.
/// Zero beyond r_max.
double interpolate(const RadialField& f, double r);

/// Relative L2 distance ||a - b|| / ||b|| (b nonzero).
double relative_l2_distance(const RadialField& a, const RadialField& b);

}  // namespace hartree
