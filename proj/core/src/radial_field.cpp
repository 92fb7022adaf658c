#include "hartree/radial_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/fd_weights.hpp"
#include "hartree/errors.hpp"

namespace hartree {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (!a.grid().same_as(b.grid())) detail::throw_precondition("fields live on different grids");
}

// Lagrange interpolation of (x_j, y_j) evaluated at x.
double lagrange_at(std::span<const double> x, std::span<const double> y, double at) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double l = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != a) l *= (at - x[j]) / (x[a] - x[j]);
    s += l * y[a];
  }
  return s;
}

OriginBehavior product_origin(OriginBehavior a, OriginBehavior b) {
  if (a == OriginBehavior::odd || b == OriginBehavior::odd) {
    if (a == OriginBehavior::odd && b == OriginBehavior::odd) return OriginBehavior::even;
    return OriginBehavior::odd;
  }
  if (a == OriginBehavior::even && b == OriginBehavior::even) return OriginBehavior::even;
  return OriginBehavior::smooth;
}

}  // namespace

RadialField::RadialField(RadialGrid grid, std::vector<double> values, OriginBehavior origin)
    : grid_(std::move(grid)), values_(std::move(values)), origin_(origin) {
  if (values_.size() != grid_.size())
    detail::throw_precondition("field size does not match its grid");
  for (double v : values_)
    if (!std::isfinite(v)) detail::throw_precondition("field values must be finite");
}

RadialField RadialField::zeros(const RadialGrid& grid) {
  return RadialField(grid, std::vector<double>(grid.size(), 0.0));
}

double RadialField::origin_value() const {
  const auto r = grid_.nodes();
  switch (origin_) {
    case OriginBehavior::odd:
      return 0.0;
    case OriginBehavior::even: {
      const double s[3] = {r[0] * r[0], r[1] * r[1], r[2] * r[2]};
      return lagrange_at(s, std::span<const double>(values_).first(3), 0.0);
    }
    case OriginBehavior::smooth:
      break;
  }
  if (grid_.is_uniform()) {
    const auto& f = values_;
    return 5.0 * f[0] - 10.0 * f[1] + 10.0 * f[2] - 5.0 * f[3] + f[4];
  }
  return lagrange_at(r.first(5), std::span<const double>(values_).first(5), 0.0);
}

double RadialField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

RadialField& RadialField::operator+=(const RadialField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  if (origin_ != other.origin_) origin_ = OriginBehavior::smooth;
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  if (origin_ != other.origin_) origin_ = OriginBehavior::smooth;
  return *this;
}

RadialField& RadialField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(double s, RadialField a) { return a *= s; }
RadialField operator*(RadialField a, double s) { return a *= s; }

RadialField pointwise_product(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return RadialField(a.grid(), std::move(v),
                     product_origin(a.origin_behavior(), b.origin_behavior()));
}

RadialField square(const RadialField& a) { return pointwise_product(a, a); }

RadialField abs(const RadialField& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x = std::abs(x);
  return RadialField(a.grid(), std::move(v), a.origin_behavior());
}

double integrate_radial(const RadialField& f, int moment) {
  if (moment < 0 || moment > 2) detail::throw_precondition("moment must be 0, 1 or 2");
  const auto& g = f.grid();
  const auto r = g.nodes();
  const auto w = g.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * std::pow(r[i], moment);
  if (moment == 0) s += g.origin_weight() * f.origin_value();
  return s;
}

RadialField differentiate(const RadialField& f, int order) {
  if (order != 1 && order != 2) detail::throw_precondition("derivative order must be 1 or 2");
  const std::size_t n = f.size();
  std::vector<double> x(n + 1);
  std::vector<double> y(n + 1);
  x[0] = 0.0;
  y[0] = f.origin_value();
  const auto r = f.grid().nodes();
  for (std::size_t i = 0; i < n; ++i) {
    x[i + 1] = r[i];
    y[i + 1] = f[i];
  }
  constexpr std::size_t kStencil = 5;
  std::vector<double> out(n);
  for (std::size_t a = 1; a <= n; ++a) {
    const std::size_t start = std::min(a >= 2 ? a - 2 : 0, n + 1 - kStencil);
    const auto xs = std::span<const double>(x).subspan(start, kStencil);
    const auto c = detail::fd_weights(x[a], xs, static_cast<std::size_t>(order));
    double s = 0.0;
    for (std::size_t j = 0; j < kStencil; ++j) s += c[order][j] * y[start + j];
    out[a - 1] = s;
  }
  OriginBehavior ob = OriginBehavior::smooth;
  if (f.origin_behavior() == OriginBehavior::even)
    ob = order == 1 ? OriginBehavior::odd : OriginBehavior::even;
  if (f.origin_behavior() == OriginBehavior::odd)
    ob = order == 1 ? OriginBehavior::even : OriginBehavior::odd;
  return RadialField(f.grid(), std::move(out), ob);
}

double l2_inner(const RadialField& f, const RadialField& g) {
  require_same_grid(f, g);
  const auto r = f.grid().nodes();
  const auto w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i] * r[i] * r[i];
  return kFourPi * s;
}

double l2_norm_sq(const RadialField& f) { return l2_inner(f, f); }

double coulomb_inner(const RadialField& f, const RadialField& g) {
  require_same_grid(f, g);
  const auto r = f.grid().nodes();
  const auto w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i] * r[i];
  return kFourPi * s;
}

double kinetic_inner(const RadialField& f, const RadialField& g) {
  require_same_grid(f, g);
  const auto& grid = f.grid();
  const auto r = grid.nodes();
  const std::size_t n = f.size();
  if (grid.is_uniform()) {
    // int f'g' r^2 = int u'v' - [u v / r] with u = r f, v = r g.
    std::vector<double> u(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = r[i] * f[i];
      v[i] = r[i] * g[i];
    }
    return kFourPi * (grid.stiffness_form(u, v) - u[n - 1] * v[n - 1] / grid.r_max());
  }
  const RadialField df = differentiate(f, 1);
  const RadialField dg = differentiate(g, 1);
  return l2_inner(df, dg);
}

Norms norms(const RadialField& f) { return {l2_norm_sq(f), kinetic_inner(f, f)}; }

double interpolate(const RadialField& f, double r) {
  const auto nodes = f.grid().nodes();
  const std::size_t n = nodes.size();
  if (r > nodes[n - 1]) return 0.0;
  if (r <= 0.0) return f.origin_value();
  // Four-point stencil over the augmented node list (0, r_1, ..., r_n).
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  const std::size_t upper = static_cast<std::size_t>(it - nodes.begin()) + 1;  // augmented index
  const std::size_t start = std::min(upper >= 2 ? upper - 2 : 0, n + 1 - 4);
  double xs[4];
  double ys[4];
  for (std::size_t a = 0; a < 4; ++a) {
    const std::size_t j = start + a;
    xs[a] = j == 0 ? 0.0 : nodes[j - 1];
    ys[a] = j == 0 ? f.origin_value() : f[j - 1];
  }
  return lagrange_at(xs, ys, r);
}

double relative_l2_distance(const RadialField& a, const RadialField& b) {
  const double nb = l2_norm_sq(b);
  if (!(nb > 0.0)) detail::throw_precondition("relative distance to a zero field");
  return std::sqrt(l2_norm_sq(a - b) / nb);
}

}  // namespace hartree
