#include "hartree/radial_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hartree/errors.hpp"

namespace hartree {

struct RadialGrid::Data {
  std::size_t n = 0;
  double r_max = 0.0;
  SpacingKind kind = SpacingKind::uniform;
  double h = 0.0;  // uniform spacing, or the log step for log grids
  std::vector<double> nodes;
  std::vector<double> weights;
  double origin_weight = 0.0;
  SymmetricBandMatrix stiffness;
  BandCholesky dirichlet;
};

namespace {

constexpr std::size_t kP = RadialGrid::kPanelIntervals;

// Lagrange basis on the integer nodes 0..m, evaluated at t.
double lagrange(std::size_t m, std::size_t a, double t) {
  double v = 1.0;
  for (std::size_t j = 0; j <= m; ++j) {
    if (j == a) continue;
    v *= (t - static_cast<double>(j)) / (static_cast<double>(a) - static_cast<double>(j));
  }
  return v;
}

double lagrange_derivative(std::size_t m, std::size_t a, double t) {
  double s = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    if (k == a) continue;
    double p = 1.0 / (static_cast<double>(a) - static_cast<double>(k));
    for (std::size_t j = 0; j <= m; ++j) {
      if (j == a || j == k) continue;
      p *= (t - static_cast<double>(j)) / (static_cast<double>(a) - static_cast<double>(j));
    }
    s += p;
  }
  return s;
}

// Five-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussX = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                           0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussW = {0.2369268850561891, 0.4786286704993665,
                                           0.5688888888888889, 0.4786286704993665,
                                           0.2369268850561891};

// int_lo^hi f(t) dt, exact for polynomials of degree <= 9.
template <class F>
double gauss(F&& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t q = 0; q < kGaussX.size(); ++q) s += kGaussW[q] * f(mid + half * kGaussX[q]);
  return s * half;
}

using PanelMatrix = std::array<std::array<double, kP + 1>, kP + 1>;

// Reference panel stiffness, int_0^4 L_a' L_b' dt (unit spacing).
const PanelMatrix& panel_stiffness() {
  static const PanelMatrix k = [] {
    PanelMatrix m{};
    for (std::size_t a = 0; a <= kP; ++a)
      for (std::size_t b = 0; b <= kP; ++b)
        m[a][b] = gauss(
            [&](double t) { return lagrange_derivative(kP, a, t) * lagrange_derivative(kP, b, t); },
            0.0, static_cast<double>(kP));
    return m;
  }();
  return k;
}

// partial[k][a] = int_0^k L_a(t) dt on the quartic panel, k = 0..4.
const PanelMatrix& panel_partial_integrals() {
  static const PanelMatrix p = [] {
    PanelMatrix m{};
    for (std::size_t k = 1; k <= kP; ++k)
      for (std::size_t a = 0; a <= kP; ++a)
        m[k][a] = gauss([&](double t) { return lagrange(kP, a, t); }, 0.0, static_cast<double>(k));
    return m;
  }();
  return p;
}

std::shared_ptr<RadialGrid::Data> make_uniform(std::size_t n, double r_max) {
  auto d = std::make_shared<RadialGrid::Data>();
  d->n = n;
  d->r_max = r_max;
  d->kind = SpacingKind::uniform;
  d->h = r_max / static_cast<double>(n);
  const double h = d->h;
  d->nodes.resize(n);
  d->weights.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    d->nodes[i - 1] = static_cast<double>(i) * h;
    double w = 0.0;
    switch (i % kP) {
      case 0: w = (i == n) ? 14.0 : 28.0; break;
      case 2: w = 24.0; break;
      default: w = 64.0; break;
    }
    d->weights[i - 1] = w * h / 45.0;
  }
  d->origin_weight = 14.0 * h / 45.0;

  // Assemble over global nodes 0..n, then drop node 0 (u(0) = 0).
  const PanelMatrix& ke = panel_stiffness();
  SymmetricBandMatrix s(n, kP);
  for (std::size_t p = 0; p < n / kP; ++p) {
    for (std::size_t a = 0; a <= kP; ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        const std::size_t gi = p * kP + a;
        const std::size_t gj = p * kP + b;
        if (gj == 0) continue;
        s.lower(gi - 1, gj - 1) += ke[a][b] / h;
      }
    }
  }
  d->dirichlet = BandCholesky(s.leading_block(n - 1));
  d->stiffness = std::move(s);
  return d;
}

// Sixth-order Gregory end weights for the trapezoid rule.
constexpr std::array<double, 5> kGregory = {95.0 / 288.0, 317.0 / 240.0, 23.0 / 30.0,
                                            793.0 / 720.0, 157.0 / 160.0};

std::shared_ptr<RadialGrid::Data> make_log(std::size_t n, double r_max) {
  auto d = std::make_shared<RadialGrid::Data>();
  d->n = n;
  d->r_max = r_max;
  d->kind = SpacingKind::log_uniform;
  const double r1 = r_max / static_cast<double>(n * n);
  const double dt = std::log(r_max / r1) / static_cast<double>(n - 1);
  d->h = dt;
  d->nodes.resize(n);
  d->weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i + 1 == n) ? r_max : r1 * std::exp(dt * static_cast<double>(i));
    double g = 1.0;
    if (i < kGregory.size()) g = kGregory[i];
    if (n - 1 - i < kGregory.size()) g = kGregory[n - 1 - i];
    d->nodes[i] = r;
    d->weights[i] = g * dt * r;
  }
  // Trapezoid on [0, r_1].
  d->weights[0] += 0.5 * r1;
  d->origin_weight = 0.5 * r1;
  return d;
}

}  // namespace

std::string_view to_string(SpacingKind kind) {
  return kind == SpacingKind::uniform ? "uniform" : "log_uniform";
}

SpacingKind spacing_kind_from_string(std::string_view s) {
  if (s == "uniform") return SpacingKind::uniform;
  if (s == "log_uniform" || s == "log") return SpacingKind::log_uniform;
  detail::throw_config("unknown grid spacing '" + std::string(s) + "'");
}

std::size_t RadialGrid::size() const { return data_->n; }
double RadialGrid::r_max() const { return data_->r_max; }
SpacingKind RadialGrid::kind() const { return data_->kind; }
double RadialGrid::spacing() const { return data_->h; }
std::span<const double> RadialGrid::nodes() const { return data_->nodes; }
std::span<const double> RadialGrid::weights() const { return data_->weights; }
double RadialGrid::origin_weight() const { return data_->origin_weight; }

const SymmetricBandMatrix& RadialGrid::stiffness() const {
  if (!is_uniform()) detail::throw_precondition("stiffness matrix requires a uniform grid");
  return data_->stiffness;
}

double RadialGrid::stiffness_form(std::span<const double> u, std::span<const double> v) const {
  if (!is_uniform()) detail::throw_precondition("stiffness matrix requires a uniform grid");
  const std::size_t n = data_->n;
  if (u.size() != n || v.size() != n) detail::throw_precondition("stiffness_form: size mismatch");
  // Panel matrices annihilate constants, so subtracting the first nodal value changes nothing
  // in exact arithmetic and keeps the summands at the size of the result.
  const PanelMatrix& ke = panel_stiffness();
  double total = 0.0;
  for (std::size_t p = 0; p < n / kP; ++p) {
    const double u0 = p == 0 ? 0.0 : u[p * kP - 1];
    const double v0 = p == 0 ? 0.0 : v[p * kP - 1];
    std::array<double, kP + 1> du{};
    std::array<double, kP + 1> dv{};
    for (std::size_t a = 1; a <= kP; ++a) {
      du[a] = u[p * kP + a - 1] - u0;
      dv[a] = v[p * kP + a - 1] - v0;
    }
    double s = 0.0;
    for (std::size_t a = 1; a <= kP; ++a) {
      double row = 0.0;
      for (std::size_t b = 1; b <= kP; ++b) row += ke[a][b] * dv[b];
      s += du[a] * row;
    }
    total += s;
  }
  return total / data_->h;
}

const BandCholesky& RadialGrid::dirichlet_stiffness_factor() const {
  if (!is_uniform()) detail::throw_precondition("stiffness matrix requires a uniform grid");
  return data_->dirichlet;
}

std::vector<double> RadialGrid::cumulative_integral(std::span<const double> g, double g0) const {
  const std::size_t n = size();
  if (g.size() != n) detail::throw_precondition("cumulative_integral: size mismatch");
  std::vector<double> out(n);
  if (is_uniform()) {
    const PanelMatrix& part = panel_partial_integrals();
    const double h = data_->h;
    double base = 0.0;
    for (std::size_t p = 0; p < n / kP; ++p) {
      std::array<double, kP + 1> v{};
      v[0] = (p == 0) ? g0 : g[p * kP - 1];
      for (std::size_t a = 1; a <= kP; ++a) v[a] = g[p * kP + a - 1];
      for (std::size_t k = 1; k <= kP; ++k) {
        double s = 0.0;
        for (std::size_t a = 0; a <= kP; ++a) s += part[k][a] * v[a];
        out[p * kP + k - 1] = base + h * s;
      }
      base = out[p * kP + kP - 1];
    }
    return out;
  }
  // Log grid: cubic interpolation in t = ln r of g*r, integrated per interval.
  const auto r = nodes();
  const double dt = data_->h;
  out[0] = 0.5 * r[0] * (g0 + g[0]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t s = std::min(i > 0 ? i - 1 : 0, n - 4);
    const double lo = static_cast<double>(i - s);
    double acc = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
      const double c = gauss([&](double t) { return lagrange(3, a, t); }, lo, lo + 1.0);
      acc += c * g[s + a] * r[s + a];
    }
    out[i + 1] = out[i] + dt * acc;
  }
  return out;
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  if (data_ == other.data_) return true;
  return data_->n == other.data_->n && data_->r_max == other.data_->r_max &&
         data_->kind == other.data_->kind;
}

RadialGrid build_grid(std::size_t n, double r_max, SpacingKind kind) {
  if (n < RadialGrid::kMinNodes)
    detail::throw_config("grid needs at least " + std::to_string(RadialGrid::kMinNodes) +
                         " nodes, got " + std::to_string(n));
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    detail::throw_config("grid r_max must be positive and finite");
  if (kind == SpacingKind::uniform) {
    if (n % RadialGrid::kPanelIntervals != 0)
      detail::throw_config("uniform grid size must be a multiple of 4, got " + std::to_string(n));
    return RadialGrid(make_uniform(n, r_max));
  }
  return RadialGrid(make_log(n, r_max));
}

RadialGrid default_grid() { return build_grid(2048, 60.0); }

}  // namespace hartree
