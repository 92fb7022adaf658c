#include "hartree/maxprinciple.hpp"

#include <algorithm>
#include <cmath>

#include "detail/fd_weights.hpp"
#include "hartree/errors.hpp"

namespace hartree {

namespace {

constexpr double kSixteenth = 1.0 / 16.0;
constexpr double kQuarter = 0.25;
constexpr double kThresholdGuard = 1e-12;
constexpr double kConditioningGuard = 1e-6;
constexpr double kHFloor = -1e-10;

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::above_quarter:
      return "above_quarter";
    case Regime::between_sixteenth_and_quarter:
      return "between_sixteenth_and_quarter";
    case Regime::below_sixteenth:
      return "below_sixteenth";
    case Regime::exactly_quarter:
      return "exactly_quarter";
  }
  return "unknown";
}

double TestFunctionSpec::phi(double r) const { return std::exp(-beta * r) * q(r); }

TestFunctionSpec test_function_spec(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    detail::throw_config("maxprinciple: omega must be positive");
  if (std::abs(omega - kSixteenth) <= kThresholdGuard)
    detail::throw_config("maxprinciple: omega = 1/16 is a regime boundary where the comparison "
                         "function degenerates");
  TestFunctionSpec s;
  s.omega = omega;
  s.beta = std::sqrt(omega);
  if (std::abs(omega - kQuarter) <= kThresholdGuard) {
    s.regime = Regime::exactly_quarter;
    s.beta = 0.5;
    s.c = 1.0;
    return s;
  }
  const double beta = s.beta;
  if (omega < kSixteenth) {
    s.regime = Regime::below_sixteenth;
    s.b = -1.0;
    s.c = 1.0 / (0.5 - beta);
  } else {
    s.regime = omega > kQuarter ? Regime::above_quarter : Regime::between_sixteenth_and_quarter;
    s.a = 1.0;
    s.b = 6.0 / (4.0 * beta - 1.0);
    s.c = 12.0 / ((2.0 * beta - 1.0) * (4.0 * beta - 1.0));
  }
  if (std::abs(4.0 * beta - 1.0) < kConditioningGuard)
    s.warnings.push_back("omega is within 1e-6 of 1/16 in 4 beta - 1; coefficients are ill-conditioned");
  if (std::abs(2.0 * beta - 1.0) < kConditioningGuard)
    s.warnings.push_back("omega is within 1e-6 of 1/4 in 2 beta - 1; coefficients are ill-conditioned");
  return s;
}

TestFunction build_test_function(double omega, const RadialGrid& grid) {
  TestFunctionSpec spec = test_function_spec(omega);
  RadialField phi = RadialField::sample(grid, [&](double r) { return spec.phi(r); });
  return {std::move(spec), std::move(phi)};
}

double closed_form_rh(const TestFunctionSpec& spec, double r) {
  switch (spec.regime) {
    case Regime::exactly_quarter:
      return 0.0;
    case Regime::below_sixteenth:
      return (1.0 - 4.0 * spec.beta) * r;
    default:
      return (6.0 * spec.beta - 1.0) * r * r;
  }
}

HResidual residual_h(const TestFunctionSpec& spec, const RadialField& phi, double tolerance) {
  const auto r = phi.grid().nodes();
  const std::size_t n = r.size();
  constexpr std::size_t kStencil = 9;
  if (n + 1 < kStencil) detail::throw_precondition("residual_h: grid too small for the stencil");
  // Augmented nodes with u(0) = 0.
  std::vector<double> x(n + 1, 0.0);
  std::vector<double> u(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    x[i + 1] = r[i];
    u[i + 1] = r[i] * phi[i];
  }
  std::vector<double> h(n);
  double worst = 0.0;
  double scale = 0.0;
  double h_min = 0.0;
  for (std::size_t a = 1; a <= n; ++a) {
    const std::size_t start = std::min(a >= kStencil / 2 ? a - kStencil / 2 : 0, n + 1 - kStencil);
    const auto xs = std::span<const double>(x).subspan(start, kStencil);
    const auto w = detail::fd_weights(x[a], xs, 2);
    double upp = 0.0;
    for (std::size_t j = 0; j < kStencil; ++j) upp += w[2][j] * u[start + j];
    const double ra = x[a];
    const double rh = -upp - u[a] / ra + spec.omega * u[a];
    h[a - 1] = rh / ra;
    const double grow = std::exp(spec.beta * ra);
    worst = std::max(worst, std::abs(grow * rh - closed_form_rh(spec, ra)));
    scale = std::max(scale, grow * (std::abs(upp) + std::abs(u[a]) / ra + spec.omega * std::abs(u[a])));
    h_min = a == 1 ? h[0] : std::min(h_min, h[a - 1]);
  }
  HResidual out{{}, h_min, h_min >= kHFloor, RadialField(phi.grid(), std::move(h))};
  out.closed_form.name = "maxprinciple_rh";
  out.closed_form.abs_residual = worst;
  out.closed_form.rel_residual = worst / std::max(scale, 1e-300);
  out.closed_form.tolerance = tolerance;
  out.closed_form.holds = out.closed_form.rel_residual <= tolerance;
  return out;
}

QSign q_sign_analysis(const TestFunctionSpec& spec) {
  QSign out;
  if (spec.a == 0.0) {
    if (spec.b == 0.0) {
      out.always_positive = spec.c > 0.0;
      return out;
    }
    const double root = -spec.c / spec.b;
    if (root > 0.0) out.first_root = root;
    out.always_positive = !out.first_root && spec.c > 0.0;
    return out;
  }
  const double disc = spec.b * spec.b - 4.0 * spec.a * spec.c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // Stable pair of roots.
    const double t = -0.5 * (spec.b + std::copysign(sq, spec.b));
    double r1 = t / spec.a;
    double r2 = t != 0.0 ? spec.c / t : r1;
    if (r1 > r2) std::swap(r1, r2);
    if (r1 > 0.0)
      out.first_root = r1;
    else if (r2 > 0.0)
      out.first_root = r2;
  }
  out.always_positive = !out.first_root && spec.c > 0.0;
  return out;
}

std::vector<SweepRow> maxprinciple_sweep(double lo, double hi, std::size_t count,
                                         const RadialGrid& grid) {
  if (count < 2 || !(hi > lo)) detail::throw_config("maxprinciple sweep needs lo < hi and count >= 2");
  std::vector<SweepRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double omega = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    TestFunction tf = build_test_function(omega, grid);
    const HResidual res = residual_h(tf.spec, tf.phi);
    SweepRow row;
    row.sign = q_sign_analysis(tf.spec);
    row.residual = res.closed_form.rel_residual;
    row.h_min = res.h_min;
    const bool at_or_above = tf.spec.regime == Regime::above_quarter ||
                             tf.spec.regime == Regime::exactly_quarter;
    row.consistent = res.closed_form.holds && res.h_nonnegative &&
                     (at_or_above ? row.sign.always_positive : row.sign.first_root.has_value());
    row.spec = std::move(tf.spec);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hartree
