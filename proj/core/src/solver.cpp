#include "hartree/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "hartree/banded.hpp"
#include "hartree/errors.hpp"

namespace hartree {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kCollapseMass = 1e-24;
constexpr int kMaxBacktracks = 40;
// Self-consistent iterations allowed without a new best residual.
constexpr std::size_t kScfPatience = 100;

// Objective increase below this is treated as rounding noise by the line searches. The
// action is a small difference of terms of the size of the mass, so the noise scales with both.
double descent_slack(double value, double mass) { return 1e-12 * (std::abs(value) + mass); }

// The reduced variable u = r chi on the interior nodes 1..n-1; u vanishes at r_max.
class Reduced {
 public:
  explicit Reduced(const RadialGrid& grid)
      : grid_(grid),
        m_(grid.size() - 1),
        r_(grid.nodes().first(m_)),
        w_(grid.weights().first(m_)),
        s0_(grid.stiffness().leading_block(m_)) {}

  std::size_t size() const { return m_; }
  std::span<const double> r() const { return r_; }
  std::span<const double> w() const { return w_; }
  const SymmetricBandMatrix& s0() const { return s0_; }

  std::vector<double> from_field(const RadialField& chi) const {
    std::vector<double> u(m_);
    for (std::size_t i = 0; i < m_; ++i) u[i] = r_[i] * chi[i];
    return u;
  }

  RadialField to_field(std::span<const double> u) const {
    std::vector<double> chi(m_ + 1, 0.0);
    for (std::size_t i = 0; i < m_; ++i) chi[i] = u[i] / r_[i];
    return RadialField(grid_, std::move(chi));
  }

  double dot_w(std::span<const double> a, std::span<const double> b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) s += w_[i] * a[i] * b[i];
    return s;
  }

  // Density a*b/r^2 of the pair of reduced functions.
  std::vector<double> density(std::span<const double> a, std::span<const double> b) const {
    std::vector<double> rho(m_);
    for (std::size_t i = 0; i < m_; ++i) rho[i] = a[i] * b[i] / (r_[i] * r_[i]);
    return rho;
  }

  double a_form(std::span<const double> ra, std::span<const double> rb) const {
    std::vector<double> ba(m_);
    double qa = 0.0;
    double qb = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      ba[i] = w_[i] * r_[i] * ra[i];
      qa += w_[i] * r_[i] * r_[i] * ra[i];
      qb += w_[i] * r_[i] * r_[i] * rb[i];
    }
    grid_.dirichlet_stiffness_factor().solve_in_place(ba);
    for (std::size_t i = 0; i < m_; ++i) s += w_[i] * r_[i] * rb[i] * ba[i];
    return kFourPi * kFourPi * s + kFourPi * kFourPi * qa * qb / grid_.r_max();
  }

  std::vector<double> potential(std::span<const double> rho) const {
    std::vector<double> b(m_);
    double q = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      b[i] = w_[i] * r_[i] * rho[i];
      q += w_[i] * r_[i] * r_[i] * rho[i];
    }
    q *= kFourPi;
    grid_.dirichlet_stiffness_factor().solve_in_place(b);
    for (std::size_t i = 0; i < m_; ++i) b[i] = (kFourPi * b[i] + q * r_[i] / grid_.r_max()) / r_[i];
    return b;
  }

  // L_omega(a, b) with omega as given.
  double l_form(std::span<const double> a, std::span<const double> b, double omega) const {
    double s = s0_.bilinear(a, b);
    for (std::size_t i = 0; i < m_; ++i) s += w_[i] * a[i] * b[i] * (omega - 1.0 / r_[i]);
    return kFourPi * s;
  }

  double mass(std::span<const double> u) const { return kFourPi * dot_w(u, u); }

  double action(std::span<const double> u, double omega) const {
    const auto rho = density(u, u);
    return 0.5 * l_form(u, u, omega) + 0.25 * a_form(rho, rho);
  }

  // W-metric gradient of the action (omega = 0 gives the energy gradient).
  std::vector<double> gradient(std::span<const double> u, double omega) const {
    const auto phi = potential(density(u, u));
    std::vector<double> g = s0_.multiply(u);
    for (std::size_t i = 0; i < m_; ++i) g[i] = g[i] / w_[i] + (omega - 1.0 / r_[i] + phi[i]) * u[i];
    return g;
  }

  double relative_residual(std::span<const double> g, std::span<const double> u) const {
    return std::sqrt(dot_w(g, g) / dot_w(u, u));
  }

  BandCholesky preconditioner(double shift) const {
    SymmetricBandMatrix p = s0_;
    std::vector<double> d(w_.begin(), w_.end());
    for (double& v : d) v *= shift;
    p.add_diagonal(d);
    return BandCholesky(p);
  }

 private:
  RadialGrid grid_;
  std::size_t m_;
  std::span<const double> r_;
  std::span<const double> w_;
  SymmetricBandMatrix s0_;
};

// Real roots of c3 t^3 + c2 t^2 + c1 t + c0 (c3 != 0), polished by Newton steps.
std::vector<double> cubic_roots(double c3, double c2, double c1, double c0) {
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<double> roots;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) - a / 3.0);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0);
  }
  for (double& t : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = ((t + a) * t + b) * t + c;
      const double df = (3.0 * t + 2.0 * a) * t + b;
      if (df == 0.0) break;
      t -= f / df;
    }
  }
  return roots;
}

// Minimiser of c1 t + c2 t^2 + c3 t^3 + c4 t^4 (c4 > 0).
double quartic_argmin(double c1, double c2, double c3, double c4) {
  const auto value = [&](double t) { return ((c4 * t + c3) * t + c2) * t * t + c1 * t; };
  double best_t = 0.0;
  double best = 0.0;
  for (double t : cubic_roots(4.0 * c4, 3.0 * c3, 2.0 * c2, c1)) {
    if (!std::isfinite(t)) continue;
    const double v = value(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

void abs_in_place(std::vector<double>& u) {
  for (double& v : u) v = std::abs(v);
}

// Replaces v by |v| unless that raises the objective. The quartic-panel discretisation has
// no discrete maximum principle, so a discrete critical point may carry sign flips in the
// far tail at rounding level; forcing |v| there would stall the descent.
template <class Objective>
void take_abs_if_no_worse(std::vector<double>& v, double& value, Objective&& objective) {
  if (std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; })) return;
  std::vector<double> a = v;
  abs_in_place(a);
  const double va = objective(a);
  if (va <= value) {
    v.swap(a);
    value = va;
  }
}

MinimizerResult finish(const Reduced& red, std::span<const double> u, double omega,
                       double residual, std::size_t iterations, SolveStatus status,
                       std::vector<IterationRecord> trace, std::vector<std::string> warnings) {
  std::vector<double> a(u.begin(), u.end());
  abs_in_place(a);
  if (red.dot_w(a, a) > 0.0) residual = std::max(residual, red.relative_residual(red.gradient(a, omega), a));
  MinimizerResult res{red.to_field(a), omega, {}, residual, iterations,
                      status == SolveStatus::converged, status, std::move(trace),
                      std::move(warnings)};
  res.report = report(res.chi, omega);
  return res;
}

std::vector<std::string> regime_warnings(double omega) {
  std::vector<std::string> w;
  if (omega >= 0.25) {
    std::ostringstream msg;
    msg << "omega = " << omega << " >= 1/4: the zero field is the minimiser";
    w.push_back(msg.str());
  }
  return w;
}

}  // namespace

std::string_view to_string(InitKind kind) {
  switch (kind) {
    case InitKind::gaussian_random: return "gaussian_random";
    case InitKind::scaled_e0: return "scaled_e0";
    case InitKind::custom: return "custom";
  }
  return "unknown";
}

InitKind init_kind_from_string(std::string_view s) {
  if (s == "gaussian_random" || s == "random") return InitKind::gaussian_random;
  if (s == "scaled_e0" || s == "e0") return InitKind::scaled_e0;
  if (s == "custom") return InitKind::custom;
  detail::throw_config("unknown init kind '" + std::string(s) + "'");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::collapsed: return "collapsed";
    case SolveStatus::iteration_capped: return "iteration_capped";
  }
  return "unknown";
}

double recommended_r_max(double omega) {
  if (!(omega > 0.0)) return 60.0;
  const double r = 20.0 / std::sqrt(omega);
  return std::max(60.0, 10.0 * std::ceil(r / 10.0));
}

void SolverConfig::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) detail::throw_config("omega must be positive");
  if (!(step_size > 0.0 && step_size <= 1.0)) detail::throw_config("step_size must lie in (0, 1]");
  if (!(el_tol >= 1e-12)) detail::throw_config("el_tol must be at least 1e-12");
  if (max_iters == 0) detail::throw_config("max_iters must be positive");
  if (r_max < 0.0) detail::throw_config("r_max must be non-negative (0 selects a default)");
  if (init == InitKind::custom && !initial) detail::throw_config("custom init needs a profile");
  if (!(init_scale > 0.0)) detail::throw_config("init_scale must be positive");
}

double SolverConfig::effective_r_max() const {
  return r_max > 0.0 ? r_max : recommended_r_max(omega);
}

RadialGrid SolverConfig::make_grid() const {
  if (initial && init == InitKind::custom) {
    const auto& g = initial->grid();
    if (g.size() == n && g.r_max() == effective_r_max()) return g;
  }
  return build_grid(n, effective_r_max());
}

RadialField initial_profile(const SolverConfig& config, const RadialGrid& grid) {
  switch (config.init) {
    case InitKind::custom: {
      if (!config.initial) detail::throw_config("custom init needs a profile");
      if (!config.initial->grid().same_as(grid))
        detail::throw_precondition("custom initial profile must live on the solver grid");
      return *config.initial;
    }
    case InitKind::scaled_e0: {
      const double s = config.init_scale;
      return RadialField::sample(grid, [s](double r) { return s * std::exp(-0.5 * r); });
    }
    case InitKind::gaussian_random:
      break;
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> amp(0.05, 0.5);
  std::uniform_real_distribution<double> centre(0.0, 4.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  const double d = amp(rng);
  const double r0 = centre(rng);
  const double s = width(rng);
  return RadialField::sample(grid, [=](double r) {
    const double x = (r - r0) / s;
    return d * std::exp(-x * x);
  });
}

double el_residual(const RadialField& chi, double omega) {
  const Reduced red(chi.grid());
  const auto u = red.from_field(chi);
  const auto g = red.gradient(u, omega);
  const double uu = red.dot_w(u, u);
  if (uu == 0.0) return 0.0;
  return std::sqrt(red.dot_w(g, g) / uu);
}

MinimizerResult minimize_action(const SolverConfig& config) {
  config.validate();
  const RadialGrid grid = config.make_grid();
  const Reduced red(grid);
  const double omega = config.omega;
  std::vector<std::string> warnings = regime_warnings(omega);
  std::vector<double> u = red.from_field(initial_profile(config, grid));
  abs_in_place(u);
  const double initial_mass = red.mass(u);
  std::vector<IterationRecord> trace;
  if (!(initial_mass > kCollapseMass)) {
    warnings.emplace_back("initial field is zero, a stationary point of the action");
    return finish(red, u, omega, 0.0, 0, SolveStatus::collapsed, std::move(trace),
                  std::move(warnings));
  }

  const BandCholesky precond = red.preconditioner(omega);
  double s_cur = red.action(u, omega);
  double residual = std::numeric_limits<double>::infinity();
  const std::size_t m = red.size();
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    const std::vector<double> g = red.gradient(u, omega);
    residual = red.relative_residual(g, u);
    trace.push_back({it, s_cur, residual});
    if (residual <= config.el_tol)
      return finish(red, u, omega, residual, it, SolveStatus::converged, std::move(trace),
                    std::move(warnings));

    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = -red.w()[i] * g[i];
    precond.solve_in_place(d);
    for (double& v : d) v *= config.step_size;

    // S(u + t d) is a quartic polynomial in t.
    const auto ru = red.density(u, u);
    const auto rud = red.density(u, d);
    const auto rd = red.density(d, d);
    const double lud = red.l_form(u, d, omega);
    const double ldd = red.l_form(d, d, omega);
    const double a1 = red.a_form(ru, rud);
    const double a2 = red.a_form(ru, rd);
    const double a3 = red.a_form(rud, rud);
    const double a4 = red.a_form(rud, rd);
    const double a5 = red.a_form(rd, rd);
    double t = 1.0;
    if (a5 > 0.0) t = quartic_argmin(lud + a1, 0.5 * ldd + 0.5 * a2 + a3, a4, 0.25 * a5);
    if (t <= 0.0) t = 1.0;

    std::vector<double> trial(m);
    double s_new = s_cur;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = u[i] + t * d[i];
      s_new = red.action(trial, omega);
      if (s_new <= s_cur + descent_slack(s_cur, red.mass(u))) {
        accepted = true;
        break;
      }
    }
    if (accepted) take_abs_if_no_worse(trial, s_new, [&](std::span<const double> v) {
      return red.action(v, omega);
    });
    if (!accepted) {
      warnings.emplace_back("line search stalled");
      return finish(red, u, omega, residual, it, SolveStatus::iteration_capped, std::move(trace),
                    std::move(warnings));
    }
    u.swap(trial);
    s_cur = s_new;
    if (red.mass(u) < kCollapseMass * std::max(1.0, initial_mass)) {
      warnings.emplace_back("iterate collapsed to the zero field");
      return finish(red, u, omega, 0.0, it + 1, SolveStatus::collapsed, std::move(trace),
                    std::move(warnings));
    }
  }
  const std::vector<double> g = red.gradient(u, omega);
  residual = red.relative_residual(g, u);
  return finish(red, u, omega, residual, config.max_iters, SolveStatus::iteration_capped,
                std::move(trace), std::move(warnings));
}

MinimizerResult scf_fixed_point(const SolverConfig& config) {
  config.validate();
  const RadialGrid grid = config.make_grid();
  const Reduced red(grid);
  const double omega = config.omega;
  const double alpha = config.step_size;
  const std::size_t m = red.size();
  const auto r = red.r();
  const auto w = red.w();
  std::vector<std::string> warnings = regime_warnings(omega);
  std::vector<IterationRecord> trace;

  std::vector<double> u = red.from_field(initial_profile(config, grid));
  abs_in_place(u);
  double mass = red.mass(u);
  if (!(mass > kCollapseMass)) {
    warnings.emplace_back("initial field is zero, a stationary point of the action");
    return finish(red, u, omega, 0.0, 0, SolveStatus::collapsed, std::move(trace),
                  std::move(warnings));
  }
  std::vector<double> phi = red.potential(red.density(u, u));

  // Kinetic part W^{-1/2} S0 W^{-1/2}; the potential is added on the diagonal.
  SymmetricBandMatrix kinetic(m, red.s0().bandwidth());
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t last = std::min(m - 1, j + kinetic.bandwidth());
    for (std::size_t i = j; i <= last; ++i)
      kinetic.lower(i, j) = red.s0().lower(i, j) / std::sqrt(w[i] * w[j]);
  }

  double residual = std::numeric_limits<double>::infinity();
  double best_residual = residual;
  std::size_t best_iteration = 0;
  std::vector<double> diag(m);
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    SymmetricBandMatrix h = kinetic;
    for (std::size_t i = 0; i < m; ++i) diag[i] = phi[i] - 1.0 / r[i];
    h.add_diagonal(diag);
    const double lambda = smallest_eigenvalues(h, 1).at(0);
    if (lambda >= 0.0) {
      // The frozen repulsion is too strong to bind; restart from a lighter state.
      mass *= 0.25;
      if (mass < kCollapseMass) {
        warnings.emplace_back("frozen potential has no bound state; iteration collapsed");
        std::fill(u.begin(), u.end(), 0.0);
        return finish(red, u, omega, 0.0, it, SolveStatus::collapsed, std::move(trace),
                      std::move(warnings));
      }
      for (double& v : u) v *= 0.5;
      phi = red.potential(red.density(u, u));
      continue;
    }
    const ShiftedBandLU lu(h, lambda);
    std::vector<double> y(m, 1.0);
    for (int k = 0; k < 3; ++k) {
      lu.solve_in_place(y);
      double nrm = 0.0;
      for (double v : y) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (double& v : y) v /= nrm;
    }
    std::vector<double> psi(m);
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      psi[i] = y[i] / std::sqrt(w[i]);
      sum += psi[i];
    }
    const double scale = (sum < 0.0 ? -1.0 : 1.0) / std::sqrt(red.mass(psi));
    for (double& v : psi) v *= scale;
    abs_in_place(psi);

    const auto rho_psi = red.density(psi, psi);
    const double a = red.a_form(rho_psi, rho_psi);
    mass = std::max(mass + (-omega - lambda) / (alpha * a), 0.5 * mass);
    const double amp = std::sqrt(mass);
    for (std::size_t i = 0; i < m; ++i) u[i] = amp * psi[i];

    const auto g = red.gradient(u, omega);
    residual = red.relative_residual(g, u);
    trace.push_back({it, red.action(u, omega), residual});
    if (residual <= config.el_tol)
      return finish(red, u, omega, residual, it + 1, SolveStatus::converged, std::move(trace),
                    std::move(warnings));
    if (residual < best_residual) {
      best_residual = residual;
      best_iteration = it;
    } else if (it - best_iteration > kScfPatience) {
      warnings.emplace_back("self-consistent iteration is oscillating; try a smaller step_size");
      return finish(red, u, omega, residual, it + 1, SolveStatus::iteration_capped,
                    std::move(trace), std::move(warnings));
    }
    if (mass < kCollapseMass) {
      warnings.emplace_back("mass collapsed to zero");
      return finish(red, u, omega, residual, it + 1, SolveStatus::collapsed, std::move(trace),
                    std::move(warnings));
    }
    const auto phi_new = red.potential(red.density(u, u));
    for (std::size_t i = 0; i < m; ++i) phi[i] = (1.0 - alpha) * phi[i] + alpha * phi_new[i];
  }
  warnings.emplace_back("self-consistent iteration did not converge; try a smaller step_size");
  return finish(red, u, omega, residual, config.max_iters, SolveStatus::iteration_capped,
                std::move(trace), std::move(warnings));
}

MinimizerResult minimize_energy_constrained(double mass, const SolverConfig& config) {
  if (!(mass > 0.0) || !std::isfinite(mass)) detail::throw_config("mass must be positive");
  config.validate();
  const RadialGrid grid = config.make_grid();
  const Reduced red(grid);
  const std::size_t m = red.size();
  std::vector<std::string> warnings;
  std::vector<IterationRecord> trace;

  std::vector<double> u = red.from_field(initial_profile(config, grid));
  abs_in_place(u);
  const double m0 = red.mass(u);
  if (!(m0 > kCollapseMass)) detail::throw_config("constrained minimisation needs a nonzero start");
  const auto renormalise = [&](std::vector<double>& v) {
    const double s = std::sqrt(mass / red.mass(v));
    for (double& x : v) x *= s;
  };
  renormalise(u);
  const auto energy = [&](std::span<const double> v) { return red.action(v, 0.0); };

  double e_cur = energy(u);
  double multiplier = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> trial(m);
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    std::vector<double> g = red.gradient(u, 0.0);
    multiplier = -red.dot_w(g, u) / red.dot_w(u, u);
    for (std::size_t i = 0; i < m; ++i) g[i] += multiplier * u[i];
    residual = red.relative_residual(g, u);
    trace.push_back({it, e_cur, residual});
    if (residual <= config.el_tol) {
      auto res = finish(red, u, multiplier, residual, it, SolveStatus::converged,
                        std::move(trace), std::move(warnings));
      return res;
    }
    const BandCholesky precond = red.preconditioner(std::max(multiplier, 1e-3));
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = -red.w()[i] * g[i];
    precond.solve_in_place(d);

    double t = config.step_size;
    bool accepted = false;
    double e_new = e_cur;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = std::abs(u[i] + t * d[i]);
      renormalise(trial);
      e_new = energy(trial);
      if (e_new <= e_cur + descent_slack(e_cur, mass)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      warnings.emplace_back("line search stalled");
      return finish(red, u, multiplier, residual, it, SolveStatus::iteration_capped,
                    std::move(trace), std::move(warnings));
    }
    u.swap(trial);
    e_cur = e_new;
  }
  return finish(red, u, multiplier, residual, config.max_iters, SolveStatus::iteration_capped,
                std::move(trace), std::move(warnings));
}

MassResult n_of_omega(double omega, const SolverConfig& config) {
  SolverConfig c = config;
  c.omega = omega;
  MinimizerResult res = minimize_action(c);
  if (!(omega > 0.0625 && omega < 0.25)) {
    std::ostringstream msg;
    msg << "omega = " << omega << " lies outside (1/16, 1/4), where N(omega) is not known to be "
        << "well defined";
    res.warnings.push_back(msg.str());
  }
  if (!res.converged) {
    throw NumericalError("n_of_omega: solver " + std::string(to_string(res.status)) +
                         " at omega = " + std::to_string(omega));
  }
  const double mass = res.report.l2_sq;
  return {mass, std::move(res)};
}

UniquenessReport multistart_uniqueness(double omega, std::size_t n_starts, std::uint64_t seed,
                                       const SolverConfig& base) {
  constexpr double kEdge = 1e-9;
  if (!(omega > 0.0625 + kEdge && omega < 0.25 - kEdge))
    detail::throw_config("uniqueness experiments need omega strictly inside (1/16, 1/4)");
  if (n_starts == 0) detail::throw_config("n_starts must be positive");
  UniquenessReport rep;
  rep.omega = omega;
  for (std::size_t k = 0; k < n_starts; ++k) {
    SolverConfig c = base;
    c.omega = omega;
    c.init = InitKind::gaussian_random;
    c.seed = seed + k;
    MinimizerResult res = minimize_action(c);
    rep.starts.push_back({c.seed, res.converged, res.status, res.iterations, res.report.action,
                          res.report.l2_sq, res.el_residual});
    if (res.converged) rep.profiles.push_back(std::move(res.chi));
  }
  rep.converged_starts = rep.profiles.size();
  for (std::size_t i = 0; i < rep.profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.profiles.size(); ++j) {
      const double ni = std::sqrt(l2_norm_sq(rep.profiles[i]));
      const double nj = std::sqrt(l2_norm_sq(rep.profiles[j]));
      const double dist =
          std::sqrt(l2_norm_sq(rep.profiles[i] - rep.profiles[j])) / std::max(ni, nj);
      rep.max_pairwise_distance = std::max(rep.max_pairwise_distance, dist);
    }
  }
  return rep;
}

}  // namespace hartree
