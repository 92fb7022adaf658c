// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hartree/cartesian3d.hpp"
#include "hartree/errors.hpp"
#include "hartree/functionals.hpp"
#include "hartree/maxprinciple.hpp"
#include "hartree/solver.hpp"
#include "hartree/spectral.hpp"
#include "hartree/verify.hpp"

namespace {

using namespace hartree;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

SolverConfig config_for(double omega) {
  SolverConfig c;
  c.omega = omega;
  return c;
}

// 1
Outcome hydrogen() {
  const auto grid = build_grid(4096, 120.0);
  std::vector<EigenPair> pairs;
  try {
    pairs = hydrogen_eigenpairs(grid, 2);
  } catch (const GridTooSmall& e) {
    return {false, e.what()};
  }
  std::ostringstream d;
  bool ok = pairs.size() == 3;
  for (const auto& p : pairs) {
    const double rel = std::abs(p.omega - hydrogen_level(p.index)) / hydrogen_level(p.index);
    ok = ok && rel <= 1e-5;
    d << "w" << p.index << " rel " << sci(rel) << ", ";
  }
  const auto exact = RadialField::sample(grid, [](double r) { return std::exp(-0.5 * r); });
  const double c = l2_inner(pairs.front().e, exact) / l2_norm_sq(exact);
  const double dist = relative_l2_distance(pairs.front().e, c * exact);
  ok = ok && dist <= 1e-4;
  d << "e0 relL2 " << sci(dist);
  return {ok, d.str()};
}

// 2
Outcome existence_and_sign() {
  std::ostringstream d;
  bool ok = true;
  for (double w : {0.05, 0.1, 0.2}) {
    const auto r = minimize_action(config_for(w));
    const double s = r.report.action;
    ok = ok && r.converged && s < 0.0;
    d << "w=" << w << " S=" << sci(s);
    for (double delta : {0.05, 0.1}) {
      const double d2 = delta * delta;
      const double trial = 0.5 * ((w - 0.25) * 8.0 * kPi * d2 + 10.0 * kPi * kPi * d2 * d2);
      // The same bound with 20 pi^2 is weaker, so it holds whenever the one above does.
      const double trial_loose = 0.5 * ((w - 0.25) * 8.0 * kPi * d2 + 20.0 * kPi * kPi * d2 * d2);
      const auto probe = RadialField::sample(r.chi.grid(), [delta](double x) { return delta * std::exp(-0.5 * x); });
      const double numeric = report(probe, w).action;
      ok = ok && s <= trial + 1e-10 * std::abs(trial) && s <= trial_loose + 1e-10 * std::abs(trial_loose);
      ok = ok && std::abs(numeric - trial) <= 1e-8 * std::abs(trial);
    }
    d << (w < 0.2 ? "; " : "");
  }
  return {ok, d.str()};
}

// 3
Outcome pohozaev() {
  std::ostringstream d;
  bool ok = true;
  for (double w : {0.05, 0.1, 0.2}) {
    double previous = INFINITY;
    d << "w=" << w << ":";
    for (std::size_t n : {256u, 512u, 1024u, 2048u}) {
      SolverConfig c = config_for(w);
      c.n = n;
      c.el_tol = 1e-10;
      c.max_iters = 5000;
      const auto r = minimize_action(c);
      const auto p = pohozaev_residuals(r.chi, w);
      const double worst = std::max(p.mass.rel_residual, p.dilation.rel_residual);
      ok = ok && r.converged && p.mass.holds && p.dilation.holds && worst < previous;
      previous = worst;
      d << " " << sci(worst);
    }
    d << "; ";
  }
  const auto chi = RadialField::sample(default_grid(), [](double r) { return std::exp(-0.5 * r); });
  const double probe = pohozaev_residuals(chi, 0.2).mass.abs_residual;
  const double analytic = std::abs(2.0 * kPi + 1.6 * kPi - 4.0 * kPi + 20.0 * kPi * kPi);
  ok = ok && std::abs(probe - analytic) <= 1e-6;
  d << "probe off by " << sci(std::abs(probe - analytic));
  return {ok, d.str()};
}

// 4
Outcome critical_point_relation() {
  std::ostringstream d;
  bool ok = true;
  for (double w : {0.1, 0.2}) {
    const auto r = minimize_action(config_for(w));
    if (!r.converged) return {false, "minimiser did not converge"};
    const auto rel = action_a_relation(r);
    ok = ok && rel.rel_residual <= 1e-3;
    d << "w=" << w << " rel " << sci(rel.rel_residual) << (w < 0.2 ? ", " : "");
  }
  return {ok, d.str()};
}

// 5
Outcome clarkson() {
  const auto radial = clarkson_batch_radial(default_grid(), 500, 1, 0.2);
  const auto cube = clarkson_batch_3d(CartesianGrid{16, 10.0}, 500, 1, 0.2);
  const auto q = quartic_bound_scan(10001);
  std::ostringstream d;
  bool ok = true;
  for (const auto* b : {&radial.l_identity, &radial.a_inequality, &radial.a_expansion, &radial.ii_identity,
                        &radial.ii_inequality, &cube.l_identity, &cube.a_inequality, &cube.a_expansion,
                        &cube.ii_identity, &cube.ii_inequality})
    ok = ok && b->holds() && b->cases == 500;
  ok = ok && std::abs(q.max_value - 1.0) <= 1e-12 && std::abs(q.argmax_mu_sq - 0.25) <= 1e-12;
  d << "L worst " << sci(std::max(radial.l_identity.worst, cube.l_identity.worst)) << ", A worst "
    << sci(std::max(radial.a_inequality.worst, cube.a_inequality.worst)) << ", II worst "
    << sci(std::max(radial.ii_inequality.worst, cube.ii_inequality.worst)) << ", quartic max " << q.max_value
    << " at mu^2=" << q.argmax_mu_sq;
  return {ok, d.str()};
}

// 6
Outcome max_principle() {
  const auto rows = maxprinciple_sweep(0.05, 0.6, 50);
  bool ok = rows.size() == 50;
  double worst = 0.0;
  std::size_t above = 0;
  std::size_t below = 0;
  for (const auto& r : rows) {
    const double w = r.spec.omega;
    if (w > 0.25) {
      ok = ok && r.sign.always_positive;
      ++above;
    } else {
      ok = ok && !r.sign.always_positive && r.sign.first_root.has_value();
      ++below;
    }
    ok = ok && r.consistent && r.residual <= 1e-6;
    worst = std::max(worst, r.residual);
  }
  const auto quarter = build_test_function(0.25);
  const auto h = residual_h(quarter.spec, quarter.phi);
  ok = ok && h.closed_form.holds && h.closed_form.rel_residual <= 1e-6;
  std::ostringstream d;
  d << above << " above 1/4 positive, " << below << " below with a root, worst rh residual " << sci(worst)
    << ", h at 1/4 " << sci(h.closed_form.rel_residual);
  return {ok, d.str()};
}

// 7
Outcome uniqueness() {
  const auto u = multistart_uniqueness(0.2, 10, 0, config_for(0.2));
  const auto g = minimize_action(config_for(0.2));
  const auto s = scf_fixed_point(config_for(0.2));
  const double gs = relative_l2_distance(s.chi, g.chi);
  const bool ok = u.converged_starts == 10 && u.max_pairwise_distance <= 1e-3 && g.converged && s.converged &&
                  gs <= 1e-4;
  std::ostringstream d;
  d << u.converged_starts << "/10 converged, max pairwise " << sci(u.max_pairwise_distance)
    << ", gradient vs scf " << sci(gs);
  return {ok, d.str()};
}

// 8
Outcome symmetry() {
  Solver3DConfig c;
  c.grid = {32, 11.0};
  c.omega = 0.2;
  const auto r3 = minimize_action_3d(c);
  const auto radial = minimize_action(config_for(0.2));
  const double dist = radial_profile_distance(r3.chi, radial.chi);
  const bool ok = r3.converged && r3.symmetry_deficit <= 5e-2 && dist <= 5e-2;
  std::ostringstream d;
  d << (r3.converged ? "converged" : "not converged") << " in " << r3.iterations << " its, deficit "
    << sci(r3.symmetry_deficit) << " (largest seen " << sci(r3.max_deficit_seen) << "), radial relL2 " << sci(dist);
  return {ok, d.str()};
}

// 9
Outcome energy_action() {
  std::ostringstream d;
  bool ok = true;
  for (double w : {0.1, 0.2}) {
    const auto free = minimize_action(config_for(w));
    const double n = free.report.l2_sq;
    const auto con = minimize_energy_constrained(n, config_for(w));
    const double s = free.report.action;
    const double rel = std::abs(s - con.report.energy - 0.5 * w * n) / std::abs(s);
    ok = ok && free.converged && con.converged && rel <= 1e-3;
    d << "w=" << w << " rel " << sci(rel) << " (multiplier " << con.omega << ")" << (w < 0.2 ? ", " : "");
  }
  return {ok, d.str()};
}

// 10
Outcome forms() {
  const auto radial = form_batch_radial(default_grid(), 200, 1);
  const auto cube = form_batch_3d(CartesianGrid{16, 10.0}, 200, 1);
  bool ok = true;
  for (const auto* b : {&radial.parallelogram, &radial.cauchy_squares, &radial.cauchy_product, &cube.parallelogram,
                        &cube.cauchy_squares, &cube.cauchy_product})
    ok = ok && b->holds() && b->cases == 200;
  const auto rho = RadialField::sample(default_grid(), [](double r) { return std::exp(-r); });
  const double rel = std::abs(hminus1_norm_sq(rho) - 5.0 * kPi) / (5.0 * kPi);
  ok = ok && rel <= 1e-6;
  std::ostringstream d;
  d << "parallelogram worst " << sci(std::max(radial.parallelogram.worst, cube.parallelogram.worst))
    << ", A(e^-r)/4pi rel " << sci(rel);
  return {ok, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "hydrogen spectrum", 30.0, hydrogen},
      {2, "existence and sign of S_min", 0.0, existence_and_sign},
      {3, "Pohozaev identities", 0.0, pohozaev},
      {4, "S = -A/4 at the minimiser", 0.0, critical_point_relation},
      {5, "Clarkson suite", 60.0, clarkson},
      {6, "maximum-principle dichotomy", 0.0, max_principle},
      {7, "uniqueness", 0.0, uniqueness},
      {8, "3D symmetry probe", 600.0, symmetry},
      {9, "energy-action connection", 0.0, energy_action},
      {10, "Coulomb form identities", 0.0, forms},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && dt > c.time_limit_s) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(static_cast<int>(c.time_limit_s)) + " s limit";
    }
    if (!out.pass) ++failures;
    std::printf("%s %2d %-30s %7.2f s  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, dt, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
