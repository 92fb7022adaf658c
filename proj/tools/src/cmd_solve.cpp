#include <cmath>
#include <iostream>
#include <limits>
#include <memory>

#include "commands.hpp"
#include "hartree/io.hpp"
#include "hartree/solver.hpp"
#include "hartree/verify.hpp"
#include "table.hpp"

namespace lab {

namespace {

struct SolveOptions {
  double omega = std::numeric_limits<double>::quiet_NaN();
  std::string method = "gradient";
  double mass = 0.0;
  std::size_t n = 2048;
  double r_max = 0.0;
  double step = 1.0;
  std::size_t max_iters = 2000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string init = "gaussian_random";
  double init_scale = 0.1;
  std::string init_profile;
};

hartree::SolverConfig make_config(const SolveOptions& o) {
  hartree::SolverConfig c;
  c.omega = o.omega;
  c.n = o.n;
  c.r_max = o.r_max;
  c.step_size = o.step;
  c.max_iters = o.max_iters;
  c.el_tol = o.tol;
  c.seed = o.seed;
  c.init = hartree::init_kind_from_string(o.init);
  c.init_scale = o.init_scale;
  if (!o.init_profile.empty()) {
    c.init = hartree::InitKind::custom;
    c.initial = hartree::io::read_radial_csv(o.init_profile, hartree::build_grid(c.n, c.effective_r_max()));
  }
  return c;
}

}  // namespace

Command register_solve(CLI::App& root) {
  auto o = std::make_shared<SolveOptions>();
  CLI::App* app = root.add_subcommand("solve", "Compute a positive minimiser of the action at fixed omega");
  app->add_option("--omega", o->omega, "Frequency omega > 0 (the minimiser is nontrivial for 1/16 < omega < 1/4)")
      ->check(CLI::PositiveNumber);
  app->add_option("--method", o->method, "gradient | scf | constrained")
      ->capture_default_str()
      ->check(CLI::IsMember({"gradient", "scf", "constrained"}));
  app->add_option("--mass", o->mass, "Target ||chi||^2 for --method constrained")->check(CLI::NonNegativeNumber);
  app->add_option("--n", o->n, "Grid nodes (multiple of 4)")->capture_default_str();
  app->add_option("--rmax", o->r_max, "Box radius; 0 picks one from omega")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  app->add_option("--step", o->step, "Step scale or SCF mixing in (0, 1]")->capture_default_str();
  app->add_option("--max-iters", o->max_iters, "Iteration cap")->capture_default_str();
  app->add_option("--tol", o->tol, "Euler-Lagrange residual tolerance")->capture_default_str();
  app->add_option("--seed", o->seed, "Seed for the random initial profile")->capture_default_str();
  app->add_option("--init", o->init, "gaussian_random | scaled_e0")
      ->capture_default_str()
      ->check(CLI::IsMember({"gaussian_random", "scaled_e0"}));
  app->add_option("--init-scale", o->init_scale, "Amplitude of the scaled_e0 start")->capture_default_str();
  app->add_option("--init-profile", o->init_profile, "CSV (r, value) start on the same grid")->check(
      CLI::ExistingFile);

  Command c;
  c.app = app;
  c.config = [o] {
    json j;
    j["omega"] = o->omega;
    j["method"] = o->method;
    j["mass"] = o->mass;
    j["n"] = o->n;
    j["rmax"] = o->r_max;
    j["step"] = o->step;
    j["max-iters"] = o->max_iters;
    j["tol"] = o->tol;
    j["seed"] = o->seed;
    j["init"] = o->init;
    j["init-scale"] = o->init_scale;
    j["init-profile"] = o->init_profile;
    return j;
  };
  c.run = [o](RunContext& ctx) {
    if (std::isnan(o->omega) && o->method != "constrained") throw UsageError("solve needs --omega");
    if (o->method == "constrained" && !(o->mass > 0.0)) throw UsageError("--method constrained needs --mass > 0");
    if (std::isnan(o->omega)) o->omega = 0.2;  // only sets the box radius for constrained runs
    const hartree::SolverConfig config = make_config(*o);
    ctx.record_seed("init", config.seed);

    hartree::MinimizerResult r = [&] {
      if (o->method == "scf") return hartree::scf_fixed_point(config);
      if (o->method == "constrained") return hartree::minimize_energy_constrained(o->mass, config);
      return hartree::minimize_action(config);
    }();
    for (const auto& w : r.warnings) {
      std::cerr << "warning: " << w << '\n';
      ctx.note(w);
    }

    hartree::io::write_radial(ctx.dir() / "chi", r.chi, "chi");
    ctx.output("chi.csv");
    ctx.output("chi.json");
    hartree::io::write_text(ctx.output("report.json"), hartree::io::to_json(r.report) + "\n");
    hartree::io::write_report_csv(ctx.output("report.csv"), r.report);

    const auto poh = hartree::pohozaev_residuals(r.chi, r.omega);
    std::vector<hartree::IdentityReport> identities{poh.mass, poh.dilation};
    if (r.converged) identities.push_back(hartree::action_a_relation(r));
    hartree::io::write_text(ctx.output("identities.json"), hartree::io::to_json(identities) + "\n");

    Table trace({"iteration", "objective", "el_residual"});
    for (const auto& t : r.trace) trace.add({std::to_string(t.iteration), num(t.objective), num(t.el_residual)});
    trace.write_csv(ctx.output("trace.csv"));

    std::cout << "status      " << hartree::to_string(r.status) << " after " << r.iterations << " iterations\n"
              << "omega       " << fixed(r.omega, 12) << '\n'
              << "action      " << fixed(r.report.action, 12) << '\n'
              << "energy      " << fixed(r.report.energy, 12) << '\n'
              << "mass        " << fixed(r.report.l2_sq, 12) << '\n'
              << "A(chi^2)    " << fixed(r.report.a_quad, 12) << '\n'
              << "EL residual " << fixed(r.el_residual, 3) << '\n';
    for (const auto& id : identities)
      std::cout << id.name << " rel " << fixed(id.rel_residual, 3) << (id.holds ? "" : "  (above tolerance)") << '\n';
    std::cout << "output: " << ctx.dir().string() << '\n';
    return r.converged ? static_cast<int>(kOk) : static_cast<int>(kNonConvergence);
  };
  return c;
}

}  // namespace lab
