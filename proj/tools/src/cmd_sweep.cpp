#include <atomic>
#include <exception>
#include <iostream>
#include <memory>
#include <thread>

#include "commands.hpp"
#include "hartree/cartesian3d.hpp"
#include "hartree/solver.hpp"
#include "hartree/verify.hpp"
#include "table.hpp"

namespace lab {

namespace {

struct SweepOptions {
  std::string what = "action";
  std::string omega;
  std::size_t starts = 10;
  std::size_t workers = 1;
  std::size_t n = 2048;
  std::size_t max_iters = 2000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t lattice_n = 32;
  double lattice_l = 11.0;
};

std::vector<std::string> header_for(const std::string& what) {
  if (what == "uniqueness")
    return {"omega", "starts", "converged_starts", "max_pairwise_distance", "min_action", "max_action", "error"};
  if (what == "symmetry3d")
    return {"omega", "lattice_n", "half_width", "status", "iterations", "symmetry_deficit", "radial_distance",
            "boundary_shell", "action", "error"};
  return {"omega", "status", "iterations", "action", "mass", "a_quad", "el_residual", "pohozaev_mass_rel",
          "pohozaev_dilation_rel", "error"};
}

hartree::SolverConfig solver_config(const SweepOptions& o, double omega) {
  hartree::SolverConfig c;
  c.omega = omega;
  c.n = o.n;
  c.max_iters = o.max_iters;
  c.el_tol = o.tol;
  c.seed = o.seed;
  return c;
}

// One row per omega; a row that throws records the message instead of aborting the sweep.
struct RowResult {
  std::vector<std::string> cells;
  bool ok = false;
};

RowResult run_row(const SweepOptions& o, double omega) {
  RowResult out;
  const std::size_t width = header_for(o.what).size();
  try {
    if (o.what == "uniqueness") {
      const auto u = hartree::multistart_uniqueness(omega, o.starts, o.seed, solver_config(o, omega));
      double lo = 0.0;
      double hi = 0.0;
      bool first = true;
      for (const auto& s : u.starts) {
        if (!s.converged) continue;
        lo = first ? s.action : std::min(lo, s.action);
        hi = first ? s.action : std::max(hi, s.action);
        first = false;
      }
      out.cells = {num(omega), std::to_string(o.starts), std::to_string(u.converged_starts),
                   num(u.max_pairwise_distance), num(lo), num(hi), ""};
      out.ok = u.converged_starts == o.starts;
    } else if (o.what == "symmetry3d") {
      const auto radial = hartree::minimize_action(solver_config(o, omega));
      hartree::Solver3DConfig c3;
      c3.grid = {o.lattice_n, o.lattice_l};
      c3.omega = omega;
      c3.seed = o.seed;
      const auto r = hartree::minimize_action_3d(c3);
      out.cells = {num(omega),
                   std::to_string(o.lattice_n),
                   num(o.lattice_l),
                   r.converged ? "converged" : "iteration_capped",
                   std::to_string(r.iterations),
                   num(r.symmetry_deficit),
                   num(hartree::radial_profile_distance(r.chi, radial.chi)),
                   num(r.chi.boundary_shell_ratio()),
                   num(r.report.action),
                   ""};
      out.ok = r.converged && radial.converged;
    } else {
      const auto r = hartree::minimize_action(solver_config(o, omega));
      const auto poh = hartree::pohozaev_residuals(r.chi, omega);
      out.cells = {num(omega),
                   std::string(hartree::to_string(r.status)),
                   std::to_string(r.iterations),
                   num(r.report.action),
                   num(r.report.l2_sq),
                   num(r.report.a_quad),
                   num(r.el_residual),
                   num(poh.mass.rel_residual),
                   num(poh.dilation.rel_residual),
                   ""};
      out.ok = r.converged;
    }
  } catch (const std::exception& e) {
    out.cells.assign(width, "");
    out.cells.front() = num(omega);
    out.cells.back() = e.what();
    out.ok = false;
  }
  return out;
}

}  // namespace

Command register_sweep(CLI::App& root) {
  auto o = std::make_shared<SweepOptions>();
  CLI::App* app = root.add_subcommand("sweep", "Tables over an omega range");
  app->add_option("--what", o->what, "action | N | uniqueness | symmetry3d")
      ->capture_default_str()
      ->check(CLI::IsMember({"action", "N", "uniqueness", "symmetry3d"}));
  app->add_option("--omega", o->omega, "Range lo:hi:count");
  app->add_option("--starts", o->starts, "Random starts per omega (uniqueness)")->capture_default_str();
  app->add_option("--workers", o->workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--n", o->n, "Radial grid nodes")->capture_default_str();
  app->add_option("--max-iters", o->max_iters, "Iteration cap")->capture_default_str();
  app->add_option("--tol", o->tol, "Euler-Lagrange residual tolerance")->capture_default_str();
  app->add_option("--seed", o->seed, "Base seed")->capture_default_str();
  app->add_option("--lattice-n", o->lattice_n, "Lattice cells per axis (symmetry3d)")->capture_default_str();
  app->add_option("--lattice-l", o->lattice_l, "Lattice half width (symmetry3d)")->capture_default_str();

  Command c;
  c.app = app;
  c.config = [o] {
    json j;
    j["what"] = o->what;
    j["omega"] = o->omega;
    j["starts"] = o->starts;
    j["workers"] = o->workers;
    j["n"] = o->n;
    j["max-iters"] = o->max_iters;
    j["tol"] = o->tol;
    j["seed"] = o->seed;
    j["lattice-n"] = o->lattice_n;
    j["lattice-l"] = o->lattice_l;
    return j;
  };
  c.run = [o](RunContext& ctx) {
    if (o->omega.empty()) throw UsageError("sweep needs --omega lo:hi:count");
    const auto omegas = parse_range(o->omega).values();
    if (o->what == "uniqueness" && o->starts < 2) throw UsageError("--starts must be at least 2");
    ctx.record_seed("base", o->seed);

    std::vector<RowResult> rows(omegas.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < omegas.size(); i = next++) rows[i] = run_row(*o, omegas[i]);
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min(o->workers, omegas.size());
    for (std::size_t k = 1; k < count; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Table table(header_for(o->what));
    std::size_t ok = 0;
    for (auto& r : rows) {
      ok += r.ok ? 1 : 0;
      table.add(std::move(r.cells));
    }
    table.write_csv(ctx.output("sweep.csv"));
    table.print(std::cout);
    std::cout << ok << "/" << rows.size() << " rows succeeded\noutput: " << ctx.dir().string() << '\n';
    return ok > 0 ? static_cast<int>(kOk) : static_cast<int>(kNonConvergence);
  };
  return c;
}

}  // namespace lab
