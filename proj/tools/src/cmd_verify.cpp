#include <iostream>
#include <memory>

#include "commands.hpp"
#include "hartree/io.hpp"
#include "hartree/maxprinciple.hpp"
#include "hartree/radial_grid.hpp"
#include "hartree/solver.hpp"
#include "hartree/verify.hpp"
#include "table.hpp"

namespace lab {

namespace {

struct VerifyOptions {
  bool clarkson = false;
  bool pohozaev = false;
  bool maxprinciple = false;
  bool forms = false;
  bool reflection = false;
  bool all = false;
  std::size_t pairs = 500;
  std::size_t form_pairs = 200;
  double omega = 0.2;
  std::string sweep = "0.05:0.6:50";
  std::size_t lattice_n = 16;
  double lattice_l = 10.0;
  std::uint64_t seed = 1;
};

class Collector {
 public:
  Collector() : table_({"suite", "check", "cases", "failures", "worst", "holds"}) {}

  void add(const std::string& suite, const hartree::IdentityReport& r) {
    json j = json::parse(hartree::io::to_json(r));
    j["suite"] = suite;
    reports_.push_back(j);
    table_.add({suite, r.name, "1", r.holds ? "0" : "1", fixed(r.rel_residual, 3), r.holds ? "yes" : "NO"});
    ok_ = ok_ && r.holds;
  }
  void add(const std::string& suite, const hartree::BatchSummary& b) {
    json j = json::parse(hartree::io::to_json(b));
    j["suite"] = suite;
    reports_.push_back(j);
    table_.add({suite, b.name, std::to_string(b.cases), std::to_string(b.failures), fixed(b.worst, 3),
                b.holds() ? "yes" : "NO"});
    ok_ = ok_ && b.holds();
  }
  void add_flag(const std::string& suite, const std::string& name, bool holds, double worst) {
    json j;
    j["suite"] = suite;
    j["name"] = name;
    j["worst"] = worst;
    j["holds"] = holds;
    reports_.push_back(j);
    table_.add({suite, name, "1", holds ? "0" : "1", fixed(worst, 3), holds ? "yes" : "NO"});
    ok_ = ok_ && holds;
  }

  bool ok() const { return ok_; }
  const json& reports() const { return reports_; }
  const Table& table() const { return table_; }

 private:
  json reports_ = json::array();
  Table table_;
  bool ok_ = true;
};

void run_clarkson(const VerifyOptions& o, Collector& out) {
  const auto grid = hartree::default_grid();
  const auto radial = hartree::clarkson_batch_radial(grid, o.pairs, o.seed, o.omega);
  for (const auto* b : {&radial.l_identity, &radial.a_inequality, &radial.a_expansion, &radial.ii_identity,
                        &radial.ii_inequality})
    out.add("clarkson_radial", *b);
  const hartree::CartesianGrid lattice{o.lattice_n, o.lattice_l};
  lattice.validate();
  const auto cube = hartree::clarkson_batch_3d(lattice, o.pairs, o.seed, o.omega);
  for (const auto* b : {&cube.l_identity, &cube.a_inequality, &cube.a_expansion, &cube.ii_identity,
                        &cube.ii_inequality})
    out.add("clarkson_3d", *b);
  const auto q = hartree::quartic_bound_scan(10001);
  out.add_flag("clarkson", "quartic_bound_max", q.holds, q.max_value);
}

void run_forms(const VerifyOptions& o, Collector& out) {
  const auto radial = hartree::form_batch_radial(hartree::default_grid(), o.form_pairs, o.seed);
  for (const auto* b : {&radial.parallelogram, &radial.cauchy_squares, &radial.cauchy_product})
    out.add("forms_radial", *b);
  const hartree::CartesianGrid lattice{o.lattice_n, o.lattice_l};
  lattice.validate();
  const auto cube = hartree::form_batch_3d(lattice, o.form_pairs, o.seed);
  for (const auto* b : {&cube.parallelogram, &cube.cauchy_squares, &cube.cauchy_product}) out.add("forms_3d", *b);
}

void run_reflection(const VerifyOptions& o, Collector& out) {
  const hartree::CartesianGrid lattice{o.lattice_n, o.lattice_l};
  lattice.validate();
  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto chi = hartree::random_lattice_field(lattice, o.seed + k);
    const auto r = hartree::reflection_chain_check(chi, o.omega);
    const std::string suite = "reflection_" + std::to_string(k);
    out.add(suite, r.l_sum);
    out.add(suite, r.a_sum);
    out.add(suite, r.s_invariance);
    out.add(suite, r.s_sum);
    out.add_flag(suite, "reflection_A_strict", r.a_step_strict, 0.0);
  }
}

int run_pohozaev(const VerifyOptions& o, Collector& out) {
  hartree::SolverConfig config;
  config.omega = o.omega;
  config.seed = o.seed;
  const auto r = hartree::minimize_action(config);
  if (!r.converged) {
    out.add_flag("pohozaev", "minimiser_converged", false, r.el_residual);
    return kNonConvergence;
  }
  const auto poh = hartree::pohozaev_residuals(r.chi, o.omega);
  out.add("pohozaev", poh.mass);
  out.add("pohozaev", poh.dilation);
  out.add("pohozaev", hartree::action_a_relation(r));
  return kOk;
}

void run_maxprinciple(const VerifyOptions& o, Collector& out, Table& regimes) {
  const Range range = parse_range(o.sweep);
  const auto rows = hartree::maxprinciple_sweep(range.lo, range.hi, range.count);
  std::size_t bad = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    regimes.add({num(r.spec.omega), std::string(hartree::to_string(r.spec.regime)),
                 r.sign.always_positive ? "yes" : "no", r.sign.first_root ? num(*r.sign.first_root) : "",
                 num(r.residual), num(r.h_min), r.consistent ? "yes" : "NO"});
    if (!r.consistent) ++bad;
    worst = std::max(worst, r.residual);
  }
  out.add_flag("maxprinciple", "dichotomy_sweep_" + std::to_string(rows.size()), bad == 0, worst);
}

}  // namespace

Command register_verify(CLI::App& root) {
  auto o = std::make_shared<VerifyOptions>();
  CLI::App* app = root.add_subcommand("verify", "Check the identities and inequalities of the theory");
  app->add_flag("--clarkson", o->clarkson, "Clarkson identities and inequalities, radial and 3D");
  app->add_flag("--pohozaev", o->pohozaev, "Pohozaev identities and S = -A/4 on a computed minimiser");
  app->add_flag("--maxprinciple", o->maxprinciple, "Comparison-function dichotomy over an omega sweep");
  app->add_flag("--forms", o->forms, "Parallelogram law and Cauchy inequalities of the Coulomb form");
  app->add_flag("--reflection", o->reflection, "Reflection chain on random lattice fields");
  app->add_flag("--all", o->all, "Every suite (the default when none is selected)");
  app->add_option("--n", o->pairs, "Random pairs per Clarkson batch")->capture_default_str();
  app->add_option("--form-pairs", o->form_pairs, "Random pairs per form batch")->capture_default_str();
  app->add_option("--omega", o->omega, "Frequency for L_omega and the minimiser")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--sweep", o->sweep, "Omega range lo:hi:count for --maxprinciple")->capture_default_str();
  app->add_option("--lattice-n", o->lattice_n, "Lattice cells per axis for 3D batches")->capture_default_str();
  app->add_option("--lattice-l", o->lattice_l, "Lattice half width")->capture_default_str();
  app->add_option("--seed", o->seed, "Batch seed")->capture_default_str();

  Command c;
  c.app = app;
  c.config = [o] {
    json j;
    j["clarkson"] = o->clarkson;
    j["pohozaev"] = o->pohozaev;
    j["maxprinciple"] = o->maxprinciple;
    j["forms"] = o->forms;
    j["reflection"] = o->reflection;
    j["all"] = o->all;
    j["n"] = o->pairs;
    j["form-pairs"] = o->form_pairs;
    j["omega"] = o->omega;
    j["sweep"] = o->sweep;
    j["lattice-n"] = o->lattice_n;
    j["lattice-l"] = o->lattice_l;
    j["seed"] = o->seed;
    return j;
  };
  c.run = [o](RunContext& ctx) {
    const bool none = !(o->clarkson || o->pohozaev || o->maxprinciple || o->forms || o->reflection);
    const bool all = o->all || none;
    ctx.record_seed("batch", o->seed);
    Collector out;
    Table regimes({"omega", "regime", "q_positive", "q_root", "residual", "h_min", "consistent"});
    int code = kOk;
    if (all || o->maxprinciple) run_maxprinciple(*o, out, regimes);
    if (all || o->forms) run_forms(*o, out);
    if (all || o->reflection) run_reflection(*o, out);
    if (all || o->clarkson) run_clarkson(*o, out);
    if (all || o->pohozaev) code = run_pohozaev(*o, out);

    hartree::io::write_text(ctx.output("reports.json"), out.reports().dump(2) + "\n");
    out.table().write_csv(ctx.output("summary.csv"));
    if (regimes.rows() > 0) {
      regimes.write_csv(ctx.output("maxprinciple_sweep.csv"));
      regimes.print(std::cout);
      std::cout << '\n';
    }
    out.table().print(std::cout);
    std::cout << "output: " << ctx.dir().string() << '\n';
    if (code != kOk) return code;
    return out.ok() ? static_cast<int>(kOk) : static_cast<int>(kVerificationFailure);
  };
  return c;
}

}  // namespace lab
