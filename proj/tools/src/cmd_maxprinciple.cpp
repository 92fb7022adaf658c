#include <cmath>
#include <iostream>
#include <limits>
#include <memory>

#include "commands.hpp"
#include "hartree/io.hpp"
#include "hartree/maxprinciple.hpp"
#include "table.hpp"

namespace lab {

namespace {

struct MaxPrincipleOptions {
  double omega = std::numeric_limits<double>::quiet_NaN();
  std::string sweep;
};

bool report_single(double omega, RunContext& ctx) {
  const auto tf = hartree::build_test_function(omega);
  const auto res = hartree::residual_h(tf.spec, tf.phi);
  const auto sign = hartree::q_sign_analysis(tf.spec);
  for (const auto& w : tf.spec.warnings) {
    std::cerr << "warning: " << w << '\n';
    ctx.note(w);
  }
  std::cout << "omega        " << fixed(tf.spec.omega, 12) << '\n'
            << "beta         " << fixed(tf.spec.beta, 12) << '\n'
            << "regime       " << hartree::to_string(tf.spec.regime) << '\n'
            << "Q(r)         " << num(tf.spec.a) << " r^2 + " << num(tf.spec.b) << " r + " << num(tf.spec.c) << '\n'
            << "Q positive   " << (sign.always_positive ? "yes" : "no") << '\n';
  if (sign.first_root) std::cout << "Q root       " << fixed(*sign.first_root, 12) << '\n';
  std::cout << "rh residual  " << fixed(res.closed_form.rel_residual, 3) << (res.closed_form.holds ? "" : "  (above tolerance)")
            << '\n'
            << "min h        " << fixed(res.h_min, 3) << '\n';

  hartree::io::write_radial(ctx.dir() / "phi", tf.phi, "phi");
  ctx.output("phi.csv");
  ctx.output("phi.json");
  hartree::io::write_radial(ctx.dir() / "h", res.h, "h");
  ctx.output("h.csv");
  ctx.output("h.json");
  json j;
  j["omega"] = tf.spec.omega;
  j["beta"] = tf.spec.beta;
  j["regime"] = std::string(hartree::to_string(tf.spec.regime));
  j["coefficients"] = {tf.spec.a, tf.spec.b, tf.spec.c};
  j["q_always_positive"] = sign.always_positive;
  j["q_first_root"] = sign.first_root ? json(*sign.first_root) : json(nullptr);
  j["residual"] = json::parse(hartree::io::to_json(res.closed_form));
  j["h_min"] = res.h_min;
  j["h_nonnegative"] = res.h_nonnegative;
  j["warnings"] = tf.spec.warnings;
  hartree::io::write_text(ctx.output("maxprinciple.json"), j.dump(2) + "\n");
  return res.closed_form.holds && res.h_nonnegative;
}

bool report_sweep(const Range& range, RunContext& ctx) {
  const auto rows = hartree::maxprinciple_sweep(range.lo, range.hi, range.count);
  Table t({"omega", "beta", "regime", "A", "B", "C", "q_positive", "q_root", "residual", "h_min", "consistent"});
  bool ok = true;
  for (const auto& r : rows) {
    t.add({num(r.spec.omega), num(r.spec.beta), std::string(hartree::to_string(r.spec.regime)), num(r.spec.a),
           num(r.spec.b), num(r.spec.c), r.sign.always_positive ? "yes" : "no",
           r.sign.first_root ? num(*r.sign.first_root) : "", num(r.residual), num(r.h_min),
           r.consistent ? "yes" : "NO"});
    ok = ok && r.consistent;
  }
  t.write_csv(ctx.output("maxprinciple_sweep.csv"));
  t.print(std::cout);
  return ok;
}

}  // namespace

Command register_maxprinciple(CLI::App& root) {
  auto o = std::make_shared<MaxPrincipleOptions>();
  CLI::App* app = root.add_subcommand("maxprinciple", "Comparison functions for -Delta - 1/|x| + omega");
  app->add_option("--omega", o->omega, "Single omega > 0")->check(CLI::PositiveNumber);
  app->add_option("--sweep", o->sweep, "Omega range lo:hi:count, written as CSV");

  Command c;
  c.app = app;
  c.config = [o] {
    json j;
    j["omega"] = o->omega;
    j["sweep"] = o->sweep;
    return j;
  };
  c.run = [o](RunContext& ctx) {
    if (std::isnan(o->omega) && o->sweep.empty()) throw UsageError("maxprinciple needs --omega or --sweep");
    bool ok = true;
    if (!std::isnan(o->omega)) ok = report_single(o->omega, ctx) && ok;
    if (!o->sweep.empty()) ok = report_sweep(parse_range(o->sweep), ctx) && ok;
    std::cout << "output: " << ctx.dir().string() << '\n';
    return ok ? static_cast<int>(kOk) : static_cast<int>(kVerificationFailure);
  };
  return c;
}

}  // namespace lab
