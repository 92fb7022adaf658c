#include <cmath>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "hartree/errors.hpp"
#include "hartree/io.hpp"
#include "hartree/spectral.hpp"
#include "table.hpp"

namespace lab {

namespace {

struct SpectrumOptions {
  std::size_t k_max = 2;
  std::size_t n = 4096;
  double r_max = 120.0;
  std::string spacing = "uniform";
};

}  // namespace

Command register_spectrum(CLI::App& root) {
  auto o = std::make_shared<SpectrumOptions>();
  CLI::App* app = root.add_subcommand("spectrum", "Hydrogen eigenpairs of -Delta - 1/|x| on a radial grid");
  app->add_option("--kmax", o->k_max, "Highest level index k")->capture_default_str();
  app->add_option("--n", o->n, "Grid nodes")->capture_default_str();
  app->add_option("--rmax", o->r_max, "Box radius")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--spacing", o->spacing, "Grid spacing")->capture_default_str()->check(
      CLI::IsMember({"uniform"}));

  Command c;
  c.app = app;
  c.config = [o] {
    json j;
    j["kmax"] = o->k_max;
    j["n"] = o->n;
    j["rmax"] = o->r_max;
    j["spacing"] = o->spacing;
    return j;
  };
  c.run = [o](RunContext& ctx) {
    const auto grid = hartree::build_grid(o->n, o->r_max, hartree::spacing_kind_from_string(o->spacing));
    std::vector<hartree::EigenPair> pairs;
    int code = kOk;
    try {
      pairs = hartree::hydrogen_eigenpairs(grid, o->k_max);
    } catch (const hartree::GridTooSmall& e) {
      std::cerr << "spectrum: " << e.what() << '\n';
      ctx.note(e.what());
      if (o->k_max > hartree::kMaxHydrogenLevel) return static_cast<int>(kVerificationFailure);
      // Still write what the grid resolves so the failure can be inspected.
      pairs = hartree::compute_hydrogen_eigenpairs(grid, o->k_max);
      code = kVerificationFailure;
    }
    if (!pairs.empty()) {
      hartree::io::write_eigenpairs(ctx.dir() / "eigenpairs", pairs);
      ctx.output("eigenpairs.csv");
      ctx.output("eigenpairs.json");
    }
    Table t({"k", "omega", "exact", "rel_error"});
    for (const auto& p : pairs) {
      const double exact = hartree::hydrogen_level(p.index);
      t.add({std::to_string(p.index), fixed(p.omega, 12), fixed(exact, 12),
             fixed(std::abs(p.omega - exact) / exact, 3)});
    }
    t.print(std::cout);
    std::cout << "output: " << ctx.dir().string() << '\n';
    return code;
  };
  return c;
}

}  // namespace lab
