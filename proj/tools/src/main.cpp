// hartree-lab: batch front end for the Hartree solitary-wave library.

#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "hartree/errors.hpp"
#include "table.hpp"

namespace {

using lab::json;

// Options given on the command line win; the config file only fills the rest.
void apply_config(CLI::App* sub, const json& section) {
  for (const auto& [key, value] : section.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw lab::UsageError("unknown key '" + key + "' for " + sub->get_name());
    if (opt->count() > 0 || value.is_null()) continue;
    const json items = value.is_array() ? value : json::array({value});
    bool any = false;
    for (const auto& v : items) {
      std::string s;
      if (v.is_string()) s = v.get<std::string>();
      else if (v.is_boolean()) s = v.get<bool>() ? "true" : "false";
      else s = v.dump();
      if (s.empty()) continue;
      opt->add_result(s);
      any = true;
    }
    if (any) opt->run_callback();
  }
}

json config_section(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw lab::UsageError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw lab::UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  // A run manifest replays its own configuration.
  if (j.contains("command") && j.contains("config"))
    return j["command"] == command ? j["config"] : json::object();
  return j.contains(command) ? j[command] : json::object();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hartree-lab: positive solitary waves of the repulsive Hartree equation with a Coulomb potential"};
  app.require_subcommand(1);
  std::string out_dir = "runs";
  std::string config_path;
  app.add_option("--out", out_dir, "Base directory for run outputs")->capture_default_str();
  app.add_option("--config", config_path, "JSON config (sections per command) or a run manifest to replay");

  std::vector<lab::Command> commands{lab::register_spectrum(app), lab::register_solve(app),
                                     lab::register_verify(app), lab::register_sweep(app),
                                     lab::register_maxprinciple(app)};

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lab::kUsage;
  }

  lab::Command* selected = nullptr;
  for (auto& c : commands)
    if (c.app->parsed()) selected = &c;
  if (selected == nullptr) return lab::kUsage;
  const std::string name = selected->app->get_name();

  try {
    if (!config_path.empty()) apply_config(selected->app, config_section(config_path, name));
  } catch (const CLI::Error& e) {
    std::cerr << "config: " << e.what() << '\n';
    return lab::kUsage;
  } catch (const lab::UsageError& e) {
    std::cerr << "config: " << e.what() << '\n';
    return lab::kUsage;
  }

  std::vector<std::string> args(argv, argv + argc);
  lab::RunContext ctx(name, selected->config(), out_dir, args);
  int code = lab::kOk;
  try {
    code = selected->run(ctx);
  } catch (const lab::UsageError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    code = lab::kUsage;
  } catch (const hartree::ConfigError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    code = lab::kUsage;
  } catch (const hartree::PreconditionError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    code = lab::kUsage;
  } catch (const hartree::GridTooSmall& e) {
    std::cerr << name << ": " << e.what() << '\n';
    code = lab::kVerificationFailure;
  } catch (const hartree::NumericalError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    code = lab::kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << '\n';
    code = lab::kFailure;
  }
  ctx.finish(code);
  return code;
}
