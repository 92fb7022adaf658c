#pragma once

#include <functional>

#include "CLI11.hpp"
#include "run_context.hpp"

namespace lab {

/// A registered subcommand: its CLI11 app, a snapshot of its resolved options, and the runner.
struct Command {
  CLI::App* app = nullptr;
  std::function<json()> config;
  std::function<int(RunContext&)> run;
};

Command register_spectrum(CLI::App& root);
Command register_solve(CLI::App& root);
Command register_verify(CLI::App& root);
Command register_sweep(CLI::App& root);
Command register_maxprinciple(CLI::App& root);

}  // namespace lab
