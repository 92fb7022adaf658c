#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hartree/functionals.hpp"
#include "hartree/radial_field.hpp"

namespace hartree {

enum class InitKind { gaussian_random, scaled_e0, custom };

std::string_view to_string(InitKind kind);
InitKind init_kind_from_string(std::string_view s);

enum class SolveStatus { converged, collapsed, iteration_capped };

std::string_view to_string(SolveStatus status);

/// Box radius used when SolverConfig::r_max is left at 0: max(60, 20/sqrt(omega)), in steps of 10.
double recommended_r_max(double omega);

struct SolverConfig {
  double omega = 0.2;
  std::size_t n = 2048;
  double r_max = 0.0;  ///< 0 selects recommended_r_max(omega)
  /// Descent step scale (gradient methods) or potential mixing (self-consistent field).
  double step_size = 1.0;
  std::size_t max_iters = 2000;
  double el_tol = 1e-8;
  std::uint64_t seed = 0;
  InitKind init = InitKind::gaussian_random;
  double init_scale = 0.1;              ///< amplitude for scaled_e0
  std::optional<RadialField> initial;   ///< used when init == custom

  /// Throws ConfigError on out-of-range entries.
  void validate() const;
  double effective_r_max() const;
  RadialGrid make_grid() const;
};

struct IterationRecord {
  std::size_t iteration = 0;
  double objective = 0.0;
  double el_residual = 0.0;
};

struct MinimizerResult {
  RadialField chi;
  double omega = 0.0;  ///< the fixed omega, or the Lagrange multiplier for constrained runs
  FunctionalReport report;
  double el_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::iteration_capped;
  std::vector<IterationRecord> trace;
  std::vector<std::string> warnings;
};

/// Initial profile described by the config, on the config's grid.
RadialField initial_profile(const SolverConfig& config, const RadialGrid& grid);

/// Relative L2 residual of the Euler-Lagrange equation (-Delta - 1/r + omega + Phi) chi = 0.
double el_residual(const RadialField& chi, double omega);

/// Minimises the action S_omega by preconditioned descent with exact quartic line search.
MinimizerResult minimize_action(const SolverConfig& config);

/// Self-consistent field iteration: freeze the Hartree potential, take the ground state of
/// the linear radial problem, adjust its mass so the eigenvalue equals -omega, mix.
MinimizerResult scf_fixed_point(const SolverConfig& config);

/// Minimises the energy at fixed mass ||chi||^2 = mass. result.omega holds the multiplier.
MinimizerResult minimize_energy_constrained(double mass, const SolverConfig& config);

struct MassResult {
  double mass = 0.0;
  MinimizerResult result;
};

/// N(omega) = ||chi_omega||^2 from a converged minimize_action run. Warns outside (1/16, 1/4).
/// Throws NumericalError if the run does not converge.
MassResult n_of_omega(double omega, const SolverConfig& config);

struct StartDiagnostics {
  std::uint64_t seed = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::iteration_capped;
  std::size_t iterations = 0;
  double action = 0.0;
  double mass = 0.0;
  double el_residual = 0.0;
};

struct UniquenessReport {
  double omega = 0.0;
  double max_pairwise_distance = 0.0;  ///< relative L2, converged starts only
  std::size_t converged_starts = 0;
  std::vector<StartDiagnostics> starts;
  std::vector<RadialField> profiles;  ///< converged profiles, in start order
};

/// Runs n_starts random starts (seeds seed, seed+1, ...). Rejects omega outside
/// (1/16, 1/4) or within 1e-9 of either end.
UniquenessReport multistart_uniqueness(double omega, std::size_t n_starts, std::uint64_t seed,
                                       const SolverConfig& base);

}  // namespace hartree
