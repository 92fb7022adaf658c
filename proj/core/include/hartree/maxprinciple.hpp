#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hartree/radial_field.hpp"
#include "hartree/radial_grid.hpp"
#include "hartree/verify.hpp"

namespace hartree {

enum class Regime { above_quarter, between_sixteenth_and_quarter, below_sixteenth, exactly_quarter };

std::string_view to_string(Regime regime);

/// Comparison function phi(r) = exp(-beta r) Q(r), Q(r) = A r^2 + B r + C, beta = sqrt(omega).
struct TestFunctionSpec {
  double omega = 0.0;
  double beta = 0.0;
  Regime regime = Regime::exactly_quarter;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::vector<std::string> warnings;  ///< conditioning warnings near the thresholds

  double q(double r) const { return (a * r + b) * r + c; }
  double phi(double r) const;
};

/// Coefficients for the regime of omega. omega within 1e-12 of 1/4 is treated as exactly 1/4.
/// Throws ConfigError for omega <= 0 or within 1e-12 of 1/16, where the coefficients degenerate.
TestFunctionSpec test_function_spec(double omega);

struct TestFunction {
  TestFunctionSpec spec;
  RadialField phi;
};

TestFunction build_test_function(double omega, const RadialGrid& grid = default_grid());

/// e^{beta r} r h(r) for h = (-Delta - 1/|x| + omega) phi, in closed form.
double closed_form_rh(const TestFunctionSpec& spec, double r);

struct HResidual {
  IdentityReport closed_form;  ///< max |numeric - closed form| against the size of the terms
  double h_min = 0.0;          ///< smallest numerical h over the nodes
  bool h_nonnegative = false;  ///< h_min >= -1e-10
  RadialField h;
};

/// Applies -Delta - 1/|x| + omega to phi numerically (nine-point differences in u = r phi,
/// with u(0) = 0) and compares e^{beta r} r h(r) with closed_form_rh at every node.
HResidual residual_h(const TestFunctionSpec& spec, const RadialField& phi, double tolerance = 1e-6);

struct QSign {
  bool always_positive = false;
  std::optional<double> first_root;  ///< smallest positive root of Q
};

QSign q_sign_analysis(const TestFunctionSpec& spec);

struct SweepRow {
  TestFunctionSpec spec;
  QSign sign;
  double residual = 0.0;  ///< rel_residual of residual_h
  double h_min = 0.0;
  bool consistent = false;  ///< matches the dichotomy: Q > 0 iff omega >= 1/4, h >= 0, residual within tolerance
};

/// Evenly spaced omegas from lo to hi inclusive; values hitting 1/16 are rejected by ConfigError.
std::vector<SweepRow> maxprinciple_sweep(double lo, double hi, std::size_t count,
                                         const RadialGrid& grid = default_grid());

}  // namespace hartree
