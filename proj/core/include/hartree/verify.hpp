#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hartree/cartesian3d.hpp"
#include "hartree/errors.hpp"
#include "hartree/functionals.hpp"
#include "hartree/radial_field.hpp"
#include "hartree/solver.hpp"

namespace hartree {

enum class RelationKind { identity, inequality };

/// One checked relation. rel_residual = |lhs - rhs| / max(|lhs|, |rhs|, 1e-300).
/// Identities hold when rel_residual <= tolerance; inequalities (lhs <= rhs) hold when
/// lhs <= rhs + tolerance * |rhs|.
struct IdentityReport {
  std::string name;
  RelationKind kind = RelationKind::identity;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

IdentityReport make_identity(std::string name, double lhs, double rhs, double tolerance);
IdentityReport make_inequality(std::string name, double lhs, double rhs, double slack);

struct PohozaevReports {
  IdentityReport mass;      ///< ||grad chi||^2 + w||chi||^2 = int chi^2/|x| - A
  IdentityReport dilation;  ///< ||grad chi||^2 + 3w||chi||^2 = 2 int chi^2/|x| - (5/2) A
};

PohozaevReports pohozaev_residuals(const RadialField& chi, double omega, double tolerance = 1e-3);

/// S_omega = -A(chi^2)/4 on a converged minimiser. Throws PreconditionError if unconverged.
IdentityReport action_a_relation(const MinimizerResult& result, double tolerance = 1e-3);

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kInequalitySlack = 1e-9;

/// L((f+g)/2) + L((f-g)/2) = (L(f) + L(g))/2. Works for radial and lattice fields.
template <class Field>
IdentityReport clarkson_L(const Field& f, const Field& g, double omega) {
  const double lhs = l_omega(0.5 * (f + g), omega) + l_omega(0.5 * (f - g), omega);
  const double rhs = 0.5 * (l_omega(f, omega) + l_omega(g, omega));
  return make_identity("clarkson_L", lhs, rhs, kIdentityTolerance);
}

struct ClarksonAReports {
  IdentityReport inequality;  ///< A(((f+g)/2)^2) + A(((f-g)/2)^2) <= (A(f^2)+A(g^2))/8 + 3 sqrt(A(f^2)A(g^2))/4
  IdentityReport expansion;   ///< the same left side = (A(f^2)+A(g^2)+2A(f^2,g^2)+4A(fg,fg))/8
};

template <class Field>
ClarksonAReports clarkson_A(const Field& f, const Field& g) {
  const Field f2 = square(f);
  const Field g2 = square(g);
  const Field fg = pointwise_product(f, g);
  const double af = a_form(f2, f2);
  const double ag = a_form(g2, g2);
  const double afg = a_form(f2, g2);
  const double amix = a_form(fg, fg);
  const Field p = square(0.5 * (f + g));
  const Field m = square(0.5 * (f - g));
  const double lhs = a_form(p, p) + a_form(m, m);
  const double rhs = (af + ag) / 8.0 + 0.75 * std::sqrt(af * ag);
  const double expanded = (af + ag + 2.0 * afg + 4.0 * amix) / 8.0;
  return {make_inequality("clarkson_A", lhs, rhs, kInequalitySlack),
          make_identity("clarkson_A_expansion", lhs, expanded, kIdentityTolerance)};
}

struct ClarksonIIReports {
  IdentityReport l_identity;   ///< L(mu f + nu g) + L(mu f - nu g) = L(f)
  IdentityReport a_inequality; ///< A((mu f + nu g)^2) + A((mu f - nu g)^2) <= A(f^2)
};

/// Requires L(f) = L(g), A(f^2) = A(g^2) (to 1e-8 of their scale) and 2(mu^2+nu^2) = 1
/// (to 1e-12); violations throw PreconditionError naming the failed condition.
template <class Field>
ClarksonIIReports clarkson_II(const Field& f, const Field& g, double mu, double nu, double omega) {
  if (mu < 0.0 || nu < 0.0) detail::throw_precondition("clarkson_II: mu and nu must be non-negative");
  if (std::abs(2.0 * (mu * mu + nu * nu) - 1.0) > 1e-12)
    detail::throw_precondition("clarkson_II: 2(mu^2 + nu^2) != 1");
  const double lf = l_omega(f, omega);
  const double lg = l_omega(g, omega);
  const double l_scale = std::max({std::abs(lf), std::abs(lg), kinetic_inner(f, f)});
  if (std::abs(lf - lg) > 1e-8 * l_scale)
    detail::throw_precondition("clarkson_II: L_omega(f) != L_omega(g)");
  const Field f2 = square(f);
  const Field g2 = square(g);
  const double af = a_form(f2, f2);
  const double ag = a_form(g2, g2);
  if (std::abs(af - ag) > 1e-8 * std::max(af, ag))
    detail::throw_precondition("clarkson_II: A(f^2) != A(g^2)");
  const Field p = mu * f + nu * g;
  const Field m = mu * f - nu * g;
  const double l_lhs = l_omega(p, omega) + l_omega(m, omega);
  const Field p2 = square(p);
  const Field m2 = square(m);
  const double a_lhs = a_form(p2, p2) + a_form(m2, m2);
  const IdentityReport li = make_identity("clarkson_II_L", l_lhs, lf, kIdentityTolerance);
  return {li, make_inequality("clarkson_II_A", a_lhs, af, kInequalitySlack)};
}

struct QuarticScan {
  double max_value = 0.0;
  double argmax_mu_sq = 0.0;
  double closed_form_max_error = 0.0;  ///< max |2(mu^4+nu^4+6mu^2nu^2) - (1 - (1-4mu^2)^2/2)|
  bool holds = false;                  ///< max <= 1 + 1e-12 and closed form within 1e-14
};

/// Scans mu^2 over [0, 1/2] with nu^2 = 1/2 - mu^2. Throws ConfigError for samples < 100.
QuarticScan quartic_bound_scan(std::size_t samples);
double quartic_value(double mu);

struct ReflectionChainReport {
  IdentityReport l_sum;        ///< L(chi+) + L(chi-) = L(chi)
  IdentityReport a_sum;        ///< A(chi+^2) + A(chi-^2) <= A(chi^2)
  bool a_step_strict = false;  ///< strict inequality in the A step (chi not reflection symmetric)
  IdentityReport s_invariance; ///< S(chi_hat) = S(chi)
  IdentityReport s_sum;        ///< S(chi+) + S(chi-) <= S(chi)
  bool holds = false;
};

/// Reflection argument across the plane x_1 = 0 on a lattice field.
ReflectionChainReport reflection_chain_check(const CartesianField& chi, double omega);

/// Analytic radial profile: a sum of Gaussian bumps c exp(-((r - r0)/s)^2).
struct RadialProfile {
  struct Bump {
    double c = 0.0;
    double r0 = 0.0;
    double s = 1.0;
  };
  std::vector<Bump> bumps;
  double operator()(double r) const;
};

/// One to three bumps with random signs, centres in [0, 4] and widths in [0.7, 2.5].
RadialProfile random_profile(std::uint64_t seed);
RadialField random_radial_profile(const RadialGrid& grid, std::uint64_t seed);
/// Smooth random lattice field without reflection symmetry.
CartesianField random_lattice_field(const CartesianGrid& grid, std::uint64_t seed);

struct MatchedRescaling {
  RadialField g;
  double lambda = 1.0;     ///< g(r) = a f(lambda r)
  double amplitude = 1.0;  ///< a
};

/// Finds lambda in [0.2, 2.5], away from 1, such that g = a f(lambda r) with
/// a^4 = A(f^2) / A(f(lambda .)^2) also has L_omega(g) = L_omega(f) on the grid.
/// Empty when no such lambda is bracketed.
std::optional<MatchedRescaling> matched_rescaling(const RadialGrid& grid, const RadialProfile& f,
                                                  double omega);

struct BatchSummary {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  ///< largest rel_residual (identities) or largest violation ratio (inequalities)
  bool holds() const { return failures == 0; }
};

struct ClarksonBatch {
  BatchSummary l_identity;
  BatchSummary a_inequality;
  BatchSummary a_expansion;
  BatchSummary ii_identity;
  BatchSummary ii_inequality;
};

/// Random pairs on a radial grid; Clarkson II pairs come from matched rescalings.
ClarksonBatch clarkson_batch_radial(const RadialGrid& grid, std::size_t pairs, std::uint64_t seed,
                                    double omega);
/// Random non-symmetric lattice pairs; Clarkson II pairs are (f, reflect(f)).
ClarksonBatch clarkson_batch_3d(const CartesianGrid& grid, std::size_t pairs, std::uint64_t seed,
                                double omega);

struct FormBatch {
  BatchSummary parallelogram;
  BatchSummary cauchy_squares;  ///< A(f^2, g^2) <= sqrt(A(f^2) A(g^2))
  BatchSummary cauchy_product;  ///< A(fg, fg) <= sqrt(A(f^2) A(g^2))
};

FormBatch form_batch_radial(const RadialGrid& grid, std::size_t pairs, std::uint64_t seed);
FormBatch form_batch_3d(const CartesianGrid& grid, std::size_t pairs, std::uint64_t seed);

void accumulate(BatchSummary& summary, const IdentityReport& report);

}  // namespace hartree
