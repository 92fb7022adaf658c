#include "hartree/spectral.hpp"

#include <cmath>
#include <sstream>

#include "hartree/banded.hpp"
#include "hartree/errors.hpp"
#include "hartree/functionals.hpp"

namespace hartree {

namespace {

constexpr double kLevelTolerance = 1e-5;
constexpr int kInverseIterations = 4;

// W^{-1/2} (S - W/r) W^{-1/2} on the interior nodes 1..n-1 (u vanishes at r_max).
SymmetricBandMatrix scaled_hamiltonian(const RadialGrid& grid) {
  const std::size_t m = grid.size() - 1;
  const auto r = grid.nodes();
  const auto w = grid.weights();
  const SymmetricBandMatrix s = grid.stiffness().leading_block(m);
  SymmetricBandMatrix h(m, s.bandwidth());
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t last = std::min(m - 1, j + s.bandwidth());
    for (std::size_t i = j; i <= last; ++i) h.lower(i, j) = s.lower(i, j) / std::sqrt(w[i] * w[j]);
    h.lower(j, j) -= 1.0 / r[j];
  }
  return h;
}

std::vector<double> inverse_iteration(const SymmetricBandMatrix& h, double lambda) {
  const ShiftedBandLU lu(h, lambda);
  std::vector<double> y(h.size(), 1.0);
  for (int it = 0; it < kInverseIterations; ++it) {
    lu.solve_in_place(y);
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : y) v /= norm;
  }
  return y;
}

}  // namespace

double hydrogen_level(std::size_t k) {
  const double k1 = static_cast<double>(k + 1);
  return 1.0 / (4.0 * k1 * k1);
}

std::vector<EigenPair> compute_hydrogen_eigenpairs(const RadialGrid& grid, std::size_t k_max) {
  if (!grid.is_uniform()) detail::throw_precondition("hydrogen_eigenpairs requires a uniform grid");
  const SymmetricBandMatrix h = scaled_hamiltonian(grid);
  const std::vector<double> lambdas = smallest_eigenvalues(h, k_max + 1);
  const std::size_t n = grid.size();
  const auto r = grid.nodes();
  const auto w = grid.weights();

  std::vector<EigenPair> pairs;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    // Non-negative eigenvalues belong to the discretised continuum.
    if (lambdas[k] >= 0.0) break;
    const std::vector<double> y = inverse_iteration(h, lambdas[k]);
    std::vector<double> chi(n, 0.0);
    double max_u = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) max_u = std::max(max_u, std::abs(y[i] / std::sqrt(w[i])));
    double sign = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double u = y[i] / std::sqrt(w[i]);
      if (std::abs(u) > 1e-3 * max_u) {
        sign = u > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) chi[i] = sign * y[i] / std::sqrt(w[i]) / r[i];
    RadialField e(grid, std::move(chi));
    e *= 1.0 / std::sqrt(l2_norm_sq(e));
    pairs.push_back({k, -lambdas[k], std::move(e)});
  }
  return pairs;
}

std::vector<EigenPair> hydrogen_eigenpairs(const RadialGrid& grid, std::size_t k_max) {
  if (k_max > kMaxHydrogenLevel) {
    throw GridTooSmall("k_max = " + std::to_string(k_max) + " exceeds the supported maximum " +
                       std::to_string(kMaxHydrogenLevel));
  }
  std::vector<EigenPair> pairs = compute_hydrogen_eigenpairs(grid, k_max);
  if (pairs.size() < k_max + 1) {
    throw GridTooSmall("only " + std::to_string(pairs.size()) + " bound states resolved, " +
                       std::to_string(k_max + 1) + " requested");
  }
  for (const auto& p : pairs) {
    const double exact = hydrogen_level(p.index);
    const double rel = std::abs(p.omega - exact) / exact;
    if (rel > kLevelTolerance) {
      std::ostringstream msg;
      msg << "level k=" << p.index << " has relative error " << rel << " (n=" << grid.size()
          << ", r_max=" << grid.r_max() << "); enlarge the grid";
      throw GridTooSmall(msg.str());
    }
  }
  return pairs;
}

Projection project_e0(const RadialField& f, const RadialField& e0) {
  const double coeff = l2_inner(f, e0) / l2_norm_sq(e0);
  RadialField rem = f - coeff * e0;
  return {coeff, std::move(rem)};
}

GortCheck gort_lower_bound_check(const RadialField& g, double omega, const RadialField& e0) {
  if (!(omega > 0.0)) detail::throw_precondition("gort check requires omega > 0");
  const double g_norm_sq = l2_norm_sq(g);
  const double overlap = l2_inner(g, e0) / std::sqrt(l2_norm_sq(e0));
  if (std::abs(overlap) > 1e-8 * std::sqrt(g_norm_sq)) {
    std::ostringstream msg;
    msg << "g is not orthogonal to e0 (overlap " << overlap << ")";
    detail::throw_precondition(msg.str());
  }
  GortCheck c;
  c.lhs = l_omega(g, omega);
  c.rhs = (omega - hydrogen_level(1)) * g_norm_sq;
  c.holds = c.lhs >= c.rhs - 1e-8 * std::abs(c.rhs);
  return c;
}

}  // namespace hartree
