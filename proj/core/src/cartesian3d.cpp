#include "hartree/cartesian3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "hartree/errors.hpp"

namespace hartree {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr std::size_t kMaxDirectN = 48;

void require_same_grid(const CartesianField& a, const CartesianField& b) {
  if (!(a.grid() == b.grid())) detail::throw_precondition("fields live on different lattices");
}

// Six-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 6> kGaussX = {-0.9324695142031521, -0.6612093864662645,
                                           -0.2386191860831969, 0.2386191860831969,
                                           0.6612093864662645,  0.9324695142031521};
constexpr std::array<double, 6> kGaussW = {0.1713244923791704, 0.3607615730481386,
                                           0.4679139345726910, 0.4679139345726910,
                                           0.3607615730481386, 0.1713244923791704};

using Key = std::pair<std::size_t, double>;

// Per-lattice tables are built once and shared; lookups are serialised.
template <class Table, class Build>
std::shared_ptr<const Table> cached(std::map<Key, std::shared_ptr<const Table>>& cache,
                                    std::mutex& mu, const CartesianGrid& g, Build&& build) {
  std::lock_guard lock(mu);
  const Key key{g.n, g.half_width};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const Table>(build(g));
  cache.emplace(key, table);
  return table;
}

// Cell average of 1/|x|, evaluated at |x_i| so the table is exactly reflection symmetric.
std::vector<double> build_coulomb_weights(const CartesianGrid& g) {
  const double h = g.spacing();
  std::vector<double> v(g.points());
  for (std::size_t k = 0; k < g.n; ++k)
    for (std::size_t j = 0; j < g.n; ++j)
      for (std::size_t i = 0; i < g.n; ++i) {
        const double x = std::abs(g.coordinate(i));
        const double y = std::abs(g.coordinate(j));
        const double z = std::abs(g.coordinate(k));
        double s = 0.0;
        for (std::size_t a = 0; a < kGaussX.size(); ++a)
          for (std::size_t b = 0; b < kGaussX.size(); ++b)
            for (std::size_t c = 0; c < kGaussX.size(); ++c) {
              const double px = x + 0.5 * h * kGaussX[a];
              const double py = y + 0.5 * h * kGaussX[b];
              const double pz = z + 0.5 * h * kGaussX[c];
              s += kGaussW[a] * kGaussW[b] * kGaussW[c] / std::sqrt(px * px + py * py + pz * pz);
            }
        v[g.index(i, j, k)] = s / 8.0;
      }
  return v;
}

std::shared_ptr<const std::vector<double>> coulomb_weights(const CartesianGrid& g) {
  static std::map<Key, std::shared_ptr<const std::vector<double>>> cache;
  static std::mutex mu;
  return cached<std::vector<double>>(cache, mu, g, build_coulomb_weights);
}

// Kernel rows by absolute offset (dz, dy), each stored symmetric over dx in [-(n-1), n-1].
std::vector<double> build_direct_kernel(const CartesianGrid& g) {
  const std::size_t n = g.n;
  const std::size_t len = 2 * n - 1;
  const double h = g.spacing();
  std::vector<double> k(n * n * len);
  for (std::size_t dz = 0; dz < n; ++dz)
    for (std::size_t dy = 0; dy < n; ++dy)
      for (std::size_t a = 0; a < len; ++a) {
        const double dx = static_cast<double>(a) - static_cast<double>(n - 1);
        const double d2 = dx * dx + static_cast<double>(dy * dy + dz * dz);
        k[(dz * n + dy) * len + a] = d2 == 0.0 ? kUnitCubeSelfEnergy / h : 1.0 / (h * std::sqrt(d2));
      }
  return k;
}

std::shared_ptr<const std::vector<double>> direct_kernel(const CartesianGrid& g) {
  static std::map<Key, std::shared_ptr<const std::vector<double>>> cache;
  static std::mutex mu;
  return cached<std::vector<double>>(cache, mu, g, build_direct_kernel);
}

// The pair sum dominates the Clarkson batches; x86-64 builds dispatch to an AVX2 clone.
#if defined(__x86_64__) && defined(__GNUC__) && !defined(__clang__)
#define HARTREE_VECTOR_CLONES [[gnu::target_clones("arch=haswell", "default")]]
#else
#define HARTREE_VECTOR_CLONES
#endif

std::shared_ptr<const std::vector<double>> checked_kernel(const CartesianGrid& g) {
  if (g.n > kMaxDirectN)
    detail::throw_config("a_direct: lattice too large for the direct pair sum (n > 48)");
  return direct_kernel(g);
}

// sum_{p,q} g_p K(p - q) f_q, one x-row of targets at a time. For f = g only row pairs
// a <= b are visited, off-diagonal ones twice. Kernel rows are symmetric in the x offset,
// so each source cell is an axpy.
HARTREE_VECTOR_CLONES double direct_pair_sum(const CartesianField& f, const CartesianField& g,
                                             bool same) {
  const CartesianGrid& grid = f.grid();
  const auto kernel = checked_kernel(grid);
  const std::size_t n = grid.n;
  const std::size_t len = 2 * n - 1;
  const std::size_t rows = n * n;
  const auto fv = f.values();
  const auto gv = g.values();
  std::vector<double> u(n);
  double total = 0.0;
  for (std::size_t a = 0; a < rows; ++a) {
    const double* ga = gv.data() + a * n;
    if (std::all_of(ga, ga + n, [](double v) { return v == 0.0; })) continue;
    std::fill(u.begin(), u.end(), 0.0);
    const std::size_t ja = a % n;
    const std::size_t ka = a / n;
    for (std::size_t b = same ? a : 0; b < rows; ++b) {
      const std::size_t jb = b % n;
      const std::size_t kb = b / n;
      const std::size_t dz = kb > ka ? kb - ka : ka - kb;
      const std::size_t dy = jb > ja ? jb - ja : ja - jb;
      const double* krow = kernel->data() + (dz * n + dy) * len;
      const double* fb = fv.data() + b * n;
      const double w = same && b != a ? 2.0 : 1.0;
      for (std::size_t is = 0; is < n; ++is) {
        const double c = w * fb[is];
        if (c == 0.0) continue;
        const double* kk = krow + (n - 1 - is);
        for (std::size_t it = 0; it < n; ++it) u[it] += c * kk[it];
      }
    }
    for (std::size_t it = 0; it < n; ++it) total += ga[it] * u[it];
  }
  return total;
}

// y = -Delta_h x with zero Dirichlet values outside the box.
void apply_laplacian(const CartesianGrid& g, std::span<const double> x, std::span<double> y,
                     double shift = 0.0) {
  const std::size_t n = g.n;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = g.index(i, j, k);
        double s = 6.0 * x[p];
        if (i > 0) s -= x[p - 1];
        if (i + 1 < n) s -= x[p + 1];
        if (j > 0) s -= x[p - n];
        if (j + 1 < n) s -= x[p + n];
        if (k > 0) s -= x[p - n * n];
        if (k + 1 < n) s -= x[p + n * n];
        y[p] = s * inv_h2 + shift * x[p];
      }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Conjugate gradients for (-Delta_h + shift) x = b, starting from x.
std::size_t solve_shifted_laplacian(const CartesianGrid& g, double shift, std::span<const double> b,
                                    std::vector<double>& x, double rel_tol, std::size_t max_iters) {
  const std::size_t np = g.points();
  std::vector<double> r(np);
  std::vector<double> p(np);
  std::vector<double> ap(np);
  apply_laplacian(g, x, ap, shift);
  for (std::size_t i = 0; i < np; ++i) r[i] = b[i] - ap[i];
  p = r;
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return 0;
  }
  double rr = dot(r, r);
  for (std::size_t it = 0; it < max_iters; ++it) {
    if (std::sqrt(rr) <= rel_tol * bnorm) return it;
    apply_laplacian(g, p, ap, shift);
    const double alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < np; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < np; ++i) p[i] = r[i] + beta * p[i];
  }
  if (std::sqrt(rr) <= rel_tol * bnorm) return max_iters;
  std::ostringstream msg;
  msg << "conjugate gradients did not reach relative residual " << rel_tol << " in " << max_iters
      << " iterations (reached " << std::sqrt(rr) / bnorm << ")";
  throw NumericalError(msg.str());
}

// Right-hand side contribution of the ghost layer held at the unit monopole 1/|x|.
std::vector<double> build_monopole_boundary(const CartesianGrid& g) {
  const std::size_t n = g.n;
  const double h = g.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> b(g.points(), 0.0);
  const auto ghost = [&](double x, double y, double z) {
    return inv_h2 / std::sqrt(x * x + y * y + z * z);
  };
  const double edge = g.coordinate(n - 1) + h;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const double x = g.coordinate(i);
        const double y = g.coordinate(j);
        const double z = g.coordinate(k);
        double s = 0.0;
        if (i == 0) s += ghost(-edge, y, z);
        if (i + 1 == n) s += ghost(edge, y, z);
        if (j == 0) s += ghost(x, -edge, z);
        if (j + 1 == n) s += ghost(x, edge, z);
        if (k == 0) s += ghost(x, y, -edge);
        if (k + 1 == n) s += ghost(x, y, edge);
        b[g.index(i, j, k)] = s;
      }
  return b;
}

std::shared_ptr<const std::vector<double>> monopole_boundary(const CartesianGrid& g) {
  static std::map<Key, std::shared_ptr<const std::vector<double>>> cache;
  static std::mutex mu;
  return cached<std::vector<double>>(cache, mu, g, build_monopole_boundary);
}

}  // namespace

void CartesianGrid::validate() const {
  if (n % 2 != 0 || n < 16 || n > kMaxDirectN) {
    detail::throw_config("lattice size n must be even and within [16, 48], got " +
                         std::to_string(n));
  }
  if (!(half_width >= 10.0) || !std::isfinite(half_width))
    detail::throw_config("lattice half width must be at least 10");
}

double CartesianGrid::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

double CartesianGrid::coordinate(std::size_t i) const {
  // Half-integer offsets keep mirrored coordinates exact negatives of each other.
  return (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(n)) * spacing();
}

CartesianField::CartesianField(CartesianGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.points()) detail::throw_precondition("field size does not match lattice");
  for (double v : values_)
    if (!std::isfinite(v)) detail::throw_precondition("field values must be finite");
}

CartesianField CartesianField::zeros(const CartesianGrid& grid) {
  return CartesianField(grid, std::vector<double>(grid.points(), 0.0));
}

double CartesianField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double CartesianField::boundary_shell_ratio() const {
  const std::size_t n = grid_.n;
  double shell = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const bool edge = i == 0 || j == 0 || k == 0 || i + 1 == n || j + 1 == n || k + 1 == n;
        if (edge) shell = std::max(shell, std::abs(values_[grid_.index(i, j, k)]));
      }
  const double m = max_abs();
  return m > 0.0 ? shell / m : 0.0;
}

CartesianField& CartesianField::operator+=(const CartesianField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

CartesianField& CartesianField::operator-=(const CartesianField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

CartesianField& CartesianField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

CartesianField operator+(CartesianField a, const CartesianField& b) { return a += b; }
CartesianField operator-(CartesianField a, const CartesianField& b) { return a -= b; }
CartesianField operator*(double s, CartesianField a) { return a *= s; }
CartesianField operator*(CartesianField a, double s) { return a *= s; }

CartesianField pointwise_product(const CartesianField& a, const CartesianField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return CartesianField(a.grid(), std::move(v));
}

CartesianField square(const CartesianField& a) { return pointwise_product(a, a); }

CartesianField abs(const CartesianField& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x = std::abs(x);
  return CartesianField(a.grid(), std::move(v));
}

CartesianField reflect(const CartesianField& f, int axis) {
  if (axis < 1 || axis > 3) detail::throw_precondition("reflection axis must be 1, 2 or 3");
  const CartesianGrid& g = f.grid();
  const std::size_t n = g.n;
  std::vector<double> v(g.points());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t si = axis == 1 ? n - 1 - i : i;
        const std::size_t sj = axis == 2 ? n - 1 - j : j;
        const std::size_t sk = axis == 3 ? n - 1 - k : k;
        v[g.index(i, j, k)] = f[g.index(si, sj, sk)];
      }
  return CartesianField(g, std::move(v));
}

double l2_inner(const CartesianField& f, const CartesianField& g) {
  require_same_grid(f, g);
  return f.grid().cell_volume() * dot(f.values(), g.values());
}

double l2_norm_sq(const CartesianField& f) { return l2_inner(f, f); }

double kinetic_inner(const CartesianField& f, const CartesianField& g) {
  require_same_grid(f, g);
  std::vector<double> lg(g.size());
  apply_laplacian(g.grid(), g.values(), lg);
  return f.grid().cell_volume() * dot(f.values(), lg);
}

double coulomb_inner(const CartesianField& f, const CartesianField& g) {
  require_same_grid(f, g);
  const auto v = coulomb_weights(f.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += (*v)[i] * f[i] * g[i];
  return f.grid().cell_volume() * s;
}

double a_direct(const CartesianField& f, const CartesianField& g) {
  require_same_grid(f, g);
  const double vol = f.grid().cell_volume();
  const bool same = f.values().data() == g.values().data();
  return vol * vol * direct_pair_sum(f, g, same);
}

double a_form(const CartesianField& f, const CartesianField& g) { return a_direct(f, g); }

double l_omega_form(const CartesianField& f, const CartesianField& g, double omega) {
  return kinetic_inner(f, g) - coulomb_inner(f, g) + omega * l2_inner(f, g);
}

double l_omega(const CartesianField& f, double omega) { return l_omega_form(f, f, omega); }

FunctionalReport report(const CartesianField& chi, double omega) {
  FunctionalReport rep;
  rep.omega = omega;
  rep.l2_sq = l2_norm_sq(chi);
  rep.h1dot_sq = kinetic_inner(chi, chi);
  rep.coulomb_attraction = coulomb_inner(chi, chi);
  const CartesianField rho = square(chi);
  rep.a_quad = a_direct(rho, rho);
  rep.l_omega = rep.h1dot_sq - rep.coulomb_attraction + omega * rep.l2_sq;
  rep.energy = 0.5 * rep.h1dot_sq + 0.25 * rep.a_quad - 0.5 * rep.coulomb_attraction;
  rep.action = 0.5 * rep.l_omega + 0.25 * rep.a_quad;
  return rep;
}

CartesianField poisson_hartree(const CartesianField& f, const PoissonOptions& options) {
  const CartesianGrid& g = f.grid();
  const double mass = g.cell_volume() * std::accumulate(f.values().begin(), f.values().end(), 0.0);
  const auto boundary = monopole_boundary(g);
  std::vector<double> b(g.points());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = kFourPi * f[i] + mass * (*boundary)[i];
  std::vector<double> x(g.points(), 0.0);
  solve_shifted_laplacian(g, 0.0, b, x, options.rel_tol, options.max_iters);
  return CartesianField(g, std::move(x));
}

double symmetry_deficit(const CartesianField& f) {
  const double norm = std::sqrt(l2_norm_sq(f));
  if (!(norm > 0.0)) detail::throw_precondition("symmetry_deficit of a zero field");
  double worst = 0.0;
  for (int axis = 1; axis <= 3; ++axis)
    worst = std::max(worst, std::sqrt(l2_norm_sq(f - reflect(f, axis))) / norm);
  return worst;
}

CartesianField sample_radial(const CartesianGrid& grid, const RadialField& chi) {
  return CartesianField::sample(grid, [&](double x, double y, double z) {
    return interpolate(chi, std::sqrt(x * x + y * y + z * z));
  });
}

double radial_profile_distance(const CartesianField& f, const RadialField& chi) {
  const CartesianField ref = sample_radial(f.grid(), chi);
  const double nr = l2_norm_sq(ref);
  if (!(nr > 0.0)) detail::throw_precondition("radial reference profile is zero");
  return std::sqrt(l2_norm_sq(f - ref) / nr);
}

namespace {

struct Lattice {
  explicit Lattice(const CartesianGrid& grid)
      : g(grid), vol(grid.cell_volume()), coulomb(coulomb_weights(grid)) {}

  double action(const CartesianField& c, double omega, const CartesianField& phi) const {
    const CartesianField rho = square(c);
    return 0.5 * l_omega(c, omega) + 0.25 * vol * dot(phi.values(), rho.values());
  }

  CartesianGrid g;
  double vol;
  std::shared_ptr<const std::vector<double>> coulomb;
};

CartesianField initial_3d(const Solver3DConfig& config) {
  const CartesianGrid& g = config.grid;
  if (config.init == Init3D::radial) {
    return CartesianField::sample(g, [](double x, double y, double z) {
      return 0.3 * std::exp(-0.3 * (x * x + y * y + z * z));
    });
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> centre(-1.5, 1.5);
  std::uniform_real_distribution<double> rate(0.2, 0.5);
  const double cx = centre(rng), cy = centre(rng), cz = centre(rng);
  const double ax = rate(rng), ay = rate(rng), az = rate(rng);
  return CartesianField::sample(g, [=](double x, double y, double z) {
    return 0.3 * std::exp(-(ax * (x - cx) * (x - cx) + ay * (y - cy) * (y - cy) +
                            az * (z - cz) * (z - cz)));
  });
}

}  // namespace

Solver3DResult minimize_action_3d(const Solver3DConfig& config) {
  config.grid.validate();
  const double omega = config.omega;
  if (!(omega > 0.0625 && omega < 0.25))
    detail::throw_config("minimize_action_3d needs omega inside (1/16, 1/4)");
  const Lattice lat(config.grid);
  const CartesianGrid& g = config.grid;
  const std::size_t np = g.points();
  PoissonOptions popt;

  CartesianField c = initial_3d(config);
  CartesianField phi = poisson_hartree(square(c), popt);
  double s_cur = lat.action(c, omega, phi);
  Solver3DResult res{c, 0.0, 0.0, {}, 0.0, 0, false, {}};
  res.max_deficit_seen = symmetry_deficit(c);

  std::vector<double> grad(np);
  std::vector<double> lap(np);
  std::vector<double> dir(np);
  double residual = 0.0;
  std::size_t it = 0;
  for (; it < config.max_iters; ++it) {
    apply_laplacian(g, c.values(), lap);
    for (std::size_t p = 0; p < np; ++p)
      grad[p] = lap[p] + (omega - (*lat.coulomb)[p] + phi[p]) * c[p];
    residual = std::sqrt(dot(grad, grad) / dot(c.values(), c.values()));
    if (residual <= config.el_tol) break;

    std::fill(dir.begin(), dir.end(), 0.0);
    std::vector<double> rhs(np);
    for (std::size_t p = 0; p < np; ++p) rhs[p] = -grad[p];
    solve_shifted_laplacian(g, omega, rhs, dir, 1e-8, 5000);

    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt, t *= 0.5) {
      std::vector<double> v(np);
      for (std::size_t p = 0; p < np; ++p) v[p] = std::abs(c[p] + t * dir[p]);
      CartesianField trial(g, std::move(v));
      CartesianField trial_phi = poisson_hartree(square(trial), popt);
      const double s_new = lat.action(trial, omega, trial_phi);
      if (s_new <= s_cur + 1e-12 * (std::abs(s_cur) + l2_norm_sq(c))) {
        c = std::move(trial);
        phi = std::move(trial_phi);
        s_cur = s_new;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.warnings.emplace_back("line search stalled");
      break;
    }
    res.max_deficit_seen = std::max(res.max_deficit_seen, symmetry_deficit(c));
  }
  if (it == config.max_iters) {
    apply_laplacian(g, c.values(), lap);
    for (std::size_t p = 0; p < np; ++p)
      grad[p] = lap[p] + (omega - (*lat.coulomb)[p] + phi[p]) * c[p];
    residual = std::sqrt(dot(grad, grad) / dot(c.values(), c.values()));
  }
  res.converged = residual <= config.el_tol;
  res.iterations = it;
  res.el_residual = residual;
  res.symmetry_deficit = symmetry_deficit(c);
  res.report.omega = omega;
  res.report.l2_sq = l2_norm_sq(c);
  res.report.h1dot_sq = kinetic_inner(c, c);
  res.report.coulomb_attraction = coulomb_inner(c, c);
  res.report.a_quad = lat.vol * dot(phi.values(), square(c).values());
  res.report.l_omega =
      res.report.h1dot_sq - res.report.coulomb_attraction + omega * res.report.l2_sq;
  res.report.energy =
      0.5 * res.report.h1dot_sq + 0.25 * res.report.a_quad - 0.5 * res.report.coulomb_attraction;
  res.report.action = 0.5 * res.report.l_omega + 0.25 * res.report.a_quad;
  if (!res.converged) res.warnings.emplace_back("3D descent did not reach el_tol");
  res.chi = std::move(c);
  return res;
}

}  // namespace hartree
