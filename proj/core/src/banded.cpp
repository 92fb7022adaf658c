#include "hartree/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cassert>
#include <string>

#include "hartree/errors.hpp"

namespace hartree {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, std::size_t kd)
    : n_(n), kd_(kd), band_((kd + 1) * n, 0.0) {}

double SymmetricBandMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  if (i - j > kd_) return 0.0;
  return lower(i, j);
}

void SymmetricBandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  assert(x.size() == n_ && y.size() == n_);
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    y[j] += lower(j, j) * x[j];
    const std::size_t last = std::min(n_ - 1, j + kd_);
    for (std::size_t i = j + 1; i <= last; ++i) {
      const double a = lower(i, j);
      y[i] += a * x[j];
      y[j] += a * x[i];
    }
  }
}

std::vector<double> SymmetricBandMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

double SymmetricBandMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
  assert(x.size() == n_ && y.size() == n_);
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    s += lower(j, j) * x[j] * y[j];
    const std::size_t last = std::min(n_ - 1, j + kd_);
    for (std::size_t i = j + 1; i <= last; ++i) s += lower(i, j) * (x[i] * y[j] + x[j] * y[i]);
  }
  return s;
}

void SymmetricBandMatrix::add_diagonal(std::span<const double> d) {
  assert(d.size() == n_);
  for (std::size_t i = 0; i < n_; ++i) lower(i, i) += d[i];
}

SymmetricBandMatrix SymmetricBandMatrix::leading_block(std::size_t m) const {
  assert(m <= n_);
  SymmetricBandMatrix out(m, kd_);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t last = std::min(m - 1, j + kd_);
    for (std::size_t i = j; i <= last; ++i) out.lower(i, j) = lower(i, j);
  }
  return out;
}

BandCholesky::BandCholesky(const SymmetricBandMatrix& a)
    : n_(a.size()), kd_(a.bandwidth()), factor_(a.storage().begin(), a.storage().end()) {
  const auto ldab = static_cast<lapack_int>(kd_ + 1);
  const lapack_int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'L', static_cast<lapack_int>(n_),
                                         static_cast<lapack_int>(kd_), factor_.data(), ldab);
  if (info != 0) {
    throw NumericalError("band Cholesky failed (dpbtrf info=" + std::to_string(info) +
                         "); matrix is not positive definite");
  }
}

void BandCholesky::solve_in_place(std::span<double> rhs) const {
  assert(rhs.size() == n_);
  const lapack_int info =
      LAPACKE_dpbtrs(LAPACK_COL_MAJOR, 'L', static_cast<lapack_int>(n_),
                     static_cast<lapack_int>(kd_), 1, factor_.data(),
                     static_cast<lapack_int>(kd_ + 1), rhs.data(), static_cast<lapack_int>(n_));
  if (info != 0) throw NumericalError("dpbtrs failed, info=" + std::to_string(info));
}

std::vector<double> BandCholesky::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

ShiftedBandLU::ShiftedBandLU(const SymmetricBandMatrix& a, double sigma)
    : n_(a.size()), kd_(a.bandwidth()), pivots_(a.size()) {
  // General band storage for dgbtrf: ldab = 2*kl + ku + 1, entry (i,j) at row kl+ku+i-j.
  const std::size_t kl = kd_;
  const std::size_t ku = kd_;
  const std::size_t ldab = 2 * kl + ku + 1;
  lu_.assign(ldab * n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t first = j > ku ? j - ku : 0;
    const std::size_t last = std::min(n_ - 1, j + kl);
    for (std::size_t i = first; i <= last; ++i) {
      double v = a(i, j);
      if (i == j) v -= sigma;
      lu_[(kl + ku + i - j) + j * ldab] = v;
    }
  }
  const lapack_int info = LAPACKE_dgbtrf(
      LAPACK_COL_MAJOR, static_cast<lapack_int>(n_), static_cast<lapack_int>(n_),
      static_cast<lapack_int>(kl), static_cast<lapack_int>(ku), lu_.data(),
      static_cast<lapack_int>(ldab), pivots_.data());
  // info > 0 means an exactly singular pivot; the shift sits on an eigenvalue.
  if (info < 0) throw NumericalError("dgbtrf failed, info=" + std::to_string(info));
  if (info > 0) {
    const std::size_t k = static_cast<std::size_t>(info - 1);
    lu_[(kl + ku) + k * ldab] = 1e-300;
  }
}

void ShiftedBandLU::solve_in_place(std::span<double> rhs) const {
  assert(rhs.size() == n_);
  const lapack_int info = LAPACKE_dgbtrs(
      LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n_), static_cast<lapack_int>(kd_),
      static_cast<lapack_int>(kd_), 1, lu_.data(), static_cast<lapack_int>(3 * kd_ + 1),
      pivots_.data(), rhs.data(), static_cast<lapack_int>(n_));
  if (info != 0) throw NumericalError("dgbtrs failed, info=" + std::to_string(info));
}

std::vector<double> smallest_eigenvalues(const SymmetricBandMatrix& a, std::size_t count) {
  const std::size_t n = a.size();
  count = std::min(count, n);
  if (count == 0) return {};
  std::vector<double> ab(a.storage().begin(), a.storage().end());
  std::vector<double> w(n);
  std::vector<lapack_int> ifail(n);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsbevx(
      LAPACK_COL_MAJOR, 'N', 'I', 'L', static_cast<lapack_int>(n),
      static_cast<lapack_int>(a.bandwidth()), ab.data(),
      static_cast<lapack_int>(a.bandwidth() + 1), nullptr, 1, 0.0, 0.0, 1,
      static_cast<lapack_int>(count), 0.0, &found, w.data(), nullptr, 1, ifail.data());
  if (info != 0) throw NumericalError("dsbevx failed, info=" + std::to_string(info));
  w.resize(static_cast<std::size_t>(found));
  return w;
}

}  // namespace hartree
