#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hartree {

/// Symmetric band matrix in LAPACK lower-band storage (ldab = kd + 1, column major).
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix() = default;
  SymmetricBandMatrix(std::size_t n, std::size_t kd);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return kd_; }

  /// Mutable entry of the lower triangle; requires i >= j and i - j <= kd.
  double& lower(std::size_t i, std::size_t j) { return band_[(i - j) + j * (kd_ + 1)]; }
  double lower(std::size_t i, std::size_t j) const { return band_[(i - j) + j * (kd_ + 1)]; }
  /// Symmetric lookup, zero outside the band.
  double operator()(std::size_t i, std::size_t j) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;
  double bilinear(std::span<const double> x, std::span<const double> y) const;

  void add_diagonal(std::span<const double> d);
  SymmetricBandMatrix leading_block(std::size_t m) const;

  std::span<const double> storage() const { return band_; }

 private:
  std::size_t n_ = 0;
  std::size_t kd_ = 0;
  std::vector<double> band_;
};

/// Cholesky factorisation of a symmetric positive definite band matrix.
class BandCholesky {
 public:
  BandCholesky() = default;
  explicit BandCholesky(const SymmetricBandMatrix& a);

  std::size_t size() const { return n_; }
  void solve_in_place(std::span<double> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  std::size_t n_ = 0;
  std::size_t kd_ = 0;
  std::vector<double> factor_;
};

/// LU factorisation (partial pivoting) of A - sigma*I for a symmetric band A.
/// Used for shifted inverse iteration where A - sigma*I is indefinite.
class ShiftedBandLU {
 public:
  ShiftedBandLU(const SymmetricBandMatrix& a, double sigma);

  void solve_in_place(std::span<double> rhs) const;

 private:
  std::size_t n_ = 0;
  std::size_t kd_ = 0;
  std::vector<double> lu_;
  std::vector<int> pivots_;
};

/// The `count` algebraically smallest eigenvalues, ascending.
std::vector<double> smallest_eigenvalues(const SymmetricBandMatrix& a, std::size_t count);

}  // namespace hartree
