#pragma once

#include <memory>
#include <span>
#include <vector>

namespace psk {

// Symmetric band matrix in diagonal-major upper storage:
// band(d, j) holds A(j, j + d) for d = 0..q and j = 0..n-1-d.
class BandedSymmetric {
 public:
  BandedSymmetric() = default;
  BandedSymmetric(int dim, int half_bandwidth);

  int dim() const noexcept { return n_; }
  int half_bandwidth() const noexcept { return q_; }

  double& band(int d, int j) { return bands_[static_cast<std::size_t>(d) * n_ + j]; }
  double band(int d, int j) const { return bands_[static_cast<std::size_t>(d) * n_ + j]; }
  // Full symmetric access; zero outside the band.
  double operator()(int i, int j) const;
  void add(int i, int j, double v);

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> to_dense() const;  // row-major n x n

  // Band read at column k: (A(k,k), A(k,k+1), ..., A(k,k+q)).
  std::vector<double> column_band(int k) const;

  BandedSymmetric& operator+=(const BandedSymmetric& other);
  BandedSymmetric& scale(double s);

 private:
  int n_ = 0;
  int q_ = 0;
  std::vector<double> bands_;
};

// Band Cholesky A = L L^T, no pivoting. Immutable once built, so one
// factorization may serve concurrent solves.
class BandedCholesky {
 public:
  explicit BandedCholesky(const BandedSymmetric& a);

  int dim() const noexcept { return n_; }
  std::vector<double> solve(std::span<const double> rhs) const;
  void solve_in_place(std::span<double> x) const;

 private:
  int n_;
  int q_;
  std::vector<double> l_;  // l_[i*(q+1) + d] = L(i, i-d)
};

std::vector<double> banded_solve(const BandedSymmetric& a, std::span<const double> rhs);

}  // namespace psk
