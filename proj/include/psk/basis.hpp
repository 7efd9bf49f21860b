#pragma once

#include <span>
#include <vector>

namespace psk {

// Degree-p B-splines on K equal intervals of [0,1], with the knot grid
// extended uniformly by p knots on each side so that there are K + p bases.
class SplineBasis {
 public:
  SplineBasis(int degree, int intervals);

  int degree() const noexcept { return p_; }
  int intervals() const noexcept { return k_; }
  int num_basis() const noexcept { return k_ + p_; }
  double spacing() const noexcept { return 1.0 / k_; }
  const std::vector<double>& knots() const noexcept { return knots_; }

  // Interval index i in [0, K) with x in [i/K, (i+1)/K); x = 1 maps to K-1.
  int interval_of(double x) const;

 private:
  int p_;
  int k_;
  std::vector<double> knots_;
};

struct BasisValues {
  int first_index = 0;          // 0-based index of the first nonzero basis
  std::vector<double> values;   // p + 1 entries
};

BasisValues eval_basis(const SplineBasis& basis, double x);

// Writes the p + 1 local values into out and returns the first index.
int eval_basis_into(const SplineBasis& basis, double x, std::span<double> out);

// Row-compressed design matrix: each row stores its first column and p + 1 values.
class DesignMatrix {
 public:
  DesignMatrix(const SplineBasis& basis, std::vector<double> xs);

  const SplineBasis& basis() const noexcept { return basis_; }
  int rows() const noexcept { return static_cast<int>(xs_.size()); }
  int cols() const noexcept { return basis_.num_basis(); }
  int width() const noexcept { return basis_.degree() + 1; }
  // M = n / K; need not be integral.
  double samples_per_interval() const noexcept {
    return static_cast<double>(rows()) / basis_.intervals();
  }
  const std::vector<double>& points() const noexcept { return xs_; }
  int first(int i) const { return first_[i]; }
  std::span<const double> row(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * width(), static_cast<std::size_t>(width())};
  }
  double at(int i, int j) const;

  // Dense row-major copy, rows() x cols().
  std::vector<double> to_dense() const;
  // B^T v for a length-n vector.
  std::vector<double> transpose_times(std::span<const double> v) const;

 private:
  SplineBasis basis_;
  std::vector<double> xs_;
  std::vector<int> first_;
  std::vector<double> values_;
};

DesignMatrix design_matrix(const SplineBasis& basis, std::span<const double> xs);

// Equidistant design x_i = (i - 1/2)/n.
std::vector<double> midpoint_design(int n);

// sum_k B_k(x) {Kx - k + (p+1)/2} with 1-based k; vanishes for p >= 1.
double first_moment_check(const SplineBasis& basis, double x);

}  // namespace psk
