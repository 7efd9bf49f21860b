#include "psk/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psk/error.hpp"

namespace psk {

BandedSymmetric::BandedSymmetric(int dim, int half_bandwidth) : n_(dim), q_(half_bandwidth) {
  if (dim < 1) throw ArgumentError("band matrix dimension must be positive");
  if (half_bandwidth < 0) throw ArgumentError("half bandwidth must be nonnegative");
  bands_.assign(static_cast<std::size_t>(q_ + 1) * n_, 0.0);
}

double BandedSymmetric::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  const int d = j - i;
  return d > q_ ? 0.0 : band(d, i);
}

void BandedSymmetric::add(int i, int j, double v) {
  if (i > j) std::swap(i, j);
  const int d = j - i;
  if (d > q_) throw ArgumentError("entry outside the stored band");
  band(d, i) += v;
}

std::vector<double> BandedSymmetric::multiply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ArgumentError("vector length differs from matrix dimension");
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j) y[j] += band(0, j) * x[j];
  for (int d = 1; d <= q_; ++d) {
    for (int j = 0; j + d < n_; ++j) {
      const double a = band(d, j);
      y[j] += a * x[j + d];
      y[j + d] += a * x[j];
    }
  }
  return y;
}

std::vector<double> BandedSymmetric::to_dense() const {
  std::vector<double> a(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int d = 0; d <= q_; ++d) {
    for (int j = 0; j + d < n_; ++j) {
      a[static_cast<std::size_t>(j) * n_ + j + d] = band(d, j);
      a[static_cast<std::size_t>(j + d) * n_ + j] = band(d, j);
    }
  }
  return a;
}

std::vector<double> BandedSymmetric::column_band(int k) const {
  std::vector<double> w(static_cast<std::size_t>(q_ + 1), 0.0);
  for (int d = 0; d <= q_; ++d) w[d] = (k + d < n_) ? band(d, k) : 0.0;
  return w;
}

BandedSymmetric& BandedSymmetric::operator+=(const BandedSymmetric& other) {
  if (other.n_ != n_) throw ArgumentError("band matrix dimensions differ");
  if (other.q_ > q_) throw ArgumentError("cannot add a wider band in place");
  for (int d = 0; d <= other.q_; ++d)
    for (int j = 0; j + d < n_; ++j) band(d, j) += other.band(d, j);
  return *this;
}

BandedSymmetric& BandedSymmetric::scale(double s) {
  for (auto& v : bands_) v *= s;
  return *this;
}

BandedCholesky::BandedCholesky(const BandedSymmetric& a) : n_(a.dim()), q_(a.half_bandwidth()) {
  const int w = q_ + 1;
  l_.assign(static_cast<std::size_t>(n_) * w, 0.0);
  auto L = [&](int i, int k) -> double& { return l_[static_cast<std::size_t>(i) * w + (i - k)]; };
  const double eps = std::numeric_limits<double>::epsilon();

  for (int j = 0; j < n_; ++j) {
    const int k0 = std::max(0, j - q_);
    double s = a.band(0, j);
    for (int k = k0; k < j; ++k) s -= L(j, k) * L(j, k);
    if (!(s > eps * std::abs(a.band(0, j))) || !std::isfinite(s)) {
      throw SingularityError("band Cholesky broke down: matrix is not positive definite",
                             static_cast<std::size_t>(j));
    }
    const double djj = std::sqrt(s);
    L(j, j) = djj;
    const int imax = std::min(n_ - 1, j + q_);
    for (int i = j + 1; i <= imax; ++i) {
      double t = a.band(i - j, j);
      for (int k = std::max(k0, i - q_); k < j; ++k) t -= L(i, k) * L(j, k);
      L(i, j) = t / djj;
    }
  }
}

void BandedCholesky::solve_in_place(std::span<double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ArgumentError("rhs length differs from matrix dimension");
  const int w = q_ + 1;
  auto L = [&](int i, int k) { return l_[static_cast<std::size_t>(i) * w + (i - k)]; };
  for (int i = 0; i < n_; ++i) {
    double s = x[i];
    for (int k = std::max(0, i - q_); k < i; ++k) s -= L(i, k) * x[k];
    x[i] = s / L(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k <= std::min(n_ - 1, i + q_); ++k) s -= L(k, i) * x[k];
    x[i] = s / L(i, i);
  }
}

std::vector<double> BandedCholesky::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

std::vector<double> banded_solve(const BandedSymmetric& a, std::span<const double> rhs) {
  return BandedCholesky(a).solve(rhs);
}

}  // namespace psk
