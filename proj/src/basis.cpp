#include "psk/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psk/error.hpp"

namespace psk {

namespace {

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("evaluation point " + std::to_string(x) + " lies outside [0,1]");
  }
}

}  // namespace

SplineBasis::SplineBasis(int degree, int intervals) : p_(degree), k_(intervals) {
  if (degree < 0) throw ArgumentError("spline degree must be nonnegative");
  if (intervals < 2) throw ArgumentError("need at least two knot intervals");
  knots_.resize(static_cast<std::size_t>(k_ + 2 * p_ + 1));
  for (int j = 0; j <= k_ + 2 * p_; ++j) {
    knots_[j] = static_cast<double>(j - p_) / k_;
  }
}

int SplineBasis::interval_of(double x) const {
  check_unit(x);
  int i = static_cast<int>(std::floor(x * k_));
  // Guard floating rounding near knots so that knots_[i+p] <= x < knots_[i+p+1].
  if (i > 0 && x < knots_[i + p_]) --i;
  if (i < k_ - 1 && x >= knots_[i + p_ + 1]) ++i;
  return std::clamp(i, 0, k_ - 1);
}

int eval_basis_into(const SplineBasis& basis, double x, std::span<double> out) {
  const int p = basis.degree();
  if (static_cast<int>(out.size()) < p + 1) throw ArgumentError("output span too small");
  const int i = basis.interval_of(x);
  const int span = i + p;
  const auto& t = basis.knots();

  // Cox-de Boor on the local window (de Boor's triangular scheme).
  double left[32];
  double right[32];
  if (p >= 32) throw ArgumentError("spline degree too large");
  out[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - t[span + 1 - j];
    right[j] = t[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    out[j] = saved;
  }
  return i;
}

BasisValues eval_basis(const SplineBasis& basis, double x) {
  BasisValues bv;
  bv.values.assign(static_cast<std::size_t>(basis.degree() + 1), 0.0);
  bv.first_index = eval_basis_into(basis, x, bv.values);
  return bv;
}

DesignMatrix::DesignMatrix(const SplineBasis& basis, std::vector<double> xs)
    : basis_(basis), xs_(std::move(xs)) {
  if (xs_.empty()) throw ArgumentError("design needs at least one point");
  const int w = width();
  first_.resize(xs_.size());
  values_.resize(xs_.size() * static_cast<std::size_t>(w));
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    first_[i] = eval_basis_into(basis_, xs_[i], {values_.data() + i * w, static_cast<std::size_t>(w)});
  }
}

double DesignMatrix::at(int i, int j) const {
  const int off = j - first_[i];
  if (off < 0 || off >= width()) return 0.0;
  return values_[static_cast<std::size_t>(i) * width() + off];
}

std::vector<double> DesignMatrix::to_dense() const {
  const int n = rows();
  const int c = cols();
  std::vector<double> d(static_cast<std::size_t>(n) * c, 0.0);
  for (int i = 0; i < n; ++i) {
    auto r = row(i);
    for (int l = 0; l < width(); ++l) d[static_cast<std::size_t>(i) * c + first_[i] + l] = r[l];
  }
  return d;
}

std::vector<double> DesignMatrix::transpose_times(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != rows()) throw ArgumentError("vector length differs from design rows");
  std::vector<double> out(static_cast<std::size_t>(cols()), 0.0);
  for (int i = 0; i < rows(); ++i) {
    auto r = row(i);
    for (int l = 0; l < width(); ++l) out[first_[i] + l] += r[l] * v[i];
  }
  return out;
}

DesignMatrix design_matrix(const SplineBasis& basis, std::span<const double> xs) {
  return DesignMatrix(basis, std::vector<double>(xs.begin(), xs.end()));
}

std::vector<double> midpoint_design(int n) {
  if (n < 1) throw ArgumentError("design size must be positive");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[i] = (i + 0.5) / n;
  return xs;
}

double first_moment_check(const SplineBasis& basis, double x) {
  const int p = basis.degree();
  if (p == 0) throw UnsupportedError("first-moment identity needs degree >= 1");
  const auto bv = eval_basis(basis, x);
  const double kx = basis.intervals() * x;
  double s = 0.0;
  for (int l = 0; l <= p; ++l) {
    const int k1 = bv.first_index + l + 1;
    s += bv.values[l] * (kx - k1 + (p + 1) / 2.0);
  }
  return s;
}

}  // namespace psk
