#include "psk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psk/error.hpp"
#include "psk/quadrature.hpp"

namespace psk {

PsiRoots::PsiRoots(int m) : m_(m) {
  if (m < 1 || m > 8) throw ArgumentError("kernel order m must lie in 1..8");
  // exp(i pi (m+1+2k)/(2m)) solves psi^(2m) = (-1)^(m+1).
  std::vector<cplx> cand;
  for (int k = 0; k < 2 * m; ++k) {
    const double ang = std::numbers::pi * (m + 1 + 2 * k) / (2.0 * m);
    double re = std::cos(ang);
    double im = std::sin(ang);
    if (std::abs(im) < 1e-15) im = 0.0;
    if (re > 1e-12) cand.emplace_back(re, im);
  }
  std::vector<cplx> upper;
  for (const auto& z : cand) {
    if (z.imag() == 0.0) values_.push_back(z);
    else if (z.imag() > 0) upper.push_back(z);
  }
  std::sort(upper.begin(), upper.end(), [](const cplx& a, const cplx& b) { return a.imag() < b.imag(); });
  for (const auto& z : upper) {
    values_.push_back(z);
    values_.push_back(std::conj(z));
  }
  if (static_cast<int>(values_.size()) != m) throw NumericalError("psi root enumeration failed");
  min_real_ = values_[0].real();
  for (const auto& z : values_) min_real_ = std::min(min_real_, z.real());
}

PsiRoots psi_roots(int m) { return PsiRoots(m); }

EquivalentKernel::EquivalentKernel(int m) : psi_(m) {}

double EquivalentKernel::operator()(double x) const {
  const double ax = std::abs(x);
  const auto& v = psi_.values();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = v[i].real();
    const double b = v[i].imag();
    if (b == 0.0) {
      s += a * std::exp(-a * ax);
    } else {
      s += 2.0 * std::exp(-a * ax) * (a * std::cos(b * ax) + b * std::sin(b * ax));
      ++i;  // skip the conjugate
    }
  }
  return s / (2.0 * order());
}

double EquivalentKernel::companion_q(double x) const {
  const double ax = std::abs(x);
  const auto& v = psi_.values();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = v[i].real();
    const double b = v[i].imag();
    if (b == 0.0) {
      s += a * a * std::exp(-a * ax);
    } else {
      s += 2.0 * std::exp(-a * ax) * ((a * a - b * b) * std::cos(b * ax) + 2.0 * a * b * std::sin(b * ax));
      ++i;
    }
  }
  return s / (2.0 * order());
}

cplx EquivalentKernel::complex_sum(double x) const {
  const double ax = std::abs(x);
  cplx s = 0.0;
  for (const auto& z : psi_.values()) s += z * std::exp(-z * ax);
  return s / (2.0 * order());
}

double EquivalentKernel::truncation(int ell) const {
  const double a = psi_.min_real();
  double t = 50.0 / a;
  // Grow T until the polynomially weighted tail bound is below 1e-14.
  while (ell > 0 && std::pow(t, ell) * std::exp(-a * t) / a >= 1e-14) t += 10.0 / a;
  return t;
}

double eval_H(const EquivalentKernel& kernel, double x) { return kernel(x); }

double kernel_moment(const EquivalentKernel& kernel, int ell) {
  if (ell < 0) throw ArgumentError("moment order must be nonnegative");
  const double t = kernel.truncation(ell);
  auto f = [&](double x) { return std::pow(x, ell) * kernel(x); };
  return integrate(f, -t, 0.0, 2.0) + integrate(f, 0.0, t, 2.0);
}

double kernel_l2_norm_sq(const EquivalentKernel& kernel) {
  const double t = kernel.truncation(0);
  auto f = [&](double x) {
    const double h = kernel(x);
    return h * h;
  };
  return 2.0 * integrate(f, 0.0, t, 2.0);
}

double kernel_estimate(const EquivalentKernel& kernel, std::span<const double> xs, std::span<const double> ys,
                       double x, double h) {
  if (!(h > 0)) throw ArgumentError("bandwidth must be positive");
  if (xs.size() != ys.size() || xs.empty()) throw ArgumentError("xs and ys must be nonempty and equally long");
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += ys[i] * kernel((x - xs[i]) / h);
  return s / (static_cast<double>(xs.size()) * h);
}

}  // namespace psk
