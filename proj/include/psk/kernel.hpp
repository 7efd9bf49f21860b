#pragma once

#include <complex>
#include <span>
#include <vector>

namespace psk {

using cplx = std::complex<double>;

// The m roots of x^(2m) + (-1)^m = 0 with positive real part. Ordered with
// the real root first (m odd), then conjugate pairs, upper member first, by
// increasing imaginary magnitude.
class PsiRoots {
 public:
  explicit PsiRoots(int m);

  int order() const noexcept { return m_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  const cplx& operator[](int i) const { return values_[i]; }
  int size() const noexcept { return m_; }
  // psi_0 = smallest real part; governs tail decay.
  double min_real() const noexcept { return min_real_; }

 private:
  int m_;
  std::vector<cplx> values_;
  double min_real_;
};

PsiRoots psi_roots(int m);

class EquivalentKernel {
 public:
  explicit EquivalentKernel(int m);

  int order() const noexcept { return psi_.order(); }
  const PsiRoots& psi() const noexcept { return psi_; }

  // H_m(x), evaluated in paired real form.
  double operator()(double x) const;
  // Q(x) = (1/2m) sum psi^2 exp(-psi |x|), real part.
  double companion_q(double x) const;
  // The unpaired complex sum (1/2m) sum psi exp(-psi |x|).
  cplx complex_sum(double x) const;

  // Integration half-width beyond which |x|^ell H(x) is negligible.
  double truncation(int ell) const;

 private:
  PsiRoots psi_;
};

double eval_H(const EquivalentKernel& kernel, double x);

// Integral of x^ell H_m(x) over the real line by adaptive quadrature.
double kernel_moment(const EquivalentKernel& kernel, int ell);

// Integral of H_m(u)^2 over the real line by quadrature.
double kernel_l2_norm_sq(const EquivalentKernel& kernel);

// mu*(x) = (n h)^{-1} sum_i y_i H_m((x - x_i)/h).
double kernel_estimate(const EquivalentKernel& kernel, std::span<const double> xs, std::span<const double> ys,
                       double x, double h);

}  // namespace psk
