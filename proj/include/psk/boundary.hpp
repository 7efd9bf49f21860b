#pragma once

#include <Eigen/Dense>
#include <vector>

#include "psk/kernel.hpp"

namespace psk {

struct PsiMatrices {
  int m = 0;
  Eigen::MatrixXcd psi1;  // (i,j) = psi_j^(m+i-1), 1-based
  Eigen::MatrixXcd psi2;  // (i,j) = (-1)^(m+i) psi_j^(m+i), 1-based
  Eigen::MatrixXcd b;     // psi1^{-1} psi2
};

PsiMatrices psi_matrices(const PsiRoots& psi);

// r(x) = (exp(-psi_1 x), ..., exp(-psi_m x)), x >= 0.
Eigen::VectorXcd r_vec(const PsiRoots& psi, double x);
Eigen::VectorXcd r_vec(int m, double x);

class BoundaryKernel {
 public:
  explicit BoundaryKernel(int m);

  int order() const noexcept { return kernel_.order(); }
  const PsiRoots& psi() const noexcept { return kernel_.psi(); }
  const EquivalentKernel& interior() const noexcept { return kernel_; }
  const PsiMatrices& matrices() const noexcept { return mats_; }

  // H_b(x, xt) = Re[r(xt)^T B r(x)] / (2m), both arguments >= 0.
  double correction(double x, double xt) const;
  // H_m(x - xt) + H_b(x, xt).
  double combined(double x, double xt) const;

 private:
  EquivalentKernel kernel_;
  PsiMatrices mats_;
};

double eval_Hb(const BoundaryKernel& bk, double x, double xt);

// Integral over (-inf, t] of x^ell {H_m(x) + H_b(t, t - x)}.
double boundary_moment(const BoundaryKernel& bk, int ell, double t);

// Integral over (-inf, t] of {H_m(x) + H_b(t, t - x)}^2.
double boundary_l2_norm_sq(const BoundaryKernel& bk, double t);

struct BiasVariance {
  double bias = 0.0;
  double variance = 0.0;
};

// Asymptotic constants of the boundary estimator at x = c_x h_n, on the
// n^{m/(2m+1)} scale:
//   bias     = (-h)^m mu^(m)(0) / m! * int u^m K
//   variance = sigma^2(0) / h * int K^2
BiasVariance boundary_bias_var(const BoundaryKernel& bk, double h, double c_x, double mu_m_at_0, double sigma2_at_0);

}  // namespace psk
