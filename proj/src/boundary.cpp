#include "psk/boundary.hpp"

#include <cmath>
#include <sstream>

#include "psk/error.hpp"
#include "psk/quadrature.hpp"

namespace psk {

PsiMatrices psi_matrices(const PsiRoots& psi) {
  const int m = psi.order();
  PsiMatrices pm;
  pm.m = m;
  pm.psi1.resize(m, m);
  pm.psi2.resize(m, m);
  for (int i = 1; i <= m; ++i) {
    const double sign = ((m + i) % 2) ? -1.0 : 1.0;
    for (int j = 1; j <= m; ++j) {
      pm.psi1(i - 1, j - 1) = std::pow(psi[j - 1], m + i - 1);
      pm.psi2(i - 1, j - 1) = sign * std::pow(psi[j - 1], m + i);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pm.psi1);
  pm.b = lu.solve(pm.psi2);
  const double res = (pm.psi1 * pm.b - pm.psi2).cwiseAbs().maxCoeff();
  if (!(res < 1e-10)) throw NumericalError("boundary matrix solve residual too large");
  return pm;
}

Eigen::VectorXcd r_vec(const PsiRoots& psi, double x) {
  if (!(x >= 0.0)) throw DomainError("r(x) requires x >= 0");
  Eigen::VectorXcd r(psi.order());
  for (int j = 0; j < psi.order(); ++j) r(j) = std::exp(-psi[j] * x);
  return r;
}

Eigen::VectorXcd r_vec(int m, double x) { return r_vec(PsiRoots(m), x); }

BoundaryKernel::BoundaryKernel(int m) : kernel_(m), mats_(psi_matrices(kernel_.psi())) {}

double BoundaryKernel::correction(double x, double xt) const {
  if (!(x >= 0.0) || !(xt >= 0.0)) throw DomainError("boundary kernel arguments must be nonnegative");
  const cplx v = r_vec(psi(), xt).transpose() * mats_.b * r_vec(psi(), x);
  const cplx h = v / (2.0 * order());
  if (std::abs(h.imag()) > 1e-10) {
    std::ostringstream os;
    os << "boundary kernel is not real: m=" << order() << " x=" << x << " xt=" << xt << " value=" << h;
    throw NumericalError(os.str());
  }
  return h.real();
}

double BoundaryKernel::combined(double x, double xt) const { return kernel_(x - xt) + correction(x, xt); }

double eval_Hb(const BoundaryKernel& bk, double x, double xt) { return bk.correction(x, xt); }

namespace {

// Integrates g over (-T + t, t], splitting at the kink of H_m at 0.
double integrate_left_of(const std::function<double(double)>& g, double t, double span) {
  const double lo = t - span;
  if (t <= 0.0) return integrate(g, lo, t, 2.0);
  return integrate(g, lo, 0.0, 2.0) + integrate(g, 0.0, t, 2.0);
}

}  // namespace

double boundary_moment(const BoundaryKernel& bk, int ell, double t) {
  if (ell < 0 || ell > bk.order()) throw ArgumentError("boundary moment order must lie in 0..m");
  if (!(t >= 0.0)) throw DomainError("boundary position must be nonnegative");
  const double span = bk.interior().truncation(ell) + t;
  auto g = [&](double x) { return std::pow(x, ell) * (bk.interior()(x) + bk.correction(t, t - x)); };
  return integrate_left_of(g, t, span);
}

double boundary_l2_norm_sq(const BoundaryKernel& bk, double t) {
  if (!(t >= 0.0)) throw DomainError("boundary position must be nonnegative");
  const double span = bk.interior().truncation(0) + t;
  auto g = [&](double x) {
    const double k = bk.interior()(x) + bk.correction(t, t - x);
    return k * k;
  };
  return integrate_left_of(g, t, span);
}

BiasVariance boundary_bias_var(const BoundaryKernel& bk, double h, double c_x, double mu_m_at_0, double sigma2_at_0) {
  if (!(h > 0)) throw ArgumentError("bandwidth constant must be positive");
  if (!(c_x >= 0)) throw ArgumentError("c_x must be nonnegative");
  const int m = bk.order();
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  BiasVariance out;
  out.bias = mu_m_at_0 == 0.0 ? 0.0 : std::pow(-h, m) * mu_m_at_0 / fact * boundary_moment(bk, m, c_x);
  out.variance = sigma2_at_0 == 0.0 ? 0.0 : sigma2_at_0 / h * boundary_l2_norm_sq(bk, c_x);
  return out;
}

}  // namespace psk
