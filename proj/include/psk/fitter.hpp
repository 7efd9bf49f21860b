#pragma once

#include <memory>
#include <span>
#include <vector>

#include "psk/banded.hpp"
#include "psk/basis.hpp"
#include "psk/penalty.hpp"

namespace psk {

class PSplineFit {
 public:
  PSplineFit(SplineBasis basis, int penalty_order, double lambda, std::vector<double> coefficients,
             std::shared_ptr<const BandedCholesky> factor);

  const SplineBasis& basis() const noexcept { return basis_; }
  int penalty_order() const noexcept { return m_; }
  double lambda() const noexcept { return lambda_; }
  const std::vector<double>& coefficients() const noexcept { return theta_; }
  const BandedCholesky& factorization() const noexcept { return *factor_; }

  double operator()(double x) const;

 private:
  SplineBasis basis_;
  int m_;
  double lambda_;
  std::vector<double> theta_;
  std::shared_ptr<const BandedCholesky> factor_;
};

// Factors Lambda once for a fixed design, penalty and lambda, then serves
// fits and weight vectors. Optional observation weights scale rows of B^T B / M.
class Smoother {
 public:
  Smoother(DesignMatrix design, const PenaltyOperator& pen, double lambda,
           std::span<const double> obs_weights = {});

  const DesignMatrix& design() const noexcept { return design_; }
  const BandedSymmetric& lambda_matrix() const noexcept { return lambda_matrix_; }
  double lambda() const noexcept { return lambda_; }
  int penalty_order() const noexcept { return m_; }

  PSplineFit fit(std::span<const double> y) const;
  // Coefficients only; avoids copying the basis for hot loops.
  std::vector<double> coefficients(std::span<const double> y) const;
  // w(x) with mu_hat(x) = sum_i w_i(x) y_i.
  std::vector<double> weights(double x) const;

 private:
  DesignMatrix design_;
  int m_;
  double lambda_;
  std::vector<double> obs_weights_;
  BandedSymmetric lambda_matrix_;
  std::shared_ptr<const BandedCholesky> factor_;
};

PSplineFit fit(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, std::span<const double> y);
double predict(const PSplineFit& fit, double x);
std::vector<double> weight_vector(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, double x);

}  // namespace psk
