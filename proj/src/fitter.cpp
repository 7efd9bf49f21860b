#include "psk/fitter.hpp"

#include <cmath>

#include "psk/error.hpp"

namespace psk {

PSplineFit::PSplineFit(SplineBasis basis, int penalty_order, double lambda, std::vector<double> coefficients,
                       std::shared_ptr<const BandedCholesky> factor)
    : basis_(std::move(basis)),
      m_(penalty_order),
      lambda_(lambda),
      theta_(std::move(coefficients)),
      factor_(std::move(factor)) {
  if (static_cast<int>(theta_.size()) != basis_.num_basis()) throw ArgumentError("coefficient count differs from basis size");
}

double PSplineFit::operator()(double x) const {
  double vals[32];
  const int p = basis_.degree();
  const int f = eval_basis_into(basis_, x, {vals, static_cast<std::size_t>(p + 1)});
  double s = 0.0;
  for (int l = 0; l <= p; ++l) s += vals[l] * theta_[f + l];
  return s;
}

Smoother::Smoother(DesignMatrix design, const PenaltyOperator& pen, double lambda,
                   std::span<const double> obs_weights)
    : design_(std::move(design)),
      m_(pen.order()),
      lambda_(lambda),
      obs_weights_(obs_weights.begin(), obs_weights.end()) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ArgumentError("smoothing parameter must be finite and >= 0");
  if (lambda == 0.0 && design_.rows() < design_.cols()) {
    throw SingularityError("lambda = 0 with fewer observations than basis functions", static_cast<std::size_t>(design_.rows()));
  }
  lambda_matrix_ = assemble_lambda(design_, pen, lambda_, obs_weights_);
  factor_ = std::make_shared<const BandedCholesky>(lambda_matrix_);
}

std::vector<double> Smoother::coefficients(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != design_.rows()) throw ArgumentError("response length differs from design rows");
  std::vector<double> rhs;
  if (obs_weights_.empty()) {
    rhs = design_.transpose_times(y);
  } else {
    std::vector<double> wy(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) wy[i] = obs_weights_[i] * y[i];
    rhs = design_.transpose_times(wy);
  }
  const double inv_m = 1.0 / design_.samples_per_interval();
  for (auto& v : rhs) v *= inv_m;
  factor_->solve_in_place(rhs);
  return rhs;
}

PSplineFit Smoother::fit(std::span<const double> y) const {
  return PSplineFit(design_.basis(), m_, lambda_, coefficients(y), factor_);
}

std::vector<double> Smoother::weights(double x) const {
  const SplineBasis& basis = design_.basis();
  const auto bx = eval_basis(basis, x);
  std::vector<double> z(static_cast<std::size_t>(design_.cols()), 0.0);
  for (std::size_t l = 0; l < bx.values.size(); ++l) z[bx.first_index + l] = bx.values[l];
  factor_->solve_in_place(z);  // z = Lambda^{-1} B(x)
  const double inv_m = 1.0 / design_.samples_per_interval();
  std::vector<double> w(static_cast<std::size_t>(design_.rows()));
  for (int i = 0; i < design_.rows(); ++i) {
    const auto r = design_.row(i);
    const int f = design_.first(i);
    double s = 0.0;
    for (int l = 0; l < design_.width(); ++l) s += r[l] * z[f + l];
    w[i] = s * inv_m * (obs_weights_.empty() ? 1.0 : obs_weights_[i]);
  }
  return w;
}

PSplineFit fit(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, std::span<const double> y) {
  return Smoother(design, pen, lambda).fit(y);
}

double predict(const PSplineFit& f, double x) { return f(x); }

std::vector<double> weight_vector(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, double x) {
  return Smoother(design, pen, lambda).weights(x);
}

}  // namespace psk
