#include "psk/penalty.hpp"

#include <algorithm>
#include <cmath>

#include "psk/error.hpp"

namespace psk {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

PenaltyOperator::PenaltyOperator(int order, int dim) : m_(order), c_(dim) {
  if (order < 1) throw ArgumentError("penalty order must be at least 1");
  if (order >= dim) throw ArgumentError("penalty order must be smaller than the number of coefficients");
  coef_.resize(static_cast<std::size_t>(m_ + 1));
  for (int l = 0; l <= m_; ++l) coef_[l] = ((m_ - l) % 2 ? -1.0 : 1.0) * binomial(m_, l);
  dtd_band_.resize(static_cast<std::size_t>(2 * m_ + 1));
  for (int d = -m_; d <= m_; ++d) dtd_band_[d + m_] = (std::abs(d) % 2 ? -1.0 : 1.0) * binomial(2 * m_, m_ + d);
}

double PenaltyOperator::at(int r, int col) const {
  const int l = col - r;
  return (l < 0 || l > m_) ? 0.0 : coef_[l];
}

std::vector<double> PenaltyOperator::apply(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != c_) throw ArgumentError("coefficient vector has wrong length");
  std::vector<double> out(static_cast<std::size_t>(rows()), 0.0);
  for (int r = 0; r < rows(); ++r)
    for (int l = 0; l <= m_; ++l) out[r] += coef_[l] * theta[r + l];
  return out;
}

std::vector<double> PenaltyOperator::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(rows()) * c_, 0.0);
  for (int r = 0; r < rows(); ++r)
    for (int l = 0; l <= m_; ++l) d[static_cast<std::size_t>(r) * c_ + r + l] = coef_[l];
  return d;
}

double PenaltyOperator::dtd(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (j - i > m_) return 0.0;
  double s = 0.0;
  for (int r = std::max(0, j - m_); r <= std::min(i, rows() - 1); ++r) s += coef_[i - r] * coef_[j - r];
  return s;
}

PenaltyOperator diff_matrix(int m, int c) { return PenaltyOperator(m, c); }

BandedSymmetric gram_matrix(const DesignMatrix& design, int half_bandwidth) {
  const int p = design.basis().degree();
  if (half_bandwidth < p) throw ArgumentError("half bandwidth smaller than spline degree");
  BandedSymmetric g(design.cols(), half_bandwidth);
  const double inv_m = 1.0 / design.samples_per_interval();
  for (int i = 0; i < design.rows(); ++i) {
    const auto r = design.row(i);
    const int f = design.first(i);
    for (int a = 0; a <= p; ++a)
      for (int b = a; b <= p; ++b) g.band(b - a, f + a) += r[a] * r[b] * inv_m;
  }
  return g;
}

BandedSymmetric penalty_matrix(const PenaltyOperator& pen, int half_bandwidth) {
  const int m = pen.order();
  if (half_bandwidth < m) throw ArgumentError("half bandwidth smaller than penalty order");
  BandedSymmetric a(pen.dim(), half_bandwidth);
  for (int d = 0; d <= m; ++d)
    for (int j = 0; j + d < pen.dim(); ++j) a.band(d, j) = pen.dtd(j, j + d);
  return a;
}

BandedSymmetric assemble_lambda(const DesignMatrix& design, const PenaltyOperator& pen, double lambda,
                                std::span<const double> obs_weights) {
  if (pen.dim() != design.cols()) throw ArgumentError("penalty dimension differs from basis dimension");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ArgumentError("smoothing parameter must be finite and >= 0");
  const int p = design.basis().degree();
  const int m = pen.order();
  const int q = std::max(p, m);
  BandedSymmetric a(design.cols(), q);
  const double inv_m = 1.0 / design.samples_per_interval();
  const bool weighted = !obs_weights.empty();
  if (weighted && static_cast<int>(obs_weights.size()) != design.rows())
    throw ArgumentError("observation weights length differs from design rows");
  for (int i = 0; i < design.rows(); ++i) {
    const auto r = design.row(i);
    const int f = design.first(i);
    const double s = weighted ? obs_weights[i] * inv_m : inv_m;
    for (int x = 0; x <= p; ++x)
      for (int y = x; y <= p; ++y) a.band(y - x, f + x) += r[x] * r[y] * s;
  }
  if (lambda > 0.0) {
    for (int d = 0; d <= m; ++d)
      for (int j = 0; j + d < pen.dim(); ++j) a.band(d, j) += lambda * pen.dtd(j, j + d);
  }
  return a;
}

BandedSymmetric assemble_lambda(const DesignMatrix& design, const PenaltyOperator& pen, double lambda) {
  return assemble_lambda(design, pen, lambda, {});
}

std::vector<double> gram_band(const DesignMatrix& design) {
  const int p = design.basis().degree();
  const int c = design.cols();
  if (design.rows() < c) throw ArgumentError("gram band needs n >= c");
  if (c - 2 * p < 1) throw ArgumentError("no interior columns: need K > p");
  const BandedSymmetric g = gram_matrix(design, p);
  const int mid = c / 2;
  std::vector<double> u = g.column_band(mid);
  for (int k = p; k <= c - p - 1; ++k) {
    for (int d = 0; d <= p; ++d) {
      if (std::abs(g.band(d, k) - u[d]) > 1e-9)
        throw DomainError("Gram band is not constant over interior columns; design is not translation invariant");
    }
  }
  return u;
}

std::vector<double> continuous_gram_band(int p) {
  if (p < 0) throw ArgumentError("spline degree must be nonnegative");
  // Cardinal B-spline of order r = 2p+2 evaluated at p+1+d.
  const int r = 2 * p + 2;
  double fact = 1.0;
  for (int i = 2; i < r; ++i) fact *= i;
  std::vector<double> u(static_cast<std::size_t>(p + 1));
  for (int d = 0; d <= p; ++d) {
    const double x = p + 1 + d;
    double s = 0.0;
    for (int j = 0; j <= r; ++j) {
      if (x - j <= 0) break;
      s += ((j % 2) ? -1.0 : 1.0) * binomial(r, j) * std::pow(x - j, r - 1);
    }
    u[d] = s / fact;
  }
  return u;
}

std::vector<double> interior_band(const BandedSymmetric& a) {
  const int q = a.half_bandwidth();
  const int c = a.dim();
  if (c - 2 * q < 1) throw ArgumentError("matrix too small to have interior columns");
  std::vector<double> w = a.column_band(c / 2);
  double scale = 0.0;
  for (double v : w) scale = std::max(scale, std::abs(v));
  for (int k = q; k <= c - q - 1; ++k)
    for (int d = 0; d <= q; ++d)
      if (std::abs(a.band(d, k) - w[d]) > 1e-9 * std::max(1.0, scale))
        throw DomainError("interior band is not constant across interior columns");
  return w;
}

}  // namespace psk
