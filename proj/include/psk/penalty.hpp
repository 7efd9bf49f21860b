#pragma once

#include <span>
#include <vector>

#include "psk/banded.hpp"
#include "psk/basis.hpp"

namespace psk {

double binomial(int n, int k);

// m-th order difference operator on R^c, shape (c - m) x c.
class PenaltyOperator {
 public:
  PenaltyOperator(int order, int dim);

  int order() const noexcept { return m_; }
  int dim() const noexcept { return c_; }
  int rows() const noexcept { return c_ - m_; }

  // Entry of row r at column r + l: (-1)^(m-l) C(m, l).
  double coefficient(int l) const { return coef_[l]; }
  double at(int r, int col) const;

  std::vector<double> apply(std::span<const double> theta) const;
  std::vector<double> to_dense() const;  // row-major rows() x dim()

  // Central band of D^T D: entries at offsets -m..m, i.e. (-1)^d C(2m, m+d).
  const std::vector<double>& dtd_band() const noexcept { return dtd_band_; }
  // Exact (D^T D)(i, j), including the truncated boundary rows.
  double dtd(int i, int j) const;

 private:
  int m_;
  int c_;
  std::vector<double> coef_;
  std::vector<double> dtd_band_;
};

PenaltyOperator diff_matrix(int m, int c);

// B^T B / M stored with the requested half bandwidth (>= p).
BandedSymmetric gram_matrix(const DesignMatrix& design, int half_bandwidth);
// D^T D stored with the requested half bandwidth (>= m).
BandedSymmetric penalty_matrix(const PenaltyOperator& pen, int half_bandwidth);

// Lambda = B^T B / M + lambda D^T D with half bandwidth max(p, m).
BandedSymmetric assemble_lambda(const DesignMatrix& design, const PenaltyOperator& pen, double lambda);
// Same, with optional per-observation weights (B^T W B / M).
BandedSymmetric assemble_lambda(const DesignMatrix& design, const PenaltyOperator& pen, double lambda,
                                std::span<const double> obs_weights);

// Interior band u_0..u_p of B^T B / M; throws DomainError when the interior
// columns do not share one band (tolerance 1e-9).
std::vector<double> gram_band(const DesignMatrix& design);

// Limit of gram_band as M -> infinity: u_d = integral of B(x) B(x + d) on unit spacing.
std::vector<double> continuous_gram_band(int p);

// Shared band omega_0..omega_q read on interior columns q..c-q-1 (0-based);
// throws DomainError if they differ by more than 1e-9 relative.
std::vector<double> interior_band(const BandedSymmetric& a);

}  // namespace psk
