#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psk/fitter.hpp"

namespace psk {

struct EquivalenceConfig {
  int n = 0;
  int K = 0;
  int p = 0;
  int m = 0;
  double lambda = 0.0;
  double x = 0.0;
};

enum class KernelReference { Interior, LeftBoundary, TwoSided };

struct EquivalenceReport {
  EquivalenceConfig config;
  KernelReference reference = KernelReference::Interior;
  double h_n = 0.0;              // lambda^{1/(2m)} / K
  double sup_discrepancy = 0.0;  // max_i |d_i|
  double l2_discrepancy = 0.0;   // sqrt(sum_i d_i^2 / (n h_n))
  double predicted_order = 0.0;  // dominant remainder rate in lambda
  std::vector<double> kernel_term;   // reference kernel value per observation
  std::vector<double> discrepancy;   // d_i = n h_n w_i(x) - kernel_term_i
};

// Against H_m((x - x_i)/h_n); requires min(x, 1-x) >= 10 h_n.
EquivalenceReport compare_interior(const Smoother& smoother, double x);
EquivalenceReport compare_interior(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, double x);

// Against H_m + H_b(x/h_n, x_i/h_n); requires x <= 5 h_n.
EquivalenceReport compare_boundary(const Smoother& smoother, double x);
EquivalenceReport compare_boundary(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, double x);

// Against H_m plus the left correction and the reflected right correction;
// valid for any x in [0,1].
EquivalenceReport compare_two_sided(const Smoother& smoother, double x);
EquivalenceReport compare_two_sided(const DesignMatrix& design, const PenaltyOperator& pen, double lambda, double x);

struct ScanPoint {
  double knob = 0.0;
  double value = 0.0;
};

struct RateScan {
  std::vector<ScanPoint> points;
  std::optional<double> slope;  // least-squares log-log slope; empty when undefined
  bool verdict_ready = false;   // at least three distinct points
};

RateScan rate_scan(std::span<const ScanPoint> points);

void write_equivalence_csv(std::ostream& os, std::span<const EquivalenceReport> reports);

}  // namespace psk
