#include "psk/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "psk/boundary.hpp"
#include "psk/error.hpp"

namespace psk {

namespace {

EquivalenceReport compare_with(const Smoother& sm, double x, KernelReference ref) {
  const DesignMatrix& design = sm.design();
  const int m = sm.penalty_order();
  EquivalenceReport rep;
  rep.config = {design.rows(), design.basis().intervals(), design.basis().degree(), m, sm.lambda(), x};
  rep.reference = ref;
  rep.h_n = std::pow(sm.lambda(), 1.0 / (2.0 * m)) / design.basis().intervals();
  rep.predicted_order = m == 1 ? std::pow(sm.lambda(), -0.5) : std::pow(sm.lambda(), -1.0 / m);
  if (!(rep.h_n > 0)) throw ArgumentError("equivalence comparison needs lambda > 0");

  const double h = rep.h_n;
  if (ref == KernelReference::Interior && std::min(x, 1.0 - x) < 10.0 * h)
    throw DomainError("x is within 10 h_n of the boundary; use compare_boundary");
  if (ref == KernelReference::LeftBoundary && x > 5.0 * h)
    throw DomainError("x is farther than 5 h_n from the left boundary; use compare_interior");

  const BoundaryKernel bk(m);
  const auto w = sm.weights(x);
  const auto& xs = design.points();
  const int n = design.rows();
  rep.kernel_term.resize(n);
  rep.discrepancy.resize(n);
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    double k = bk.interior()((x - xs[i]) / h);
    if (ref != KernelReference::Interior) k += bk.correction(x / h, xs[i] / h);
    if (ref == KernelReference::TwoSided) k += bk.correction((1.0 - x) / h, (1.0 - xs[i]) / h);
    rep.kernel_term[i] = k;
    const double d = n * h * w[i] - k;
    rep.discrepancy[i] = d;
    rep.sup_discrepancy = std::max(rep.sup_discrepancy, std::abs(d));
    ss += d * d;
  }
  rep.l2_discrepancy = std::sqrt(ss / (n * h));
  return rep;
}

}  // namespace

EquivalenceReport compare_interior(const Smoother& sm, double x) {
  return compare_with(sm, x, KernelReference::Interior);
}
EquivalenceReport compare_interior(const DesignMatrix& d, const PenaltyOperator& pen, double lambda, double x) {
  return compare_interior(Smoother(d, pen, lambda), x);
}
EquivalenceReport compare_boundary(const Smoother& sm, double x) {
  return compare_with(sm, x, KernelReference::LeftBoundary);
}
EquivalenceReport compare_boundary(const DesignMatrix& d, const PenaltyOperator& pen, double lambda, double x) {
  return compare_boundary(Smoother(d, pen, lambda), x);
}
EquivalenceReport compare_two_sided(const Smoother& sm, double x) {
  return compare_with(sm, x, KernelReference::TwoSided);
}
EquivalenceReport compare_two_sided(const DesignMatrix& d, const PenaltyOperator& pen, double lambda, double x) {
  return compare_two_sided(Smoother(d, pen, lambda), x);
}

RateScan rate_scan(std::span<const ScanPoint> points) {
  if (points.size() < 2) throw ArgumentError("a rate scan needs at least two configurations");
  RateScan rs;
  rs.points.assign(points.begin(), points.end());
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& pt : points) {
    if (!(pt.knob > 0) || !(pt.value > 0)) throw ArgumentError("rate scan values must be positive");
    sx += std::log(pt.knob);
    sy += std::log(pt.value);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    const double dx = std::log(pt.knob) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(pt.value) - my);
  }
  if (sxx > 1e-24) rs.slope = sxy / sxx;
  std::vector<double> knobs;
  for (const auto& pt : points) knobs.push_back(pt.knob);
  std::sort(knobs.begin(), knobs.end());
  const auto distinct = std::unique(knobs.begin(), knobs.end()) - knobs.begin();
  rs.verdict_ready = rs.slope.has_value() && distinct >= 3;
  return rs;
}

void write_equivalence_csv(std::ostream& os, std::span<const EquivalenceReport> reports) {
  os << "n,K,p,m,lambda,h_n,x,sup_disc,l2_disc\n";
  const auto old = os.precision(12);
  for (const auto& r : reports) {
    os << r.config.n << ',' << r.config.K << ',' << r.config.p << ',' << r.config.m << ',' << r.config.lambda << ','
       << r.h_n << ',' << r.config.x << ',' << r.sup_discrepancy << ',' << r.l2_discrepancy << '\n';
  }
  os.precision(old);
}

}  // namespace psk
