#include "psk/binning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psk/error.hpp"

namespace psk {

long BinnedSample::total() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

BinnedSample bin_data(std::span<const double> xs, std::span<const double> ys, int num_bins) {
  if (num_bins < 2) throw ArgumentError("need at least two bins");
  if (xs.size() != ys.size()) throw ArgumentError("xs and ys differ in length");
  BinnedSample s;
  s.num_bins = num_bins;
  s.centers.resize(num_bins);
  s.means.assign(num_bins, 0.0);
  s.counts.assign(num_bins, 0);
  for (int k = 0; k < num_bins; ++k) s.centers[k] = (k + 0.5) / num_bins;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binning requires all x in [0,1]");
    const int k = std::min(static_cast<int>(std::floor(x * num_bins)), num_bins - 1);
    s.means[k] += ys[i];
    s.counts[k] += 1;
  }
  for (int k = 0; k < num_bins; ++k)
    if (s.counts[k] > 0) s.means[k] /= s.counts[k];
  return s;
}

Smoother binned_smoother(const BinnedSample& sample, int p, int m, double lambda, int K, EmptyBinPolicy policy) {
  const SplineBasis basis(p, K);
  DesignMatrix design(basis, sample.centers);
  const PenaltyOperator pen(m, basis.num_basis());
  if (policy == EmptyBinPolicy::Zero) return Smoother(std::move(design), pen, lambda);
  const double n = static_cast<double>(sample.total());
  if (n <= 0) throw ArgumentError("binned sample holds no observations");
  std::vector<double> w(sample.counts.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = sample.counts[k] * sample.num_bins / n;
  return Smoother(std::move(design), pen, lambda, w);
}

PSplineFit fit_binned(const BinnedSample& sample, int p, int m, double lambda, int K, EmptyBinPolicy policy) {
  return binned_smoother(sample, p, m, lambda, K, policy).fit(sample.means);
}

int default_bin_count(long n) {
  if (n < 1) throw ArgumentError("sample size must be positive");
  return std::max(2, static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 0.7))));
}

}  // namespace psk
