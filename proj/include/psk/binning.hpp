#pragma once

#include <span>
#include <vector>

#include "psk/fitter.hpp"

namespace psk {

struct BinnedSample {
  int num_bins = 0;
  std::vector<double> centers;  // (k - 1/2) / I
  std::vector<double> means;    // 0 for empty bins
  std::vector<int> counts;

  long total() const;
};

// Bins [(k-1)/I, k/I), last bin closed.
BinnedSample bin_data(std::span<const double> xs, std::span<const double> ys, int num_bins);

enum class EmptyBinPolicy {
  Zero,           // empty bins enter the fit with mean 0 and full weight
  CountWeighted,  // bin k weighted by n_k I / n, so empty bins drop out
};

Smoother binned_smoother(const BinnedSample& sample, int p, int m, double lambda, int K,
                         EmptyBinPolicy policy = EmptyBinPolicy::Zero);
PSplineFit fit_binned(const BinnedSample& sample, int p, int m, double lambda, int K,
                      EmptyBinPolicy policy = EmptyBinPolicy::Zero);

// ceil(n^0.7), never below 2.
int default_bin_count(long n);

}  // namespace psk
