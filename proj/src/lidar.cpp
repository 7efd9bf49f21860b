#include "psk/lidar.hpp"

#include <cmath>
#include <random>

namespace psk {

XYData synthetic_lidar(std::uint64_t seed) {
  constexpr int n = 221;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  XYData d;
  for (int i = 0; i < n; ++i) {
    const double range = std::round(390.0 + 330.0 * i / (n - 1));
    const double mean = -0.05 - 0.75 / (1.0 + std::exp(-(range - 610.0) / 25.0));
    const double u = (range - 390.0) / 330.0;
    const double sd = 0.02 + 0.18 * u * u;
    d.xs.push_back(range);
    d.ys.push_back(mean + sd * z(gen));
  }
  return d;
}

}  // namespace psk
