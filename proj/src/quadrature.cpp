#include "psk/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "psk/error.hpp"

namespace psk {

double integrate(const std::function<double(double)>& f, double a, double b, double panel_width, double rel_tol) {
  if (!(panel_width > 0)) throw ArgumentError("panel width must be positive");
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * w;
    const double hi = (k + 1 == panels) ? b : lo + w;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, rel_tol);
  }
  return sign * total;
}

}  // namespace psk
