#pragma once

#include <functional>

namespace psk {

// Adaptive Gauss-Kronrod (31 point) on [a, b], split into panels no wider
// than panel_width so that oscillating, exponentially decaying integrands
// are resolved.
double integrate(const std::function<double(double)>& f, double a, double b, double panel_width = 1.0,
                 double rel_tol = 1e-13);

}  // namespace psk
