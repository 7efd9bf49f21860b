#include "psk/targets.hpp"

#include <cmath>
#include <numbers>

#include "psk/error.hpp"

namespace psk {

TargetFunction TargetFunction::from_name(const std::string& name) {
  if (name == "sin2pi") return TargetFunction(Kind::Sin2Pi);
  if (name == "quad_half") return TargetFunction(Kind::QuadHalf);
  if (name == "linear") return TargetFunction(Kind::Linear);
  if (name == "const") return TargetFunction(Kind::Constant);
  if (name == "exp") return TargetFunction(Kind::Exp);
  throw ValidationError("unknown target function '" + name + "'");
}

std::vector<std::string> TargetFunction::names() { return {"sin2pi", "quad_half", "linear", "const", "exp"}; }

std::string TargetFunction::name() const {
  switch (kind_) {
    case Kind::Sin2Pi: return "sin2pi";
    case Kind::QuadHalf: return "quad_half";
    case Kind::Linear: return "linear";
    case Kind::Constant: return "const";
    case Kind::Exp: return "exp";
  }
  return "";
}

double TargetFunction::derivative(double x, int order) const {
  switch (kind_) {
    case Kind::Sin2Pi: {
      const double w = 2.0 * std::numbers::pi;
      return std::pow(w, order) * std::sin(w * x + order * std::numbers::pi / 2.0);
    }
    case Kind::QuadHalf:
      return order == 0 ? 0.5 * x * x : order == 1 ? x : order == 2 ? 1.0 : 0.0;
    case Kind::Linear:
      return order == 0 ? x : order == 1 ? 1.0 : 0.0;
    case Kind::Constant:
      return order == 0 ? 1.0 : 0.0;
    case Kind::Exp:
      return std::exp(x);
  }
  return 0.0;
}

DesignDensity DesignDensity::from_name(const std::string& name) {
  if (name == "uniform") return DesignDensity(Kind::Uniform);
  if (name == "linear") return DesignDensity(Kind::Linear);
  if (name == "bump") return DesignDensity(Kind::Bump);
  throw ValidationError("unknown design density '" + name + "'");
}

std::string DesignDensity::name() const {
  switch (kind_) {
    case Kind::Uniform: return "uniform";
    case Kind::Linear: return "linear";
    case Kind::Bump: return "bump";
  }
  return "";
}

double DesignDensity::operator()(double x) const {
  switch (kind_) {
    case Kind::Uniform: return 1.0;
    case Kind::Linear: return 0.5 + x;
    case Kind::Bump: return 0.5 + 3.0 * x * (1.0 - x);
  }
  return 1.0;
}

double DesignDensity::inverse_cdf(double u) const {
  switch (kind_) {
    case Kind::Uniform:
      return u;
    case Kind::Linear:
      // F(x) = x/2 + x^2/2.
      return -0.5 + std::sqrt(0.25 + 2.0 * u);
    case Kind::Bump: {
      // F(x) = x/2 + 3x^2/2 - x^3 is increasing; bisection is plenty.
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = 0.5 * mid + 1.5 * mid * mid - mid * mid * mid;
        (f < u ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return u;
}

}  // namespace psk
