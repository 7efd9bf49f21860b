#pragma once

#include <string>
#include <vector>

namespace psk {

// Regression function with derivatives of any order, for simulation targets.
class TargetFunction {
 public:
  enum class Kind { Sin2Pi, QuadHalf, Linear, Constant, Exp };

  explicit TargetFunction(Kind kind) : kind_(kind) {}
  static TargetFunction from_name(const std::string& name);
  static std::vector<std::string> names();

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;

 private:
  Kind kind_;
};

// Design density on [0,1] with an inverse CDF for sampling.
class DesignDensity {
 public:
  enum class Kind { Uniform, Linear, Bump };

  explicit DesignDensity(Kind kind) : kind_(kind) {}
  static DesignDensity from_name(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  double operator()(double x) const;
  double inverse_cdf(double u) const;

 private:
  Kind kind_;
};

}  // namespace psk
