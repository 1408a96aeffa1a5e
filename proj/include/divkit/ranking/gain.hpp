#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace divkit::ranking {

/// Non-increasing position discount f: [1, inf) -> (0, 1], evaluable at any
/// real argument through its closed form.
///   standard    f(t) = 1 / log2(t + 1)
///   shifted(u)  f(t) = 1 / log2(t + u + 1)   (global DCG at residual position t after a u-prefix)
///   constant(c) f(t) = c
class GainFunction {
 public:
  enum class Kind { standard, shifted, constant };

  static GainFunction standard() { return GainFunction(Kind::standard, 0.0); }
  static GainFunction shifted(double u) {
    if (!(u >= 0.0)) throw std::invalid_argument("gain: shift must be >= 0");
    return GainFunction(Kind::shifted, u);
  }
  static GainFunction constant(double c = 1.0) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("gain: constant must lie in (0, 1]");
    return GainFunction(Kind::constant, c);
  }

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }

  double operator()(double t) const noexcept {
    switch (kind_) {
      case Kind::standard: return 1.0 / std::log2(t + 1.0);
      case Kind::shifted: return 1.0 / std::log2(t + param_ + 1.0);
      case Kind::constant: return param_;
    }
    return 0.0;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::standard: return "dcg_standard";
      case Kind::shifted: return "dcg_shifted(" + std::to_string(param_) + ")";
      case Kind::constant: return "constant(" + std::to_string(param_) + ")";
    }
    return "?";
  }

 private:
  GainFunction(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

}  // namespace divkit::ranking
