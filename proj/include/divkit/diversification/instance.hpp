#pragma once

#include <string>

#include "divkit/core/errors.hpp"
#include "divkit/core/metric.hpp"
#include "divkit/core/submodular.hpp"

namespace divkit::diversification {

/// A metric, a monotone submodular f over the same points, and a target
/// size. Construction accepts 1 <= p <= n so the greedy baseline can run with
/// p = 1; the ball scheme itself needs p >= 2.
struct DiversificationInstance {
  MetricInstance metric;
  SubmodularSpec f;
  int p = 2;

  DiversificationInstance(MetricInstance m, SubmodularSpec fn, int target)
      : metric(std::move(m)), f(std::move(fn)), p(target) {
    if (f.ground_size() != metric.size())
      throw ValidationError("diversification: f has " + std::to_string(f.ground_size()) + " elements but the metric has " +
                            std::to_string(metric.size()) + " points");
    if (p < 1 || p > metric.size())
      throw ValidationError("diversification: p must satisfy 1 <= p <= n (got " + std::to_string(p) + ")");
  }

  int size() const noexcept { return metric.size(); }
};

}  // namespace divkit::diversification
