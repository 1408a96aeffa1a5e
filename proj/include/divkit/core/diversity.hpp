#pragma once

#include <span>

#include "divkit/core/metric.hpp"
#include "divkit/core/submodular.hpp"

namespace divkit {

/// disp(S) + f(S).
template <SetFunction F>
double dive(std::span<const int> s, const MetricInstance& inst, const F& f) {
  return disp(s, inst) + f(s);
}

}  // namespace divkit
