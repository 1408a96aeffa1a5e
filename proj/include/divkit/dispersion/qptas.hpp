#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "divkit/core/metric.hpp"
#include "divkit/core/submodular.hpp"
#include "divkit/dispersion/pair_loop.hpp"
#include "divkit/dks/brute_force.hpp"
#include "divkit/dks/submodular_dks.hpp"

namespace divkit::dispersion {

/// Ball-decomposition scheme for Max-Sum Dispersion. Each admissible pair's
/// DkS instance is solved to additive accuracy eps' (or exactly), the
/// out-of-ball points are added back, and the best set by disp is returned,
/// compared against greedy_dispersion.
inline PairLoopResult qptas_dispersion(const MetricInstance& inst, int p, double epsilon,
                                       const InnerOverrides& ov, std::uint64_t seed) {
  check_target_size(inst, p);
  const double gamma = ov.gamma.value_or(theoretical_inner_accuracy(epsilon));
  auto solve = [&](const BallDks& bd, std::uint64_t pair_seed) -> std::pair<std::vector<int>, bool> {
    if (ov.inner == InnerMode::exact) return {dks::brute_force_subdks(bd.dks, ZeroFunction{}).nodes, false};
    auto r = dks::dks_additive(bd.dks, gamma, pair_seed, ov.params(gamma));
    return {std::move(r.solution.nodes), r.diagnostics.caps_hit()};
  };
  auto score = [&](const std::vector<int>& s) { return disp(s, inst); };
  return run_pair_loop(inst, p, epsilon, ov, seed, solve, score, greedy_dispersion(inst, p));
}

}  // namespace divkit::dispersion
