#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "divkit/core/combinatorics.hpp"
#include "divkit/core/diversity.hpp"
#include "divkit/core/errors.hpp"
#include "divkit/dispersion/baselines.hpp"
#include "divkit/diversification/instance.hpp"

namespace divkit::diversification {

/// Marginal greedy: p times, add the point maximizing
/// f(S + x) - f(S) + disp_cross({x}, S); ties to the lowest index.
/// A baseline without a certified ratio.
inline std::vector<int> greedy_diversification(const DiversificationInstance& di) {
  const int n = di.size();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> s;
  double fs = 0.0;
  for (int step = 0; step < di.p; ++step) {
    int best = -1;
    double best_gain = 0.0, best_f = 0.0;
    for (int x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      s.push_back(x);
      const double fx = di.f(s);
      s.pop_back();
      const double gain = fx - fs + disp_point(x, s, di.metric);
      if (best < 0 || gain > best_gain) {
        best = x;
        best_gain = gain;
        best_f = fx;
      }
    }
    used[static_cast<std::size_t>(best)] = 1;
    s.push_back(best);
    fs = best_f;
  }
  std::sort(s.begin(), s.end());
  return s;
}

struct DiversificationOptimum {
  std::vector<int> set;
  double value = 0.0;  // dive
  double disp = 0.0;
  double f = 0.0;
};

/// Exhaustive maximizer of dive over p-subsets, guarded at C(n, p) <= 1e6;
/// ties to the lexicographically smallest set.
inline DiversificationOptimum brute_force_diversification(const DiversificationInstance& di) {
  const int n = di.size();
  const std::uint64_t count = binomial(n, di.p);
  if (count > dispersion::kBruteForceSubsetLimit)
    throw GuardError("brute_force_diversification: C(" + std::to_string(n) + "," + std::to_string(di.p) +
                     ") = " + std::to_string(count) + " exceeds the limit of " +
                     std::to_string(dispersion::kBruteForceSubsetLimit));
  DiversificationOptimum best;
  bool have = false;
  for_each_subset_of_size(range_vector(n), di.p, [&](std::span<const int> c) {
    const double d = disp(c, di.metric);
    const double fv = di.f(c);
    std::vector<int> s(c.begin(), c.end());
    if (!have || dispersion::better_set(d + fv, s, best.value, best.set)) {
      best = {std::move(s), d + fv, d, fv};
      have = true;
    }
  });
  return best;
}

}  // namespace divkit::diversification
