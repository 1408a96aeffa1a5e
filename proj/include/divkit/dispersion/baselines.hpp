#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/combinatorics.hpp"
#include "divkit/core/errors.hpp"
#include "divkit/core/metric.hpp"

namespace divkit::dispersion {

inline constexpr std::uint64_t kBruteForceSubsetLimit = 1000000;
inline constexpr double kValueTieTolerance = 1e-12;

/// Larger value wins; values within 1e-12 go to the lexicographically smaller set.
inline bool better_set(double value, const std::vector<int>& s, double best_value, const std::vector<int>& best) {
  if (best.empty()) return true;
  if (value > best_value + kValueTieTolerance) return true;
  return value >= best_value - kValueTieTolerance && s < best;
}

/// Pair greedy: take the remaining pair at maximum distance floor(p/2) times,
/// then for odd p the remaining point with the largest distance sum to the
/// chosen set. Ties go to the lexicographically smallest pair or index.
inline std::vector<int> greedy_dispersion(const MetricInstance& inst, int p) {
  const int n = inst.size();
  if (p < 0 || p > n) throw std::invalid_argument("greedy_dispersion: p must satisfy 0 <= p <= n");
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> s;
  for (int round = 0; round < p / 2; ++round) {
    int ba = -1, bb = -1;
    for (int a = 0; a < n; ++a) {
      if (used[static_cast<std::size_t>(a)]) continue;
      for (int b = a + 1; b < n; ++b) {
        if (used[static_cast<std::size_t>(b)]) continue;
        if (ba < 0 || inst(a, b) > inst(ba, bb)) {
          ba = a;
          bb = b;
        }
      }
    }
    used[static_cast<std::size_t>(ba)] = used[static_cast<std::size_t>(bb)] = 1;
    s.push_back(ba);
    s.push_back(bb);
  }
  if (p % 2 == 1) {
    int best = -1;
    double best_sum = 0.0;
    for (int x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      const double sum = disp_point(x, s, inst);
      if (best < 0 || sum > best_sum) {
        best = x;
        best_sum = sum;
      }
    }
    s.push_back(best);
  }
  std::sort(s.begin(), s.end());
  return s;
}

struct DispersionOptimum {
  std::vector<int> set;
  double value = 0.0;
};

/// Exhaustive maximizer of disp over p-subsets, guarded at C(n, p) <= 1e6.
inline DispersionOptimum brute_force_dispersion(const MetricInstance& inst, int p) {
  const int n = inst.size();
  if (p < 0 || p > n) throw std::invalid_argument("brute_force_dispersion: p must satisfy 0 <= p <= n");
  const std::uint64_t count = binomial(n, p);
  if (count > kBruteForceSubsetLimit)
    throw GuardError("brute_force_dispersion: C(" + std::to_string(n) + "," + std::to_string(p) + ") = " +
                     std::to_string(count) + " exceeds the limit of " + std::to_string(kBruteForceSubsetLimit));
  DispersionOptimum best;
  bool have = false;
  for_each_subset_of_size(range_vector(n), p, [&](std::span<const int> c) {
    const double v = disp(c, inst);
    std::vector<int> s(c.begin(), c.end());
    if (!have || better_set(v, s, best.value, best.set)) {
      best = {std::move(s), v};
      have = true;
    }
  });
  return best;
}

}  // namespace divkit::dispersion
