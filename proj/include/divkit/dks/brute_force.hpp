#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divkit/core/combinatorics.hpp"
#include "divkit/core/dks_instance.hpp"
#include "divkit/core/errors.hpp"
#include "divkit/core/submodular.hpp"
#include "divkit/dks/density.hpp"

namespace divkit::dks {

inline constexpr std::uint64_t kBruteForceSubsetLimit = 1000000;

struct DksSolution {
  std::vector<int> nodes;  // sorted, contains the forced set, size k
  double value = 0.0;      // h(T) + den(T)
  double h = 0.0;
  double den = 0.0;
};

/// True when (value, t) beats (best_value, best): larger value, or equal
/// value within 1e-12 and lexicographically smaller set.
inline bool better_solution(double value, const std::vector<int>& t, double best_value,
                            const std::vector<int>& best) {
  constexpr double tie = 1e-12;
  if (best.empty() && !t.empty()) return true;
  if (value > best_value + tie) return true;
  return value >= best_value - tie && t < best;
}

/// Exact maximizer of h(T) + den(T) over T = I + C with C a (k - |I|)-subset
/// of V \ I. den counts as 0 when k < 2. Guarded at C(|V \ I|, k - |I|) <= 1e6.
template <SetFunction H>
DksSolution brute_force_subdks(const DksInstance& inst, const H& h) {
  const auto free = inst.free_nodes();
  const int kp = inst.k() - static_cast<int>(inst.forced().size());
  const std::uint64_t count = binomial(static_cast<int>(free.size()), kp);
  if (count > kBruteForceSubsetLimit)
    throw GuardError("brute_force_subdks: " + std::to_string(count) + " subsets exceed the limit of " +
                     std::to_string(kBruteForceSubsetLimit));
  DksSolution best;
  bool have = false;
  std::vector<int> t;
  for_each_subset_of_size(free, kp, [&](std::span<const int> c) {
    t.assign(inst.forced().begin(), inst.forced().end());
    t.insert(t.end(), c.begin(), c.end());
    std::sort(t.begin(), t.end());
    const double hv = h(std::span<const int>(t));
    const double dv = den_or_zero(t, inst);
    if (!have || better_solution(hv + dv, t, best.value, best.nodes)) {
      best = {t, hv + dv, hv, dv};
      have = true;
    }
  });
  return best;
}

}  // namespace divkit::dks
