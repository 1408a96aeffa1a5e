#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/errors.hpp"
#include "divkit/core/set_system.hpp"
#include "divkit/ranking/gain.hpp"

namespace divkit::ranking {

/// A permutation of [0, n) together with the cover time of every set.
/// order[i] is the element shown at rank i + 1; cover times are 1-based.
struct Ranking {
  std::vector<int> order;
  std::vector<int> cover_times;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

inline bool is_permutation_of_n(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int e : order) {
    if (e < 0 || e >= n || seen[static_cast<std::size_t>(e)]) return false;
    seen[static_cast<std::size_t>(e)] = 1;
  }
  return true;
}

/// Smallest prefix length i with |S cap order[0..i)| >= k.
inline int cover_time(std::span<const int> order, std::span<const int> members, int k) {
  if (k > static_cast<int>(members.size()))
    throw std::invalid_argument("cover_time: requirement exceeds set size");
  if (k <= 0) return 0;
  std::vector<int> pos(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos.at(static_cast<std::size_t>(order[i])) = static_cast<int>(i);
  std::vector<int> ranks;
  ranks.reserve(members.size());
  for (int e : members) ranks.push_back(pos.at(static_cast<std::size_t>(e)));
  std::nth_element(ranks.begin(), ranks.begin() + (k - 1), ranks.end());
  return ranks[static_cast<std::size_t>(k - 1)] + 1;
}

inline std::vector<int> cover_times(std::span<const int> order, const SetSystemInstance& inst) {
  std::vector<int> out;
  out.reserve(inst.sets().size());
  for (const auto& s : inst.sets()) out.push_back(cover_time(order, s.members, s.requirement));
  return out;
}

inline Ranking make_ranking(std::vector<int> order, const SetSystemInstance& inst) {
  if (!is_permutation_of_n(order, inst.element_count()))
    throw std::invalid_argument("ranking: order is not a permutation of [0, n)");
  auto times = cover_times(order, inst);
  return {std::move(order), std::move(times)};
}

/// DCG^f = sum over sets of f(cover time).
inline double dcg_value(std::span<const int> order, const SetSystemInstance& inst,
                        const GainFunction& f = GainFunction::standard()) {
  if (!is_permutation_of_n(order, inst.element_count()))
    throw std::invalid_argument("dcg_value: order is not a permutation of [0, n)");
  double total = 0.0;
  for (int t : cover_times(order, inst)) total += f(t);
  return total;
}

struct BruteForceRanking {
  Ranking ranking;
  double value = 0.0;
};

inline constexpr int kBruteForceRankingMaxN = 9;

/// Values closer than this are treated as equal when picking a best order.
inline constexpr double kRankingTieTolerance = 1e-12;

/// Exact maximizer over all n! permutations (n <= 9); ties go to the
/// lexicographically smallest permutation.
inline BruteForceRanking brute_force_dcg(const SetSystemInstance& inst,
                                         const GainFunction& f = GainFunction::standard()) {
  const int n = inst.element_count();
  if (n > kBruteForceRankingMaxN)
    throw GuardError("brute_force_dcg: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kBruteForceRankingMaxN));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best;
  double best_value = -1.0;
  do {
    const double v = dcg_value(order, inst, f);
    // Enumeration is lexicographic, so an earlier order wins near-ties.
    if (v > best_value + kRankingTieTolerance) {
      best_value = v;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {make_ranking(std::move(best), inst), best_value};
}

}  // namespace divkit::ranking
