#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "divkit/core/set_system.hpp"
#include "divkit/lp/cutting_plane.hpp"

namespace divkit::lp {

/// Variable layout of the DCG relaxation over n elements/positions and m sets:
/// x(e, t) is "element e at position t", y(S, t) is "set S covered by t".
/// Positions are 0-based here (position t is rank t + 1).
struct DcgLayout {
  int n = 0;
  int m = 0;

  int x(int e, int t) const noexcept { return e * n + t; }
  int y(int s, int t) const noexcept { return n * n + s * n + t; }
  int num_vars() const noexcept { return n * n + m * n; }
};

inline constexpr double kSeparationTolerance = 1e-9;

/// One violated knapsack inequality
///   sum_{e in S \ A} sum_{t' <= t} x(e, t') >= (k_S - |A|) * y(S, t).
struct KnapsackCut {
  int set = 0;
  int t = 0;                 // 0-based position
  std::vector<int> excluded; // A, sorted
  double slack = 0.0;        // lhs - rhs (negative)
};

/// Finds, for every (S, t), the most violated knapsack inequality. For fixed
/// (S, t) with z_e = sum_{t' <= t} x(e, t') the minimum of lhs - rhs over
/// A subset of S is attained at A = {e in S : z_e > y(S, t)}, so a violation
/// exists iff sum_{e in S} min(z_e, y) < k_S * y (tolerance 1e-9).
///
/// x is n x n row-major (element, position); y is m x n row-major.
inline std::vector<KnapsackCut> dcg_separation(std::span<const double> x, std::span<const double> y,
                                               const SetSystemInstance& inst) {
  const int n = inst.element_count();
  const int m = inst.set_count();
  if (x.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n) ||
      y.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n))
    throw std::invalid_argument("dcg_separation: x must be n*n and y must be m*n");

  // prefix[e][t] = sum_{t' <= t} x(e, t')
  std::vector<double> prefix(x.size());
  for (int e = 0; e < n; ++e) {
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
      acc += x[static_cast<std::size_t>(e * n + t)];
      prefix[static_cast<std::size_t>(e * n + t)] = acc;
    }
  }

  std::vector<KnapsackCut> cuts;
  for (int s = 0; s < m; ++s) {
    const auto& set = inst.set(s);
    for (int t = 0; t < n; ++t) {
      const double ys = y[static_cast<std::size_t>(s * n + t)];
      if (ys <= 0.0) continue;
      double min_sum = 0.0;
      std::vector<int> excluded;
      for (int e : set.members) {
        const double z = prefix[static_cast<std::size_t>(e * n + t)];
        if (z > ys) {
          excluded.push_back(e);
          min_sum += ys;
        } else {
          min_sum += z;
        }
      }
      const double slack = min_sum - set.requirement * ys;
      if (slack < -kSeparationTolerance) cuts.push_back({s, t, std::move(excluded), slack});
    }
  }
  return cuts;
}

/// The LP row of a knapsack cut in the given layout.
inline Cut to_lp_cut(const KnapsackCut& kc, const SetSystemInstance& inst, const DcgLayout& layout) {
  const auto& set = inst.set(kc.set);
  std::vector<double> row(static_cast<std::size_t>(layout.num_vars()), 0.0);
  std::size_t a = 0;
  for (int e : set.members) {
    while (a < kc.excluded.size() && kc.excluded[a] < e) ++a;
    if (a < kc.excluded.size() && kc.excluded[a] == e) continue;
    for (int tp = 0; tp <= kc.t; ++tp) row[static_cast<std::size_t>(layout.x(e, tp))] = 1.0;
  }
  row[static_cast<std::size_t>(layout.y(kc.set, kc.t))] =
      -static_cast<double>(set.requirement - static_cast<int>(kc.excluded.size()));
  CutKey key{kc.set, kc.t};
  key.insert(key.end(), kc.excluded.begin(), kc.excluded.end());
  return {std::move(key), {std::move(row), Relation::greater_equal, 0.0}};
}

/// Adapts dcg_separation to the generic cut loop for an LP in `layout`.
inline SeparationOracle dcg_oracle(const SetSystemInstance& inst, DcgLayout layout) {
  return [inst, layout](const std::vector<double>& values) {
    const std::size_t nx = static_cast<std::size_t>(layout.n) * static_cast<std::size_t>(layout.n);
    std::span<const double> all(values);
    std::vector<Cut> out;
    for (const auto& kc : dcg_separation(all.subspan(0, nx), all.subspan(nx), inst))
      out.push_back(to_lp_cut(kc, inst, layout));
    return out;
  };
}

}  // namespace divkit::lp
