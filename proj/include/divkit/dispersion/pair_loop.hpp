#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divkit/core/metric.hpp"
#include "divkit/core/rng.hpp"
#include "divkit/dispersion/ball.hpp"
#include "divkit/dispersion/baselines.hpp"
#include "divkit/dks/matroid.hpp"
#include "divkit/dks/submodular_dks.hpp"

namespace divkit::dispersion {

/// How the DkS instance on each ball is solved. `exact` enumerates it
/// (guarded); `scheme` runs the enumeration scheme with the inner accuracy
/// `gamma` (default 0.00005 eps^2) and the given caps.
enum class InnerMode { exact, scheme };

inline std::string to_string(InnerMode m) { return m == InnerMode::exact ? "exact" : "scheme"; }

inline InnerMode parse_inner_mode(const std::string& s) {
  if (s == "exact") return InnerMode::exact;
  if (s == "scheme") return InnerMode::scheme;
  throw std::invalid_argument("inner mode must be 'exact' or 'scheme', got '" + s + "'");
}

struct InnerOverrides {
  InnerMode inner = InnerMode::scheme;
  std::optional<double> gamma;
  std::optional<int> s;
  std::optional<double> t;
  std::uint64_t enum_cap = dks::kDefaultEnumCap;
  dks::MatroidMode mode = dks::MatroidMode::exact;
  std::uint64_t admission_budget = dks::kDefaultAdmissionBudget;

  dks::SubDksParams params(double gamma_used) const {
    dks::SubDksParams p;
    p.gamma = gamma_used;
    p.s = s;
    p.t = t;
    p.enum_cap = enum_cap;
    p.mode = mode;
    p.admission_budget = admission_budget;
    return p;
  }
};

inline double theoretical_inner_accuracy(double epsilon) { return 0.00005 * epsilon * epsilon; }

struct PairLoopDiagnostics {
  double epsilon = 0.0;
  double epsilon_prime = 0.0;  // theoretical inner accuracy 0.00005 eps^2
  double inner_gamma = 0.0;    // accuracy passed to the scheme
  std::string inner;
  int pairs_total = 0;
  int pairs_admissible = 0;
  int pairs_skipped_gate = 0;        // at least p points beyond d(u,v)
  int pairs_skipped_degenerate = 0;  // zero distance or residual size below 2
  int pairs_caps_hit = 0;            // scheme runs where an enumeration cap bit
  bool no_admissible_pair = false;
  bool whole_set = false;  // p = n
  bool theoretical_parameters_honored = false;
  double decomposition_max_error = 0.0;  // |disp(S) - disp(out) - disp_cross(out,T) - disp(T)| over pairs
  std::optional<std::pair<int, int>> best_pair;
  std::vector<int> loop_set;
  double loop_value = 0.0;
  std::vector<int> greedy_set;
  double greedy_value = 0.0;
  bool chose_greedy = false;
};

struct PairLoopResult {
  std::vector<int> set;
  double value = 0.0;
  PairLoopDiagnostics diagnostics;
};

/// Ordered pairs (u, v), u != v, by d(u, v) descending then (u, v) ascending.
inline std::vector<std::pair<int, int>> ordered_pairs(const MetricInstance& inst) {
  std::vector<std::pair<int, int>> out;
  const int n = inst.size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) out.emplace_back(u, v);
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& a, const auto& b) { return inst(a.first, a.second) > inst(b.first, b.second); });
  return out;
}

/// Shared driver for the dispersion and diversification schemes.
///
/// For every ordered pair in ordered_pairs() order, the admissible ball
/// instance is solved by `solve(ball_dks, pair_seed)` (returning local node
/// ids, I included) with pair_seed = derive_seed(seed, {pair_index}); the
/// candidate T + outer is scored by `score`. The best candidate (ties to the
/// lexicographically smaller set) is returned unless the greedy set scores
/// strictly higher. `solve` reports whether an enumeration cap bit through
/// its second return value.
template <class Solve, class Score>
PairLoopResult run_pair_loop(const MetricInstance& inst, int p, double epsilon, const InnerOverrides& ov,
                             std::uint64_t seed, Solve&& solve, Score&& score, const std::vector<int>& greedy) {
  check_target_size(inst, p);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  PairLoopResult out;
  auto& diag = out.diagnostics;
  diag.epsilon = epsilon;
  diag.epsilon_prime = theoretical_inner_accuracy(epsilon);
  diag.inner_gamma = ov.gamma.value_or(diag.epsilon_prime);
  diag.inner = to_string(ov.inner);
  if (ov.gamma && !(*ov.gamma > 0.0)) throw std::invalid_argument("inner gamma must be positive");
  const int n = inst.size();

  if (p == n) {
    diag.whole_set = true;
    diag.theoretical_parameters_honored = true;
    out.set = range_vector(n);
    out.value = score(out.set);
    diag.loop_set = out.set;
    diag.loop_value = out.value;
    diag.greedy_set = out.set;
    diag.greedy_value = out.value;
    return out;
  }

  bool any_cap = false;
  bool have = false;
  const auto pairs = ordered_pairs(inst);
  diag.pairs_total = static_cast<int>(pairs.size());
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto [u, v] = pairs[pi];
    const auto b = decompose_ball(inst, p, u, v, epsilon);
    if (!b.admissible) {
      if (static_cast<int>(b.outer.size() + b.ring.size()) >= p && b.delta > 0.0)
        ++diag.pairs_skipped_gate;
      else
        ++diag.pairs_skipped_degenerate;
      continue;
    }
    ++diag.pairs_admissible;
    const auto bd = build_dks_from_ball(inst, p, u, v, epsilon);
    const auto [local, capped] = solve(bd, derive_seed(seed, {static_cast<std::uint64_t>(pi)}));
    if (capped) {
      any_cap = true;
      ++diag.pairs_caps_hit;
    }
    const auto t = bd.ball.to_global(local);
    std::vector<int> s;
    std::merge(t.begin(), t.end(), bd.ball.outer.begin(), bd.ball.outer.end(), std::back_inserter(s));
    const double split = disp(bd.ball.outer, inst) + disp_cross(bd.ball.outer, t, inst) + disp(t, inst);
    diag.decomposition_max_error = std::max(diag.decomposition_max_error, std::abs(disp(s, inst) - split));
    const double value = score(s);
    if (!have || better_set(value, s, diag.loop_value, diag.loop_set)) {
      diag.loop_set = std::move(s);
      diag.loop_value = value;
      diag.best_pair = std::make_pair(u, v);
      have = true;
    }
  }

  diag.greedy_set = greedy;
  diag.greedy_value = score(greedy);
  diag.no_admissible_pair = !have;
  if (!have || diag.greedy_value > diag.loop_value + kValueTieTolerance) {
    diag.chose_greedy = true;
    out.set = diag.greedy_set;
    out.value = diag.greedy_value;
  } else {
    out.set = diag.loop_set;
    out.value = diag.loop_value;
  }
  diag.theoretical_parameters_honored = ov.inner == InnerMode::scheme && !ov.gamma && !ov.s && !ov.t && !any_cap;
  return out;
}

}  // namespace divkit::dispersion
