#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "divkit/core/combinatorics.hpp"
#include "divkit/core/rng.hpp"
#include "divkit/core/set_system.hpp"
#include "divkit/ranking/dcg_lp.hpp"
#include "divkit/ranking/gain.hpp"
#include "divkit/ranking/ranking.hpp"
#include "divkit/ranking/rounding.hpp"

namespace divkit::ranking {

struct PtasOptions {
  double epsilon = 0.1;
  std::optional<int> u;              // prefix length; default 2
  std::optional<double> gamma;       // default eta / (6 ln(1/eta))
  std::optional<double> eta;         // default epsilon
  int trials = 50;
  std::uint64_t prefix_cap = 100000; // max ordered prefixes enumerated
  double lemma_constant = 1.0;       // C, used only for diagnostics
  int max_cut_rounds = 200;
};

struct PtasDiagnostics {
  int u_requested = 0;
  int u_used = 0;
  bool prefix_cap_hit = false;
  std::uint64_t prefixes = 0;
  double gamma = 0.0;
  double eta = 0.0;
  int trials = 0;
  double lp_bound = 0.0;            // max over prefixes of fixed part + residual LP optimum
  double best_trial_value = 0.0;
  int lp_solves = 0;
  int lp_failures = 0;              // residual LPs that did not converge (prefix ranked by index)
  bool lp_bound_valid = true;       // false when some residual LP failed
  long cut_rounds = 0;
  long cuts_added = 0;
  double theoretical_u_log10 = 0.0; // log10 of (4C/eps)^(100/eps)
  double tau_residual = 0.0;        // tau for the residual gain at alpha = eps/2
};

struct PtasResult {
  Ranking ranking;
  double dcg = 0.0;
  PtasDiagnostics diagnostics;
};

namespace detail {

struct Residual {
  std::vector<int> elements;  // global ids of unplaced elements, ascending
  std::optional<SetSystemInstance> instance;
  double fixed_value = 0.0;   // DCG of sets already covered inside the prefix
};

inline Residual make_residual(const SetSystemInstance& inst, std::span<const int> prefix, const GainFunction& f) {
  const int n = inst.element_count();
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < prefix.size(); ++i) pos[static_cast<std::size_t>(prefix[i])] = static_cast<int>(i);
  Residual r;
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  for (int e = 0; e < n; ++e)
    if (pos[static_cast<std::size_t>(e)] < 0) {
      local[static_cast<std::size_t>(e)] = static_cast<int>(r.elements.size());
      r.elements.push_back(e);
    }
  std::vector<CoveredSet> sets;
  for (const auto& s : inst.sets()) {
    std::vector<int> in_prefix_ranks;
    std::vector<int> rest;
    for (int e : s.members) {
      if (pos[static_cast<std::size_t>(e)] >= 0)
        in_prefix_ranks.push_back(pos[static_cast<std::size_t>(e)]);
      else
        rest.push_back(local[static_cast<std::size_t>(e)]);
    }
    const int covered = static_cast<int>(in_prefix_ranks.size());
    if (covered >= s.requirement) {
      std::sort(in_prefix_ranks.begin(), in_prefix_ranks.end());
      r.fixed_value += f(in_prefix_ranks[static_cast<std::size_t>(s.requirement - 1)] + 1);
    } else {
      sets.push_back({std::move(rest), s.requirement - covered});
    }
  }
  if (!sets.empty()) r.instance.emplace(static_cast<int>(r.elements.size()), std::move(sets));
  return r;
}

inline bool better(double value, const std::vector<int>& order, double best_value, const std::vector<int>& best_order) {
  if (best_order.empty()) return true;
  if (value > best_value + kRankingTieTolerance) return true;
  return value >= best_value - kRankingTieTolerance && order < best_order;
}

}  // namespace detail

/// Prefix enumeration plus LP rounding for DCG maximization.
///
/// Every ordered prefix of length u is tried; the rest of the instance is
/// relaxed with the knapsack-strengthened LP under the shifted gain
/// 1/log2(t + u + 1), and the LP solution is rounded `trials` times with
/// independent streams derive_seed(seed, {prefix_index, trial}). The best
/// full ranking is returned (ties to the lexicographically smallest order).
/// When n <= u this is exhaustive search. When the prefix count exceeds
/// prefix_cap, u is lowered until it fits and the cap is flagged.
inline PtasResult ptas_dcg(const SetSystemInstance& inst, const PtasOptions& opt, std::uint64_t seed) {
  const int n = inst.element_count();
  PtasDiagnostics diag;
  diag.eta = opt.eta.value_or(opt.epsilon);
  if (!(diag.eta > 0.0 && diag.eta < 1.0)) throw std::invalid_argument("ptas_dcg: eta must lie in (0, 1)");
  diag.gamma = opt.gamma.value_or(diag.eta / (6.0 * std::log(1.0 / diag.eta)));
  diag.trials = opt.trials;
  RoundingParams params{diag.gamma, diag.eta, opt.trials};
  params.validate();
  if (opt.prefix_cap < 1) throw std::invalid_argument("ptas_dcg: prefix_cap must be >= 1");

  diag.u_requested = opt.u.value_or(2);
  if (diag.u_requested < 0) throw std::invalid_argument("ptas_dcg: u must be >= 0");
  int u = std::min(diag.u_requested, n);
  while (u > 0 && falling_factorial(n, u) > opt.prefix_cap) {
    --u;
    diag.prefix_cap_hit = true;
  }
  diag.u_used = u;
  diag.theoretical_u_log10 = (100.0 / opt.epsilon) * std::log10(4.0 * opt.lemma_constant / opt.epsilon);
  const GainFunction full_gain = GainFunction::standard();
  const GainFunction residual_gain = GainFunction::shifted(u);
  if (opt.epsilon > 0.0 && opt.epsilon < 1.0)
    diag.tau_residual = tau(residual_gain, 0.5 * opt.epsilon, std::max(1, n - u), opt.lemma_constant);

  lp::CutLoopOptions cut_opt;
  cut_opt.max_rounds = opt.max_cut_rounds;

  std::vector<int> best_order;
  double best_value = 0.0;
  diag.lp_bound = 0.0;

  // Ordered u-prefixes in lexicographic order: every u-combination, every arrangement.
  std::uint64_t prefix_index = 0;
  const std::vector<int> all = range_vector(n);
  std::vector<std::vector<int>> prefixes;
  for_each_subset_of_size(all, u, [&](std::span<const int> comb) {
    std::vector<int> p(comb.begin(), comb.end());
    do prefixes.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  });
  std::sort(prefixes.begin(), prefixes.end());
  diag.prefixes = prefixes.size();

  for (const auto& pre : prefixes) {
    const auto r = detail::make_residual(inst, pre, full_gain);
    auto consider = [&](const std::vector<int>& residual_order) {
      std::vector<int> order = pre;
      for (int local : residual_order) order.push_back(r.elements[static_cast<std::size_t>(local)]);
      const double v = dcg_value(order, inst, full_gain);
      if (detail::better(v, order, best_value, best_order)) {
        best_value = v;
        best_order = std::move(order);
      }
    };
    const auto nr = static_cast<int>(r.elements.size());
    if (!r.instance) {
      diag.lp_bound = std::max(diag.lp_bound, r.fixed_value);
      consider(range_vector(nr));
      ++prefix_index;
      continue;
    }
    const auto sol = solve_dcg_lp(*r.instance, residual_gain, cut_opt);
    ++diag.lp_solves;
    diag.cut_rounds += sol.rounds;
    diag.cuts_added += sol.cuts_added;
    if (!sol.usable()) {
      ++diag.lp_failures;
      consider(range_vector(nr));
      ++prefix_index;
      continue;
    }
    diag.lp_bound = std::max(diag.lp_bound, r.fixed_value + sol.objective);
    for (int trial = 0; trial < opt.trials; ++trial) {
      Rng rng(derive_seed(seed, {prefix_index, static_cast<std::uint64_t>(trial)}));
      consider(round_lp(sol.x, sol.y, *r.instance, residual_gain, params, rng));
    }
    ++prefix_index;
  }

  diag.best_trial_value = best_value;
  diag.lp_bound_valid = diag.lp_failures == 0;
  PtasResult out{make_ranking(best_order, inst), best_value, diag};
  return out;
}

}  // namespace divkit::ranking
