#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "divkit/core/combinatorics.hpp"
#include "divkit/core/dks_instance.hpp"
#include "divkit/core/rng.hpp"
#include "divkit/core/submodular.hpp"
#include "divkit/dks/brute_force.hpp"
#include "divkit/dks/density.hpp"
#include "divkit/dks/matroid.hpp"

namespace divkit::dks {

inline constexpr std::uint64_t kUncapped = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultEnumCap = 200000;
inline constexpr std::uint64_t kDefaultAdmissionBudget = 50000000;

struct SubDksParams {
  double gamma = 0.1;
  std::optional<int> s;     // number of parts; default from the size formula, at least 1
  std::optional<double> t;  // target part size; default k' / s
  std::uint64_t enum_cap = kDefaultEnumCap;  // anchors kept, and candidates kept per part
  MatroidMode mode = MatroidMode::exact;
  std::uint64_t exact_budget = kDefaultExactBudget;
  std::uint64_t admission_budget = kDefaultAdmissionBudget;  // candidate tests per run; later anchors are dropped
};

struct SubDksDiagnostics {
  double gamma = 0.0;
  double gamma_prime = 0.0;
  int k_prime = 0;
  double s_formula = 0.0;  // floor(0.001 gamma'^2 k' / ln n) before clamping
  int s = 0;
  double t = 0.0;
  int size_lo = 0;         // admitted candidate sizes [size_lo, size_hi]
  int size_hi = 0;
  std::vector<int> part_sizes;
  int empty_parts = 0;
  std::uint64_t anchors_total = 0;  // saturating
  std::uint64_t anchors_scanned = 0;
  std::uint64_t anchors_evaluated = 0;
  bool anchor_cap_hit = false;
  std::vector<std::uint64_t> candidates_per_part;
  bool candidate_cap_hit = false;
  std::uint64_t admitted_total = 0;
  int matroid_fallbacks = 0;
  long h_evaluations = 0;
  int repairs_sampled = 0;  // union larger than k', random k'-subset taken
  int repairs_padded = 0;   // union smaller than k', padded with lowest-index nodes
  std::vector<int> best_anchor;
  std::uint64_t admission_checks = 0;
  bool admission_budget_hit = false;
  bool no_anchor = false;   // the size window admits no anchor; I + lowest-index nodes returned

  bool caps_hit() const noexcept { return anchor_cap_hit || candidate_cap_hit || admission_budget_hit || matroid_fallbacks > 0; }
};

struct SubDksResult {
  DksSolution solution;
  SubDksDiagnostics diagnostics;
};

namespace detail {

// Memoizes h on node sets; keys are bitmasks when n <= 64.
template <class H>
class CachedSetFunction {
 public:
  CachedSetFunction(const H& h, int n) : h_(h), use_mask_(n <= 64) {}

  double operator()(const std::vector<int>& sorted_nodes) {
    if (!use_mask_) {
      ++evaluations_;
      return h_(std::span<const int>(sorted_nodes));
    }
    std::uint64_t key = 0;
    for (int v : sorted_nodes) key |= std::uint64_t{1} << v;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ++evaluations_;
    const double v = h_(std::span<const int>(sorted_nodes));
    memo_.emplace(key, v);
    return v;
  }
  long evaluations() const noexcept { return evaluations_; }

 private:
  const H& h_;
  bool use_mask_;
  std::unordered_map<std::uint64_t, double> memo_;
  long evaluations_ = 0;
};

struct ScoredSet {
  std::vector<int> nodes;
  double score = 0.0;
};

inline void sort_by_score(std::vector<ScoredSet>& v) {
  std::stable_sort(v.begin(), v.end(), [](const ScoredSet& a, const ScoredSet& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.nodes < b.nodes;
  });
}

inline std::vector<int> merged(const std::vector<int>& a, std::span<const int> b) {
  std::vector<int> out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kUncapped - b ? kUncapped : a + b;
}

}  // namespace detail

/// Densest-k-subgraph with a monotone submodular bonus h: maximizes
/// h(T) + den(T) over T with I in T and |T| = k.
///
/// V' = V \ I is split into s random parts. Every non-empty anchor Q in V'
/// with |Q| <= (1 + g')t is tried, best den(Q + I) first. For each anchor,
/// part i keeps the subsets U of V'_i with |U| in [(1 - g')t, (1 + g')t]
/// that pass the profile tests against Q; one subset per part is picked by
/// maximizing h(I + union) over the partition matroid; the union is cut or
/// padded to k' nodes. The best I + Z over all anchors is returned, ties to
/// the lexicographically smaller set.
///
/// Candidates inside a part are ordered by den(I + U) descending, so pool
/// ties in the matroid step favor denser subsets. enum_cap bounds both the
/// number of anchors evaluated and the candidates kept per part; every cap
/// that bites is reported in the diagnostics.
template <SetFunction H>
SubDksResult submodular_dks(const DksInstance& inst, const H& h, const SubDksParams& params, std::uint64_t seed) {
  if (!(params.gamma > 0.0)) throw std::invalid_argument("submodular_dks: gamma must be positive");
  if (params.s && *params.s < 1) throw std::invalid_argument("submodular_dks: s must be >= 1");
  if (params.t && !(*params.t > 0.0)) throw std::invalid_argument("submodular_dks: t must be positive");
  if (params.enum_cap < 1) throw std::invalid_argument("submodular_dks: enum_cap must be >= 1");

  const int n = inst.size();
  const auto& forced = inst.forced();
  const int kp = inst.k() - static_cast<int>(forced.size());
  SubDksResult out;
  auto& diag = out.diagnostics;
  diag.gamma = params.gamma;
  diag.gamma_prime = 0.01 * params.gamma;
  diag.k_prime = kp;
  detail::CachedSetFunction<H> hc(h, n);

  if (kp == 0) {
    const double hv = hc(forced);
    const double dv = den_or_zero(forced, inst);
    out.solution = {forced, hv + dv, hv, dv};
    diag.h_evaluations = hc.evaluations();
    return out;
  }

  const double gp = diag.gamma_prime;
  diag.s_formula = n >= 2 ? std::floor(0.001 * gp * gp * kp / std::log(static_cast<double>(n))) : 0.0;
  diag.s = params.s ? *params.s : static_cast<int>(std::max(1.0, std::min(diag.s_formula, 1e9)));
  diag.t = params.t ? *params.t : static_cast<double>(kp) / diag.s;
  diag.size_lo = std::max(1, static_cast<int>(std::ceil((1.0 - gp) * diag.t - 1e-9)));
  diag.size_hi = static_cast<int>(std::floor((1.0 + gp) * diag.t + 1e-9));

  const auto free = inst.free_nodes();
  const int nfree = static_cast<int>(free.size());

  // Random partition: each free node draws its part independently.
  std::vector<std::vector<int>> parts(static_cast<std::size_t>(diag.s));
  {
    Rng prng(derive_seed(seed, {0}));
    for (int v : free) parts[static_cast<std::size_t>(prng.below(diag.s))].push_back(v);
  }
  for (const auto& p : parts) {
    diag.part_sizes.push_back(static_cast<int>(p.size()));
    if (p.empty()) ++diag.empty_parts;
  }

  // Candidate subsets per part with their weight profiles.
  struct PartCandidates {
    std::vector<detail::ScoredSet> sets;
    std::vector<std::vector<double>> ow;
  };
  std::vector<PartCandidates> cands(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& pc = cands[i];
    const int psz = static_cast<int>(parts[i].size());
    bool stop = false;
    for (int g = diag.size_lo; g <= std::min(diag.size_hi, psz) && !stop; ++g)
      for_each_subset_of_size(parts[i], g, [&](std::span<const int> u) {
        if (pc.sets.size() >= params.enum_cap) {
          diag.candidate_cap_hit = true;
          stop = true;
          return false;
        }
        pc.sets.push_back({{u.begin(), u.end()}, den_or_zero(detail::merged(forced, u), inst)});
        return true;
      });
    detail::sort_by_score(pc.sets);
    for (const auto& c : pc.sets) pc.ow.push_back(average_weight_vector(c.nodes, inst));
    diag.candidates_per_part.push_back(pc.sets.size());
  }

  // Anchors, best den(Q + I) first. Beyond the cap, up to 4x the cap are
  // scored and the best are kept.
  const int anchor_hi = std::min(diag.size_hi, nfree);
  for (int g = 1; g <= anchor_hi; ++g)
    diag.anchors_total = detail::saturating_add(diag.anchors_total, binomial(nfree, g));
  const std::uint64_t scan_limit =
      params.enum_cap >= diag.anchors_total
          ? diag.anchors_total
          : std::min(diag.anchors_total, params.enum_cap > kUncapped / 4 ? kUncapped : params.enum_cap * 4);
  std::vector<detail::ScoredSet> anchors;
  for (int g = 1; g <= anchor_hi && anchors.size() < scan_limit; ++g)
    for_each_subset_of_size(free, g, [&](std::span<const int> q) {
      if (anchors.size() >= scan_limit) return false;
      anchors.push_back({{q.begin(), q.end()}, den_or_zero(detail::merged(forced, q), inst)});
      return true;
    });
  diag.anchors_scanned = anchors.size();
  detail::sort_by_score(anchors);
  if (anchors.size() > params.enum_cap) anchors.resize(static_cast<std::size_t>(params.enum_cap));
  diag.anchor_cap_hit = anchors.size() < diag.anchors_total;

  std::vector<std::vector<int>> pools(parts.size());
  std::vector<int> pool_sizes(parts.size());
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  bool have = false;

  std::uint64_t per_anchor = 0;
  for (const auto& pc : cands) per_anchor += pc.sets.size();
  for (std::size_t ai = 0; ai < anchors.size(); ++ai) {
    if (ai > 0 && diag.admission_checks + per_anchor > params.admission_budget) {
      diag.admission_budget_hit = true;
      break;
    }
    diag.admission_checks += per_anchor;
    const auto& q = anchors[ai].nodes;
    const auto ow_q = average_weight_vector(q, inst);
    const double q_self = mean_over(q, ow_q);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      pools[i].clear();
      const auto& pc = cands[i];
      for (std::size_t c = 0; c < pc.sets.size(); ++c)
        if (admit_with_profiles(pc.sets[c].nodes, pc.ow[c], ow_q, q_self, gp)) pools[i].push_back(static_cast<int>(c));
      pool_sizes[i] = static_cast<int>(pools[i].size());
      diag.admitted_total += pools[i].size();
    }

    auto union_of = [&](const std::vector<int>& choice) {
      std::vector<int> z;
      for (std::size_t i = 0; i < choice.size(); ++i)
        if (choice[i] >= 0) {
          const auto& u = cands[i].sets[static_cast<std::size_t>(pools[i][static_cast<std::size_t>(choice[i])])].nodes;
          z.insert(z.end(), u.begin(), u.end());
        }
      std::sort(z.begin(), z.end());
      return z;
    };
    const auto mres = matroid_maximize(
        pool_sizes, [&](const std::vector<int>& choice) { return hc(detail::merged(forced, union_of(choice))); },
        params.mode, params.exact_budget);
    if (mres.fell_back) ++diag.matroid_fallbacks;

    std::vector<int> z = union_of(mres.choice);
    if (static_cast<int>(z.size()) > kp) {
      Rng rrng(derive_seed(seed, {1, static_cast<std::uint64_t>(ai)}));
      rrng.partial_shuffle(z, static_cast<std::size_t>(kp));
      z.resize(static_cast<std::size_t>(kp));
      std::sort(z.begin(), z.end());
      ++diag.repairs_sampled;
    } else if (static_cast<int>(z.size()) < kp) {
      for (int v : z) mark[static_cast<std::size_t>(v)] = 1;
      for (int v : free) {
        if (static_cast<int>(z.size()) == kp) break;
        if (!mark[static_cast<std::size_t>(v)]) z.push_back(v);
      }
      for (int v : free) mark[static_cast<std::size_t>(v)] = 0;
      std::sort(z.begin(), z.end());
      ++diag.repairs_padded;
    }
    const auto t = detail::merged(forced, z);
    const double hv = hc(t);
    const double dv = den_or_zero(t, inst);
    if (!have || better_solution(hv + dv, t, out.solution.value, out.solution.nodes)) {
      out.solution = {t, hv + dv, hv, dv};
      diag.best_anchor = q;
      have = true;
    }
    ++diag.anchors_evaluated;
  }
  if (!have) {
    diag.no_anchor = true;
    const auto t = detail::merged(forced, std::span<const int>(free).first(static_cast<std::size_t>(kp)));
    const double hv = hc(t);
    const double dv = den_or_zero(t, inst);
    out.solution = {t, hv + dv, hv, dv};
  }
  diag.h_evaluations = hc.evaluations();
  return out;
}

/// Additive approximation for plain DkS: the bonus is identically zero and
/// gamma = epsilon.
inline SubDksResult dks_additive(const DksInstance& inst, double epsilon, std::uint64_t seed,
                                 SubDksParams params = {}) {
  params.gamma = epsilon;
  return submodular_dks(inst, ZeroFunction{}, params, seed);
}

}  // namespace divkit::dks
