#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "divkit/core/rng.hpp"
#include "divkit/core/set_system.hpp"
#include "divkit/ranking/gain.hpp"

namespace divkit::ranking {

/// gamma scales inclusion probabilities; eta is the threshold used by the
/// cover-time analysis (t*). The analysis needs eta >= 2 gamma.
struct RoundingParams {
  double gamma = 0.05;
  double eta = 0.1;
  int trials = 1;

  void validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("rounding: gamma must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("rounding: eta must be positive");
    if (eta < 2.0 * gamma) throw std::invalid_argument("rounding: eta must be >= 2 * gamma");
    if (trials < 1) throw std::invalid_argument("rounding: trials must be >= 1");
  }
};

/// Number of doubling phases, ceil(log2 n).
inline int rounding_phases(int n) noexcept {
  int phases = 0;
  while ((1LL << phases) < n) ++phases;
  return phases;
}

struct RoundingTrace {
  std::vector<int> order;
  std::vector<std::vector<int>> phase_sets;  // A_1, A_2, ... as sampled
};

namespace detail {
inline void check_assignment(std::span<const double> x, int n) {
  if (x.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("round_lp: x must be n x n");
  constexpr double tol = 1e-6;
  for (int e = 0; e < n; ++e) {
    double row = 0.0, col = 0.0;
    for (int t = 0; t < n; ++t) {
      const double v = x[static_cast<std::size_t>(e * n + t)];
      if (v < -tol || v > 1.0 + tol) throw std::invalid_argument("round_lp: x entry outside [0, 1]");
      row += v;
      col += x[static_cast<std::size_t>(t * n + e)];
    }
    if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol)
      throw std::invalid_argument("round_lp: x is not a fractional assignment");
  }
}
}  // namespace detail

/// Randomized rounding of a fractional assignment x (n x n, element-major).
///
/// For phase i = 1..ceil(log2 n) with t_i = min(n, 2^i), element e joins A_i
/// independently with probability min(1, z_{e,i} / (gamma f(t_i))) where
/// z_{e,i} is x's mass on positions <= t_i. The ranking lists A_1, A_2, ...
/// in order, skipping repeats; ties inside a phase go by ascending index and
/// elements never sampled are appended in ascending index.
inline RoundingTrace round_lp_traced(std::span<const double> x, int n, const GainFunction& f, double gamma, Rng& rng) {
  detail::check_assignment(x, n);
  if (!(gamma > 0.0)) throw std::invalid_argument("round_lp: gamma must be positive");
  RoundingTrace out;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  const int phases = rounding_phases(n);
  for (int i = 1; i <= phases; ++i) {
    const int ti = static_cast<int>(std::min<long long>(n, 1LL << i));
    const double scale = gamma * f(ti);
    std::vector<int> sampled;
    for (int e = 0; e < n; ++e) {
      double z = 0.0;
      for (int t = 0; t < ti; ++t) z += x[static_cast<std::size_t>(e * n + t)];
      const double p = std::min(1.0, std::max(0.0, z) / scale);
      // One draw per element per phase, even when p is 0 or 1.
      if (rng.uniform() < p) sampled.push_back(e);
    }
    for (int e : sampled)
      if (!placed[static_cast<std::size_t>(e)]) {
        placed[static_cast<std::size_t>(e)] = 1;
        out.order.push_back(e);
      }
    out.phase_sets.push_back(std::move(sampled));
  }
  for (int e = 0; e < n; ++e)
    if (!placed[static_cast<std::size_t>(e)]) out.order.push_back(e);
  return out;
}

/// Rounds an LP solution (x*, y*) for `inst` into a ranking order.
inline std::vector<int> round_lp(std::span<const double> xstar, std::span<const double> ystar,
                                 const SetSystemInstance& inst, const GainFunction& f, const RoundingParams& params,
                                 Rng& rng) {
  params.validate();
  const int n = inst.element_count();
  if (ystar.size() != static_cast<std::size_t>(inst.set_count()) * static_cast<std::size_t>(n))
    throw std::invalid_argument("round_lp: y must be m x n");
  return round_lp_traced(xstar, n, f, params.gamma, rng).order;
}

/// t*(S): the largest t in [1, n] with y*(S, t-1) <= eta f(t), where
/// y*(S, 0) = 0. Returned 1-based, one per set.
inline std::vector<int> threshold_times(std::span<const double> ystar, const SetSystemInstance& inst,
                                        const GainFunction& f, double eta) {
  const int n = inst.element_count();
  std::vector<int> out;
  for (int s = 0; s < inst.set_count(); ++s) {
    int best = 1;
    for (int t = 1; t <= n; ++t) {
      const double prev = t == 1 ? 0.0 : ystar[static_cast<std::size_t>(s * n + (t - 2))];
      if (prev <= eta * f(t)) best = t;
    }
    out.push_back(best);
  }
  return out;
}

/// (1 + eta) sum_S f(t*(S)); bounds both OPT and the LP objective from above.
inline double threshold_upper_bound(std::span<const double> ystar, const SetSystemInstance& inst,
                                    const GainFunction& f, double eta) {
  double total = 0.0;
  for (int t : threshold_times(ystar, inst, f, eta)) total += f(t);
  return (1.0 + eta) * total;
}

/// min over t in [1, n] of f((C ln(1/alpha) / alpha) * t / f(t)) / f(t), with
/// f evaluated in closed form past n.
inline double tau(const GainFunction& f, double alpha, int n, double c = 1.0) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("tau: alpha must lie in (0, 0.5)");
  const double stretch = c * std::log(1.0 / alpha) / alpha;
  double best = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= n; ++t) {
    const double ft = f(t);
    best = std::min(best, f(stretch * t / ft) / ft);
  }
  return best;
}

}  // namespace divkit::ranking
