#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/dks_instance.hpp"
#include "divkit/core/metric.hpp"

namespace divkit::dispersion {

/// Classification of the points around an anchor u at the scale of a witness v.
///
/// With D = d(u, v) and D* = 20 D / eps, every point falls in exactly one of
/// three classes: `outer` (d(u, z) > D*, always taken), `ring` (D < d(u, z) <= D*,
/// forced into the DkS solution) and `inner` (d(u, z) <= D, free). `ball` lists
/// ring and inner together in ascending global order; a node's position in
/// `ball` is its id in the derived DkS instance.
struct BallDecomposition {
  int u = 0;
  int v = 0;
  double delta = 0.0;
  double delta_star = 0.0;
  std::vector<int> outer;
  std::vector<int> ring;
  std::vector<int> inner;
  std::vector<int> ball;
  int k = 0;  // p - |outer|
  bool admissible = false;
  std::string reason;  // why the pair was skipped, empty when admissible

  /// Points at distance more than D from u: ring plus outer, ascending.
  std::vector<int> outside_delta() const {
    std::vector<int> out;
    std::merge(outer.begin(), outer.end(), ring.begin(), ring.end(), std::back_inserter(out));
    return out;
  }

  std::vector<int> to_global(std::span<const int> local) const {
    std::vector<int> out;
    out.reserve(local.size());
    for (int x : local) out.push_back(ball.at(static_cast<std::size_t>(x)));
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline void check_target_size(const MetricInstance& inst, int p) {
  if (p < 2 || p > inst.size())
    throw ValidationError("p must satisfy 2 <= p <= n (got p=" + std::to_string(p) + ", n=" +
                          std::to_string(inst.size()) + ")");
}

/// Classifies the points for the pair (u, v) and applies the admissibility
/// gate: D > 0, fewer than p points beyond D, and a residual size k >= 2.
inline BallDecomposition decompose_ball(const MetricInstance& inst, int p, int u, int v, double epsilon) {
  const int n = inst.size();
  if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw std::invalid_argument("decompose_ball: bad pair");
  if (!(epsilon > 0.0)) throw std::invalid_argument("decompose_ball: epsilon must be positive");
  BallDecomposition b;
  b.u = u;
  b.v = v;
  b.delta = inst(u, v);
  b.delta_star = 20.0 * b.delta / epsilon;
  for (int z = 0; z < n; ++z) {
    const double d = inst(u, z);
    if (d > b.delta_star)
      b.outer.push_back(z);
    else if (d > b.delta)
      b.ring.push_back(z);
    else
      b.inner.push_back(z);
    if (d <= b.delta_star) b.ball.push_back(z);
  }
  b.k = p - static_cast<int>(b.outer.size());
  if (!(b.delta > 0.0)) {
    b.reason = "zero distance";
  } else if (static_cast<int>(b.outer.size() + b.ring.size()) >= p) {
    b.reason = "at least p points beyond d(u,v)";
  } else if (b.k < 2) {
    b.reason = "residual size below 2";
  } else {
    b.admissible = true;
  }
  return b;
}

/// Weight of a pair inside the ball: min(1, d / (2 D*)).
inline double ball_weight(double d, double delta_star) { return std::min(1.0, 0.5 * d / delta_star); }

struct BallDks {
  BallDecomposition ball;
  DksInstance dks;
};

/// DkS instance on B(u, D*) with the ring forced and k = p - |outer|.
/// Throws std::invalid_argument when the pair fails the admissibility gate.
inline BallDks build_dks_from_ball(const MetricInstance& inst, int p, int u, int v, double epsilon) {
  check_target_size(inst, p);
  auto b = decompose_ball(inst, p, u, v, epsilon);
  if (!b.admissible)
    throw std::invalid_argument("build_dks_from_ball: pair (" + std::to_string(u) + "," + std::to_string(v) +
                                ") is inadmissible: " + b.reason);
  const auto m = static_cast<int>(b.ball.size());
  std::vector<double> w(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j)
        w[static_cast<std::size_t>(i * m + j)] =
            ball_weight(inst(b.ball[static_cast<std::size_t>(i)], b.ball[static_cast<std::size_t>(j)]), b.delta_star);
  std::vector<int> forced;
  for (int i = 0; i < m; ++i)
    if (std::binary_search(b.ring.begin(), b.ring.end(), b.ball[static_cast<std::size_t>(i)])) forced.push_back(i);
  DksInstance dks(m, std::move(w), std::move(forced), b.k);
  return {std::move(b), std::move(dks)};
}

struct StructuralReport {
  int u_min = -1;
  int witness = -1;  // v attaining the minimum ratio
  double min_ratio = std::numeric_limits<double>::infinity();
};

/// Lower-bound check for a solution S with objective value `value`:
/// min over v outside S of value / (p(p-1) d(u_min, v) / 16), where u_min
/// minimizes disp(u, S) over S (lowest index on ties). Witnesses at
/// distance 0 give no constraint and are skipped.
inline StructuralReport structural_ratio(const MetricInstance& inst, std::span<const int> s, double value) {
  const int n = inst.size();
  const auto p = static_cast<int>(s.size());
  divkit::detail::check_indices(s, n);
  if (p >= n) throw std::invalid_argument("structural check needs |S| < n (no witness outside S)");
  if (p < 2) throw std::invalid_argument("structural check needs |S| >= 2");
  StructuralReport r;
  double best = std::numeric_limits<double>::infinity();
  for (int u : s) {
    const double du = disp_point(u, s, inst);
    if (du < best || (du == best && u < r.u_min)) {
      best = du;
      r.u_min = u;
    }
  }
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int x : s) in[static_cast<std::size_t>(x)] = 1;
  for (int v = 0; v < n; ++v) {
    if (in[static_cast<std::size_t>(v)]) continue;
    const double d = inst(r.u_min, v);
    if (!(d > 0.0)) continue;
    const double ratio = value / (p * (p - 1) * d / 16.0);
    if (ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.witness = v;
    }
  }
  return r;
}

inline StructuralReport check_structural_lemma(const MetricInstance& inst, int p, std::span<const int> sopt) {
  if (static_cast<int>(sopt.size()) != p) throw std::invalid_argument("check_structural_lemma: |S| must equal p");
  if (p == inst.size()) throw std::invalid_argument("check_structural_lemma: p = n leaves no witness");
  return structural_ratio(inst, sopt, disp(sopt, inst));
}

}  // namespace divkit::dispersion
