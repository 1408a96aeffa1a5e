#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "divkit/core/diversity.hpp"
#include "divkit/dispersion/ball.hpp"
#include "divkit/dispersion/pair_loop.hpp"
#include "divkit/diversification/baselines.hpp"
#include "divkit/diversification/instance.hpp"
#include "divkit/dks/brute_force.hpp"
#include "divkit/dks/submodular_dks.hpp"

namespace divkit::diversification {

using dispersion::InnerMode;
using dispersion::InnerOverrides;
using dispersion::PairLoopResult;

/// Bonus on the ball instance of one pair:
/// h(C) = f(points beyond d(u,v) + C) / (k (k - 1) D*), with C given in
/// local ball ids. The outside set is fixed per pair.
class BallBonus {
 public:
  BallBonus(const SubmodularSpec& f, const dispersion::BallDecomposition& b)
      : f_(&f), ball_(&b.ball), outside_(b.outside_delta()), scale_(1.0 / (b.k * (b.k - 1.0) * b.delta_star)) {}

  double operator()(std::span<const int> c) const {
    std::vector<int> s = outside_;
    for (int x : c) s.push_back((*ball_)[static_cast<std::size_t>(x)]);
    return (*f_)(s) * scale_;
  }

  double scale() const noexcept { return scale_; }

 private:
  const SubmodularSpec* f_;
  const std::vector<int>* ball_;
  std::vector<int> outside_;
  double scale_;
};

/// Ball-decomposition scheme for Max-Sum Diversification. Uses the pair loop
/// of the dispersion scheme; each ball instance is a Submodular DkS instance
/// with bonus BallBonus, solved with gamma = 0.00005 eps^2 unless overridden
/// (or exactly). Candidates are ranked by dive and compared against the
/// marginal greedy baseline.
inline PairLoopResult diversify(const DiversificationInstance& di, double epsilon, const InnerOverrides& ov,
                                std::uint64_t seed) {
  dispersion::check_target_size(di.metric, di.p);
  const double gamma = ov.gamma.value_or(dispersion::theoretical_inner_accuracy(epsilon));
  auto solve = [&](const dispersion::BallDks& bd, std::uint64_t pair_seed) -> std::pair<std::vector<int>, bool> {
    const BallBonus h(di.f, bd.ball);
    if (ov.inner == InnerMode::exact) return {dks::brute_force_subdks(bd.dks, h).nodes, false};
    auto r = dks::submodular_dks(bd.dks, h, ov.params(gamma), pair_seed);
    return {std::move(r.solution.nodes), r.diagnostics.caps_hit()};
  };
  auto score = [&](const std::vector<int>& s) { return dive(s, di.metric, di.f); };
  return dispersion::run_pair_loop(di.metric, di.p, epsilon, ov, seed, solve, score, greedy_diversification(di));
}

/// Lower-bound check with dive(S) in the numerator; u_min still minimizes
/// the dispersion part disp(u, S).
inline dispersion::StructuralReport check_div_structural_lemma(const DiversificationInstance& di,
                                                               std::span<const int> sopt) {
  if (static_cast<int>(sopt.size()) != di.p)
    throw std::invalid_argument("check_div_structural_lemma: |S| must equal p");
  if (di.p == di.size()) throw std::invalid_argument("check_div_structural_lemma: p = n leaves no witness");
  return dispersion::structural_ratio(di.metric, sopt, dive(sopt, di.metric, di.f));
}

}  // namespace divkit::diversification
