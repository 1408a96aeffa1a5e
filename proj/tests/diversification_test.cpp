#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "divkit/dispersion/qptas.hpp"
#include "divkit/diversification/baselines.hpp"
#include "divkit/diversification/diversify.hpp"
#include "divkit/dks/density.hpp"
#include "test_util.hpp"

using namespace divkit;
using namespace divkit::diversification;

namespace {

InnerOverrides exact_inner() {
  InnerOverrides ov;
  ov.inner = InnerMode::exact;
  return ov;
}

DiversificationInstance coverage_fixture(int n, int p, std::uint64_t seed) {
  return {test::random_euclidean(n, 2, seed), test::random_coverage(n, 8, 3, seed + 1000), p};
}

// Independent oracle over bitmasks; coverage value recomputed from the covers.
double bitmask_best_dive(const DiversificationInstance& di) {
  const int n = di.size();
  double best = -1.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != di.p) continue;
    double d = 0.0;
    std::vector<char> hit(static_cast<std::size_t>(di.f.universe()), 0);
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int j = i + 1; j < n; ++j)
        if (mask >> j & 1u) d += di.metric(i, j);
      for (int item : di.f.covers()[static_cast<std::size_t>(i)]) hit[static_cast<std::size_t>(item)] = 1;
    }
    double fv = 0.0;
    for (int item = 0; item < di.f.universe(); ++item)
      if (hit[static_cast<std::size_t>(item)]) fv += (*di.f.uweights())[static_cast<std::size_t>(item)];
    best = std::max(best, d + fv);
  }
  return best;
}

}  // namespace

TEST(DiversificationInstance, Validation) {
  const auto m = test::random_euclidean(4, 2, 1);
  EXPECT_THROW(DiversificationInstance(m, SubmodularSpec::modular({1, 2, 3}), 2), ValidationError);
  EXPECT_THROW(DiversificationInstance(m, SubmodularSpec::modular({1, 2, 3, 4}), 0), ValidationError);
  EXPECT_THROW(DiversificationInstance(m, SubmodularSpec::modular({1, 2, 3, 4}), 5), ValidationError);
  const DiversificationInstance di(m, SubmodularSpec::modular({1, 2, 3, 4}), 1);
  EXPECT_THROW(diversify(di, 0.5, {}, 1), ValidationError);
}

TEST(Greedy, PEqualsOnePicksArgmaxF) {
  const auto m = test::random_euclidean(5, 2, 2);
  const DiversificationInstance di(m, SubmodularSpec::modular({0.5, 3.0, 1.0, 3.0, 0.1}), 1);
  EXPECT_EQ(greedy_diversification(di), (std::vector<int>{1}));
}

TEST(Greedy, ZeroBonusStartsFromLowestIndex) {
  const auto m = test::random_euclidean(6, 2, 3);
  const DiversificationInstance di(m, SubmodularSpec::modular(std::vector<double>(6, 0.0)), 3);
  const auto s = greedy_diversification(di);
  EXPECT_TRUE(std::find(s.begin(), s.end(), 0) != s.end());
  // The second pick is the farthest point from 0.
  int far = 1;
  for (int x = 2; x < 6; ++x)
    if (m(0, x) > m(0, far)) far = x;
  EXPECT_TRUE(std::find(s.begin(), s.end(), far) != s.end());
}

TEST(Greedy, ObservedRatioOnSmallFixtures) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto di = coverage_fixture(9, 2 + static_cast<int>(seed % 4), seed);
    const auto s = greedy_diversification(di);
    EXPECT_EQ(static_cast<int>(s.size()), di.p);
    EXPECT_GE(dive(s, di.metric, di.f), 0.4 * brute_force_diversification(di).value);
  }
}

TEST(BruteForce, AgreesWithBitmaskOracleAndSplits) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto di = coverage_fixture(9, 2 + static_cast<int>(seed % 5), seed);
    const auto opt = brute_force_diversification(di);
    EXPECT_NEAR(opt.value, bitmask_best_dive(di), 1e-9);
    EXPECT_NEAR(opt.disp, disp(opt.set, di.metric), 1e-12);
    EXPECT_NEAR(opt.f, di.f(opt.set), 1e-12);
    EXPECT_NEAR(opt.value, opt.disp + opt.f, 1e-12);
  }
}

TEST(BruteForce, Guard) {
  const DiversificationInstance di(test::random_euclidean(40, 2, 1), SubmodularSpec::modular(std::vector<double>(40, 1.0)), 20);
  EXPECT_THROW(brute_force_diversification(di), GuardError);
}

TEST(BallBonus, CombinedObjectiveIdentity) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto di = coverage_fixture(10, 5, seed);
    Rng rng(seed);
    for (int u = 0; u < 10; ++u)
      for (int v = 0; v < 10; ++v) {
        if (u == v) continue;
        const auto b = dispersion::decompose_ball(di.metric, 5, u, v, 0.9);
        if (!b.admissible || b.ring.empty()) continue;
        const auto bd = dispersion::build_dks_from_ball(di.metric, 5, u, v, 0.9);
        const BallBonus h(di.f, bd.ball);
        const double kk = bd.ball.k * (bd.ball.k - 1.0) * bd.ball.delta_star;
        const auto free = bd.dks.free_nodes();
        const int extra = bd.dks.k() - static_cast<int>(bd.dks.forced().size());
        for (int rep = 0; rep < 20; ++rep) {
          auto pick = free;
          rng.shuffle(pick);
          std::vector<int> j = bd.dks.forced();
          j.insert(j.end(), pick.begin(), pick.begin() + extra);
          std::sort(j.begin(), j.end());
          const auto g = bd.ball.to_global(j);
          auto with_outside = b.outside_delta();
          with_outside.insert(with_outside.end(), g.begin(), g.end());
          const double lhs = h(j) + dks::den(j, bd.dks);
          const double rhs = di.f(with_outside) / kk + disp(g, di.metric) / kk;
          EXPECT_NEAR(lhs, rhs, 1e-9);
          ++checked;
        }
      }
  }
  EXPECT_GT(checked, 0);
}

TEST(Diversify, ZeroBonusMatchesDispersion) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = test::random_euclidean(8, 2, seed);
    const int p = 2 + static_cast<int>(seed % 4);
    const DiversificationInstance di(m, SubmodularSpec::modular(std::vector<double>(8, 0.0)), p);
    for (auto ov : {exact_inner(), InnerOverrides{}}) {
      const auto a = diversify(di, 0.5, ov, seed);
      const auto b = dispersion::qptas_dispersion(m, p, 0.5, ov, seed);
      EXPECT_EQ(a.diagnostics.loop_set, b.diagnostics.loop_set);
      EXPECT_EQ(a.set, b.set);
    }
  }
}

TEST(Diversify, ExactInnerMeetsTwoTermBound) {
  const double eps = 0.3;
  for (std::uint64_t fixture = 1; fixture <= 6; ++fixture) {
    const auto di = coverage_fixture(9, 2 + static_cast<int>(fixture % 4), fixture);
    const auto opt = brute_force_diversification(di);
    double total = 0.0;
    const int seeds = 5;
    for (int s = 0; s < seeds; ++s) total += diversify(di, eps, exact_inner(), static_cast<std::uint64_t>(s)).value;
    EXPECT_GE(total / seeds, (1 - eps) * opt.disp + (1 - 1 / std::exp(1.0) - eps) * opt.f);
  }
}

TEST(Diversify, HeavyElementIsAlwaysChosen) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = test::random_euclidean(8, 2, seed);
    std::vector<double> w(8, 0.1);
    w[seed % 8] = 1000.0;
    const DiversificationInstance di(m, SubmodularSpec::modular(w), 3);
    const auto r = diversify(di, 0.5, exact_inner(), seed);
    EXPECT_TRUE(std::binary_search(r.set.begin(), r.set.end(), static_cast<int>(seed % 8)));
    const auto opt = brute_force_diversification(di).set;
    EXPECT_TRUE(std::binary_search(opt.begin(), opt.end(), static_cast<int>(seed % 8)));
  }
}

TEST(Diversify, NeverBelowGreedy) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto di = coverage_fixture(8, 3, seed);
    const auto r = diversify(di, 0.5, exact_inner(), seed);
    EXPECT_GE(r.value, dive(greedy_diversification(di), di.metric, di.f) - 1e-12);
    EXPECT_NEAR(r.value, dive(r.set, di.metric, di.f), 1e-9);
  }
}

TEST(Diversify, DominatingElementDoesNotHurt) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 7; ++i) pts.push_back({rng.uniform(), rng.uniform()});
    std::vector<double> w(7);
    for (auto& x : w) x = rng.uniform();
    const DiversificationInstance base(MetricInstance::from_points(pts), SubmodularSpec::modular(w), 3);
    pts.push_back({10.0, 10.0});
    w.push_back(5.0);
    const DiversificationInstance grown(MetricInstance::from_points(pts), SubmodularSpec::modular(w), 3);
    const auto a = diversify(base, 0.5, exact_inner(), seed);
    const auto b = diversify(grown, 0.5, exact_inner(), seed);
    EXPECT_GE(b.value, a.value);
  }
}

TEST(Diversify, SchemeModeSmallInstance) {
  const auto di = coverage_fixture(6, 3, 7);
  const auto r = diversify(di, 0.5, {}, 3);
  EXPECT_EQ(r.set.size(), 3u);
  EXPECT_TRUE(r.diagnostics.theoretical_parameters_honored);
  EXPECT_EQ(r.set, diversify(di, 0.5, {}, 3).set);
}

TEST(Structural, DiveRatioOnOptima) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto m = seed % 2 ? test::random_euclidean(9, 2, seed) : test::random_range12(9, seed);
    const DiversificationInstance di(m, test::random_coverage(9, 6, 3, seed), 2 + static_cast<int>(seed % 5));
    const auto opt = brute_force_diversification(di);
    EXPECT_GE(check_div_structural_lemma(di, opt.set).min_ratio, 1.0);
  }
}

TEST(Structural, DiveFixturesMirrorDispersion) {
  // Unit clique of four plus a far point, f adds 1 per point.
  const int n = 5;
  std::vector<double> d(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d[static_cast<std::size_t>(i * n + j)] = (i == 4 || j == 4) ? 10.0 : 1.0;
  const DiversificationInstance a(MetricInstance(n, d), SubmodularSpec::modular(std::vector<double>(5, 1.0)), 3);
  const auto opt = brute_force_diversification(a);
  const auto r = check_div_structural_lemma(a, opt.set);
  EXPECT_DOUBLE_EQ(r.min_ratio, 24.0 * 16.0 / 6.0);

  const DiversificationInstance line(MetricInstance::from_points({{0.0}, {1.0}, {3.0}}),
                                     SubmodularSpec::modular({0.0, 0.0, 0.0}), 2);
  EXPECT_DOUBLE_EQ(check_div_structural_lemma(line, brute_force_diversification(line).set).min_ratio, 24.0);

  const DiversificationInstance bad(MetricInstance::from_points({{0.0}, {0.001}, {100.0}, {200.0}}),
                                    SubmodularSpec::modular({0.0, 0.0, 0.0, 0.0}), 2);
  const std::vector<int> s = {0, 1};
  EXPECT_LT(check_div_structural_lemma(bad, s).min_ratio, 1.0);
  EXPECT_THROW(check_div_structural_lemma(line, std::vector<int>{0, 1, 2}), std::invalid_argument);
}
