#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "divkit/dispersion/ball.hpp"
#include "divkit/dispersion/baselines.hpp"
#include "divkit/dispersion/qptas.hpp"
#include "divkit/dks/density.hpp"
#include "test_util.hpp"

using namespace divkit;
using namespace divkit::dispersion;

namespace {

MetricInstance line(std::vector<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return MetricInstance::from_points(std::move(pts));
}

// Independent oracle: scans bitmasks in increasing order and keeps the lowest
// mask among maximizers, then converts to the lexicographically smallest set.
DispersionOptimum bitmask_dispersion(const MetricInstance& inst, int p) {
  const int n = inst.size();
  DispersionOptimum best;
  bool have = false;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != p) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(i);
    double v = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) v += inst(s[a], s[b]);
    if (!have || v > best.value + 1e-12 || (v >= best.value - 1e-12 && s < best.set)) {
      best = {s, v};
      have = true;
    }
  }
  return best;
}

InnerOverrides exact_inner() {
  InnerOverrides ov;
  ov.inner = InnerMode::exact;
  return ov;
}

}  // namespace

TEST(Ball, AllPointsInsideInnerBallGiveEmptyRing) {
  const auto m = line({0.0, 1.0, 2.0, 3.0});
  const auto bd = build_dks_from_ball(m, 2, 0, 3, 0.5);
  EXPECT_TRUE(bd.ball.ring.empty());
  EXPECT_TRUE(bd.ball.outer.empty());
  EXPECT_EQ(bd.ball.k, 2);
  EXPECT_EQ(bd.dks.k(), 2);
  EXPECT_EQ(bd.dks.size(), 4);
}

TEST(Ball, DeltaStarIsTwentyDeltaOverEpsilon) {
  const auto m = line({0.0, 1.0, 2.0});
  const auto b = decompose_ball(m, 2, 0, 1, 0.5);
  EXPECT_DOUBLE_EQ(b.delta, 1.0);
  EXPECT_DOUBLE_EQ(b.delta_star, 40.0);
}

TEST(Ball, ClassesPartitionThePoints) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = test::random_euclidean(10, 2, seed);
    for (int u = 0; u < 10; ++u) {
      const auto b = decompose_ball(m, 4, u, (u + 3) % 10, 0.9);
      std::vector<int> all;
      for (const auto* part : {&b.outer, &b.ring, &b.inner}) all.insert(all.end(), part->begin(), part->end());
      std::sort(all.begin(), all.end());
      EXPECT_EQ(all, range_vector(10));
      std::vector<int> ball = b.ring;
      ball.insert(ball.end(), b.inner.begin(), b.inner.end());
      std::sort(ball.begin(), ball.end());
      EXPECT_EQ(ball, b.ball);
      if (b.admissible) {
        EXPECT_GT(b.k, static_cast<int>(b.ring.size()));
      }
    }
  }
}

TEST(Ball, GateSkipsPairsWithManyFarPoints) {
  const auto m = line({0.0, 0.1, 5.0, 6.0, 7.0});
  const auto b = decompose_ball(m, 2, 0, 1, 0.5);
  EXPECT_FALSE(b.admissible);
  EXPECT_THROW(build_dks_from_ball(m, 2, 0, 1, 0.5), std::invalid_argument);
}

TEST(Ball, ZeroDistancePairIsInadmissible) {
  const MetricInstance m(3, {0, 0, 1, 0, 0, 1, 1, 1, 0});
  EXPECT_FALSE(decompose_ball(m, 2, 0, 1, 0.5).admissible);
}

TEST(Ball, DensityMatchesScaledDispersionForSizeK) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = test::random_euclidean(11, 2, seed);
    Rng rng(seed * 31);
    for (int u = 0; u < 11 && checked < 200; ++u)
      for (int v = 0; v < 11; ++v) {
        if (u == v) continue;
        // Only close pairs (u, v) have a non-empty ring.
        const auto b = decompose_ball(m, 5, u, v, 0.95);
        if (!b.admissible || b.ring.empty()) continue;
        const auto bd = build_dks_from_ball(m, 5, u, v, 0.95);
        const auto free = bd.dks.free_nodes();
        const int extra = bd.dks.k() - static_cast<int>(bd.dks.forced().size());
        for (int rep = 0; rep < 20; ++rep) {
          auto pick = free;
          rng.shuffle(pick);
          std::vector<int> j = bd.dks.forced();
          j.insert(j.end(), pick.begin(), pick.begin() + extra);
          std::sort(j.begin(), j.end());
          const auto g = bd.ball.to_global(j);
          const double k = bd.dks.k();
          EXPECT_NEAR(dks::den(j, bd.dks), disp(g, m) / (k * (k - 1) * bd.ball.delta_star), 1e-9);
          ++checked;
        }
        break;
      }
  }
  EXPECT_GT(checked, 0);
}

TEST(Structural, UnitCliquePlusFarWitness) {
  // Four points pairwise at distance 1 and one point at distance 10 from all.
  const int n = 5;
  std::vector<double> d(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d[static_cast<std::size_t>(i * n + j)] = (i == 4 || j == 4) ? 10.0 : 1.0;
  const MetricInstance m(n, d);
  const auto opt = brute_force_dispersion(m, 3);
  EXPECT_EQ(opt.set, (std::vector<int>{0, 1, 4}));
  const auto r = check_structural_lemma(m, 3, opt.set);
  // u_min = 0 (disp 11), witness 2 at distance 1: ratio = 21 / (6 / 16).
  EXPECT_EQ(r.u_min, 0);
  EXPECT_EQ(r.witness, 2);
  EXPECT_DOUBLE_EQ(r.min_ratio, 21.0 * 16.0 / 6.0);
  EXPECT_GE(r.min_ratio, 1.0);
}

TEST(Structural, ThreePointLine) {
  const auto m = line({0.0, 1.0, 3.0});
  const auto opt = brute_force_dispersion(m, 2);
  EXPECT_EQ(opt.set, (std::vector<int>{0, 2}));
  const auto r = check_structural_lemma(m, 2, opt.set);
  // disp = 3, both endpoints have disp 3, u_min = 0, v = 1 at distance 1: 3 / (2/16) = 24.
  EXPECT_EQ(r.u_min, 0);
  EXPECT_DOUBLE_EQ(r.min_ratio, 24.0);
}

TEST(Structural, NonOptimalSetCanFailTheBound) {
  // Two nearly coincident points, everything else far away.
  const auto m = line({0.0, 0.001, 100.0, 200.0});
  const std::vector<int> s = {0, 1};
  const auto r = check_structural_lemma(m, 2, s);
  EXPECT_LT(r.min_ratio, 1.0);
}

TEST(Structural, RejectsFullSet) {
  const auto m = line({0.0, 1.0, 2.0});
  const std::vector<int> s = {0, 1, 2};
  EXPECT_THROW(check_structural_lemma(m, 3, s), std::invalid_argument);
}

TEST(Structural, HoldsOnBruteForceOptima) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto m = seed % 2 ? test::random_euclidean(9, 2, seed) : test::random_range12(9, seed);
    const int p = 2 + static_cast<int>(seed % 5);
    const auto opt = brute_force_dispersion(m, p);
    EXPECT_GE(check_structural_lemma(m, p, opt.set).min_ratio, 1.0) << "seed " << seed;
  }
}

TEST(Greedy, PairOfTwoIsDiametral) {
  const auto m = line({0.0, 4.0, 1.0, 9.0, 3.0});
  EXPECT_EQ(greedy_dispersion(m, 2), (std::vector<int>{0, 3}));
}

TEST(Greedy, EquilateralValue) {
  const int n = 7;
  std::vector<double> d(n * n, 2.5);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i * n + i)] = 0.0;
  const MetricInstance m(n, d);
  for (int p = 1; p <= n; ++p) {
    const auto s = greedy_dispersion(m, p);
    EXPECT_EQ(static_cast<int>(s.size()), p);
    EXPECT_DOUBLE_EQ(disp(s, m), p * (p - 1) / 2.0 * 2.5);
    EXPECT_EQ(s, range_vector(p));
  }
}

TEST(Greedy, HalfApproximationOnRandomFixtures) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto m = seed % 2 ? test::random_euclidean(10, 3, seed) : test::random_range12(10, seed);
    const int p = 2 + static_cast<int>(seed % 6);
    EXPECT_GE(disp(greedy_dispersion(m, p), m), 0.5 * brute_force_dispersion(m, p).value - 1e-12);
  }
}

TEST(BruteForce, AgreesWithBitmaskOrder) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto m = test::random_euclidean(9, 2, seed);
    const int p = 2 + static_cast<int>(seed % 5);
    const auto a = brute_force_dispersion(m, p);
    const auto b = bitmask_dispersion(m, p);
    EXPECT_EQ(a.set, b.set);
    EXPECT_NEAR(a.value, b.value, 1e-12);
  }
}

TEST(BruteForce, Guard) {
  const auto m = test::random_euclidean(40, 2, 3);
  EXPECT_THROW(brute_force_dispersion(m, 20), GuardError);
}

TEST(Qptas, WholeSetWhenPEqualsN) {
  const auto m = test::random_euclidean(5, 2, 9);
  const auto r = qptas_dispersion(m, 5, 0.5, {}, 1);
  EXPECT_EQ(r.set, range_vector(5));
  EXPECT_NEAR(r.value, disp(range_vector(5), m), 1e-12);
  EXPECT_TRUE(r.diagnostics.whole_set);
}

TEST(Qptas, RejectsBadP) {
  const auto m = test::random_euclidean(5, 2, 9);
  EXPECT_THROW(qptas_dispersion(m, 1, 0.5, {}, 1), ValidationError);
  EXPECT_THROW(qptas_dispersion(m, 6, 0.5, {}, 1), ValidationError);
}

TEST(Qptas, PlantedCliqueImageRecoversKTimesKMinusOne) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 10, k = 3 + static_cast<int>(seed % 3);
    Rng rng(seed);
    const auto plant = rng.sample_subset(n, k);
    std::vector<double> w(n * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const bool in = std::binary_search(plant.begin(), plant.end(), i) && std::binary_search(plant.begin(), plant.end(), j);
        w[static_cast<std::size_t>(i * n + j)] = w[static_cast<std::size_t>(j * n + i)] = in ? 1.0 : rng.uniform(0.0, 0.5);
      }
    const auto m = test::one_plus_weight(DksInstance(n, w, {}, k));
    const auto r = qptas_dispersion(m, k, 0.5, exact_inner(), seed);
    EXPECT_DOUBLE_EQ(r.value, k * (k - 1.0));
    EXPECT_EQ(r.set, plant);
  }
}

TEST(Qptas, ExactInnerIsNearOptimal) {
  int good = 0;
  const int runs = 30;
  for (std::uint64_t seed = 1; seed <= runs; ++seed) {
    const auto m = test::random_euclidean(9, 2, seed);
    const int p = 2 + static_cast<int>(seed % 4);
    const auto r = qptas_dispersion(m, p, 0.5, exact_inner(), seed);
    EXPECT_EQ(static_cast<int>(r.set.size()), p);
    EXPECT_NEAR(r.value, disp(r.set, m), 1e-9);
    if (r.value >= 0.9 * brute_force_dispersion(m, p).value) ++good;
    EXPECT_FALSE(r.diagnostics.theoretical_parameters_honored);
  }
  EXPECT_GE(good, 29);
}

TEST(Qptas, NeverBelowGreedyAndDecompositionHolds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = seed % 2 ? test::random_euclidean(8, 2, seed) : test::random_range12(8, seed);
    const int p = 2 + static_cast<int>(seed % 4);
    const auto r = qptas_dispersion(m, p, 0.5, exact_inner(), seed);
    EXPECT_GE(r.value, disp(greedy_dispersion(m, p), m) - 1e-12);
    EXPECT_LE(r.diagnostics.decomposition_max_error, 1e-9);
    EXPECT_EQ(r.diagnostics.pairs_total, 8 * 7);
    EXPECT_EQ(r.diagnostics.pairs_total, r.diagnostics.pairs_admissible + r.diagnostics.pairs_skipped_gate +
                                              r.diagnostics.pairs_skipped_degenerate);
  }
}

TEST(Qptas, SchemeModeOnSmallInstanceHonorsParameters) {
  const auto m = test::random_euclidean(6, 2, 4);
  const auto r = qptas_dispersion(m, 3, 0.5, {}, 11);
  EXPECT_EQ(r.set.size(), 3u);
  EXPECT_TRUE(r.diagnostics.theoretical_parameters_honored);
  EXPECT_DOUBLE_EQ(r.diagnostics.epsilon_prime, 0.00005 * 0.25);
  EXPECT_GE(r.value, 0.9 * brute_force_dispersion(m, 3).value);
}

TEST(Qptas, ScaleEquivariance) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = test::random_euclidean(8, 2, seed);
    const int p = 2 + static_cast<int>(seed % 4);
    const auto a = qptas_dispersion(m, p, 0.5, exact_inner(), seed);
    for (double c : {0.25, 4.0}) {
      const auto b = qptas_dispersion(m.scaled(c), p, 0.5, exact_inner(), seed);
      EXPECT_EQ(a.set, b.set);
      EXPECT_NEAR(b.value, c * a.value, 1e-9 * c * a.value);
    }
  }
}

TEST(Qptas, SameSeedSameResult) {
  const auto m = test::random_euclidean(7, 2, 21);
  InnerOverrides ov;
  ov.s = 2;
  const auto a = qptas_dispersion(m, 4, 0.5, ov, 5);
  const auto b = qptas_dispersion(m, 4, 0.5, ov, 5);
  EXPECT_EQ(a.set, b.set);
  EXPECT_EQ(a.value, b.value);
  EXPECT_FALSE(a.diagnostics.theoretical_parameters_honored);
}
