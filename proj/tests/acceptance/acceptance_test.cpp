// Acceptance gate: each numbered check prints one PASS/FAIL line. The binary
// exits non-zero when any check fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "../test_util.hpp"
#include "divkit/core/combinatorics.hpp"
#include "divkit/core/metric.hpp"
#include "divkit/core/rng.hpp"
#include "divkit/dispersion/baselines.hpp"
#include "divkit/dispersion/qptas.hpp"
#include "divkit/diversification/baselines.hpp"
#include "divkit/diversification/diversify.hpp"
#include "divkit/dks/brute_force.hpp"
#include "divkit/dks/density.hpp"
#include "divkit/dks/submodular_dks.hpp"
#include "divkit/lp/dcg_separation.hpp"
#include "divkit/ranking/dcg_lp.hpp"
#include "divkit/ranking/ptas.hpp"
#include "divkit/ranking/ranking.hpp"
#include "divkit/workbench/generators.hpp"
#include "divkit/workbench/results.hpp"

namespace {

using namespace divkit;
using Clock = std::chrono::steady_clock;

constexpr double kE = std::numbers::e;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

dks::SubDksParams exhaustive_params(double gamma) {
  dks::SubDksParams p;
  p.gamma = gamma;
  p.s = 1;
  p.enum_cap = dks::kUncapped;
  p.mode = dks::MatroidMode::exact;
  return p;
}

// Shared DkS fixtures: n in [6, 12], k in [2, 6], up to two forced nodes.
std::vector<DksInstance> dks_fixtures() {
  std::vector<DksInstance> out;
  Rng rng(1001);
  for (int i = 0; i < 100; ++i) {
    const int n = 6 + rng.below(7);
    const int k = 2 + rng.below(5);
    const int forced = rng.below(std::min(2, k - 1) + 1);
    out.push_back(test::random_dks(n, k, forced, 20000 + static_cast<std::uint64_t>(i)));
  }
  return out;
}

struct ScaledCoverage {
  SubmodularSpec f;
  double scale = 1.0;
  double operator()(std::span<const int> s) const { return scale * f(s); }
};

dispersion::InnerOverrides exact_inner() {
  dispersion::InnerOverrides ov;
  ov.inner = dispersion::InnerMode::exact;
  return ov;
}

// --- 1 ----------------------------------------------------------------------
Outcome dks_oracle_equivalence() {
  const auto t0 = Clock::now();
  int ok = 0, total = 0;
  double worst = 0.0;
  for (const auto& inst : dks_fixtures()) {
    const auto opt = dks::brute_force_subdks(inst, ZeroFunction{});
    const auto res = dks::submodular_dks(inst, ZeroFunction{}, exhaustive_params(0.1), 7);
    const double gap = std::abs(res.solution.den - opt.den);
    worst = std::max(worst, gap);
    ok += gap <= 1e-9 && !res.diagnostics.caps_hit();
    ++total;
  }
  const double secs = seconds_since(t0);
  return {ok == total && secs < 120.0, fmt("%d/%d within 1e-9 (max gap %.3g), %.2f s", ok, total, worst, secs)};
}

// --- 2 ----------------------------------------------------------------------
Outcome dks_additive_guarantee() {
  int ok = 0, total = 0, honored = 0;
  for (const auto& inst : dks_fixtures()) {
    const auto opt = dks::brute_force_subdks(inst, ZeroFunction{});
    const auto res = dks::dks_additive(inst, 0.1, 11);
    const bool h = !res.diagnostics.caps_hit() && !res.diagnostics.no_anchor;
    honored += h;
    ok += h && res.solution.den >= opt.den - 0.1;
    ++total;
  }
  return {ok == total, fmt("%d/%d with den >= OPT - 0.1 (%d/%d uncapped default parameters)", ok, total, honored, total)};
}

// --- 3 ----------------------------------------------------------------------
Outcome submodular_expectation() {
  constexpr double gamma = 0.1;
  int ok = 0;
  double worst_margin = 1e300;
  Rng rng(3003);
  for (int fx = 0; fx < 20; ++fx) {
    const int n = 6 + rng.below(7);
    const int k = 2 + rng.below(5);
    const auto inst = test::random_dks(n, k, rng.below(2), 30000 + static_cast<std::uint64_t>(fx));
    const ScaledCoverage h{test::random_coverage(n, 8, 3, 31000 + static_cast<std::uint64_t>(fx)), 0.5};
    const auto opt = dks::brute_force_subdks(inst, h);
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      dks::SubDksParams params;
      params.gamma = gamma;
      sum += dks::submodular_dks(inst, h, params, seed).solution.value;
    }
    const double bound = (1.0 - 1.0 / kE - gamma) * opt.h + opt.den - gamma;
    const double margin = sum / 50.0 - bound;
    worst_margin = std::min(worst_margin, margin);
    ok += margin >= -1e-6;
  }
  return {ok == 20, fmt("%d/20 fixtures meet the bound (worst margin %.4f)", ok, worst_margin)};
}

// --- 4 ----------------------------------------------------------------------
double exhaustive_worst_slack(std::span<const double> x, std::span<const double> y, const SetSystemInstance& inst) {
  const int n = inst.element_count();
  double worst = 0.0;
  for (int s = 0; s < inst.set_count(); ++s) {
    const auto& set = inst.set(s);
    const int sz = static_cast<int>(set.members.size());
    for (int t = 0; t < n; ++t) {
      const double ys = y[static_cast<std::size_t>(s * n + t)];
      for (unsigned mask = 0; mask < (1u << sz); ++mask) {
        const int a = std::popcount(mask);
        if (a >= set.requirement) continue;
        double lhs = 0.0;
        for (int i = 0; i < sz; ++i) {
          if (mask & (1u << i)) continue;
          const int e = set.members[static_cast<std::size_t>(i)];
          for (int tp = 0; tp <= t; ++tp) lhs += x[static_cast<std::size_t>(e * n + tp)];
        }
        worst = std::min(worst, lhs - (set.requirement - a) * ys);
      }
    }
  }
  return worst;
}

Outcome dcg_relaxation_soundness() {
  int lp_ok = 0;
  double worst_gap = 1e300;
  Rng rng(4004);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + rng.below(6);
    const int m = 1 + rng.below(6);
    const auto inst = test::random_setsystem(n, m, 3, 40000 + static_cast<std::uint64_t>(i));
    const auto opt = ranking::brute_force_dcg(inst);
    const auto lp = ranking::solve_dcg_lp(inst, ranking::GainFunction::standard());
    const double gap = lp.objective - opt.value;
    worst_gap = std::min(worst_gap, gap);
    lp_ok += lp.usable() && gap >= -1e-6;
  }

  int sep_ok = 0;
  constexpr int kPoints = 10000;
  for (int i = 0; i < kPoints; ++i) {
    const int n = 2 + rng.below(5);
    const int m = 1 + rng.below(4);
    std::vector<CoveredSet> sets;
    for (int s = 0; s < m; ++s) {
      auto members = rng.sample_subset(n, 1 + rng.below(std::min(n, 4)));
      const int req = 1 + rng.below(static_cast<int>(members.size()));
      sets.push_back({std::move(members), req});
    }
    const SetSystemInstance inst(n, std::move(sets));
    std::vector<double> x(static_cast<std::size_t>(n * n)), y(static_cast<std::size_t>(m * n));
    for (auto& v : x) v = rng.below(3) == 0 ? 0.0 : rng.uniform();
    for (auto& v : y) v = rng.uniform();
    const auto cuts = lp::dcg_separation(x, y, inst);
    const double worst = exhaustive_worst_slack(x, y, inst);
    double found = 0.0;
    for (const auto& c : cuts) found = std::min(found, c.slack);
    const bool agree = (!cuts.empty()) == (worst < -lp::kSeparationTolerance) &&
                       std::abs(found - std::min(0.0, worst)) <= 1e-12;
    sep_ok += agree;
  }
  return {lp_ok == 100 && sep_ok == kPoints,
          fmt("LP >= OPT - 1e-6 on %d/100 (min gap %.3g); separation agrees on %d/%d points", lp_ok, worst_gap, sep_ok,
              kPoints)};
}

// --- 5 ----------------------------------------------------------------------
Outcome dcg_ptas_quality() {
  int good = 0, valid = 0;
  double worst = 1e300;
  Rng rng(5005);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + rng.below(5);
    const int m = 2 + rng.below(5);
    const auto inst = test::random_setsystem(n, m, 3, 50000 + static_cast<std::uint64_t>(i));
    ranking::PtasOptions opt;
    opt.u = 2;
    opt.gamma = 0.05;
    opt.trials = 200;
    const auto res = ranking::ptas_dcg(inst, opt, static_cast<std::uint64_t>(i));
    const double best = ranking::brute_force_dcg(inst).value;
    const double ratio = best > 0.0 ? res.dcg / best : 1.0;
    worst = std::min(worst, ratio);
    good += ratio >= 0.95;
    const auto& order = res.ranking.order;
    valid += ranking::is_permutation_of_n(order, n) &&
             std::abs(ranking::dcg_value(order, inst) - res.dcg) <= 1e-9;
  }
  return {good >= 95 && valid == 100, fmt("%d/100 at >= 0.95 OPT (worst ratio %.4f); %d/100 valid permutations", good,
                                          worst, valid)};
}

// --- 6 ----------------------------------------------------------------------
Outcome structural_lemmas() {
  int disp_ok = 0, dive_ok = 0;
  double disp_min = 1e300, dive_min = 1e300;
  Rng rng(6006);
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + rng.below(9);
    const int p = 2 + rng.below(std::min(6, n - 1) - 1);
    const auto seed = 60000 + static_cast<std::uint64_t>(i);
    const MetricInstance metric = i % 2 == 0 ? test::random_euclidean(n, 2, seed) : test::random_range12(n, seed);

    const auto opt = dispersion::brute_force_dispersion(metric, p);
    const double r = dispersion::check_structural_lemma(metric, p, opt.set).min_ratio;
    disp_min = std::min(disp_min, r);
    disp_ok += r >= 1.0;

    const diversification::DiversificationInstance di(metric, test::random_coverage(n, 10, 3, seed + 500), p);
    const auto dopt = diversification::brute_force_diversification(di);
    const double rd = diversification::check_div_structural_lemma(di, dopt.set).min_ratio;
    dive_min = std::min(dive_min, rd);
    dive_ok += rd >= 1.0;
  }
  return {disp_ok == 200 && dive_ok == 200,
          fmt("disp ratio >= 1 on %d/200 (min %.3f); dive ratio >= 1 on %d/200 (min %.3f)", disp_ok, disp_min, dive_ok,
              dive_min)};
}

// --- 7 ----------------------------------------------------------------------
Outcome planted_recovery() {
  int recovered = 0, planted_total = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(7007, {static_cast<std::uint64_t>(i)}));
    const int n = 6 + rng.below(7);
    const int k = 2 + rng.below(std::min(6, n - 1) - 1);
    const auto planted = workbench::gen_planted_dks(n, k, 70000 + static_cast<std::uint64_t>(i));
    const auto image = workbench::dks_to_dispersion(planted.instance);
    const auto res = dispersion::qptas_dispersion(image.metric, image.p, 0.5, exact_inner(), static_cast<std::uint64_t>(i));
    recovered += res.value == static_cast<double>(k * (k - 1));
    ++planted_total;
  }

  // Greedy against every brute-forceable fixture family used by the dispersion checks.
  int greedy_ok = 0, greedy_total = 0;
  double worst = 1e300;
  Rng rng(7107);
  for (int i = 0; i < 300; ++i) {
    const int n = 3 + rng.below(10);
    const int p = 2 + rng.below(std::min(6, n) - 1);
    const auto seed = 71000 + static_cast<std::uint64_t>(i);
    MetricInstance metric = i % 3 == 0   ? test::random_euclidean(n, 2, seed)
                            : i % 3 == 1 ? test::random_range12(n, seed)
                                         : workbench::dks_to_dispersion(workbench::gen_planted_dks(n, p, seed).instance).metric;
    const double best = dispersion::brute_force_dispersion(metric, p).value;
    const double g = disp(dispersion::greedy_dispersion(metric, p), metric);
    const double ratio = g / best;
    worst = std::min(worst, ratio);
    greedy_ok += g >= 0.5 * best;
    ++greedy_total;
  }
  return {recovered == planted_total && greedy_ok == greedy_total,
          fmt("planted k(k-1) recovered on %d/%d; greedy >= 0.5 OPT on %d/%d (worst ratio %.3f)", recovered,
              planted_total, greedy_ok, greedy_total, worst)};
}

// --- 8 ----------------------------------------------------------------------
Outcome dispersion_approximation() {
  int good = 0, not_honored = 0;
  double worst = 1e300;
  Rng rng(8008);
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + rng.below(9);
    const int p = 2 + rng.below(std::min(6, n - 1) - 1);
    const auto metric = workbench::gen_random_euclidean(n, 2, 80000 + static_cast<std::uint64_t>(i));
    const auto res = dispersion::qptas_dispersion(metric, p, 0.5, exact_inner(), static_cast<std::uint64_t>(i));
    const double best = dispersion::brute_force_dispersion(metric, p).value;
    const double ratio = res.value / best;
    worst = std::min(worst, ratio);
    good += ratio >= 0.9;
    not_honored += !res.diagnostics.theoretical_parameters_honored;
  }
  return {good >= 95 && not_honored == 100,
          fmt("%d/100 at >= 0.9 OPT (worst ratio %.4f); %d/100 record parameters as not honored", good, worst,
              not_honored)};
}

// --- 9 ----------------------------------------------------------------------
Outcome diversification_bound() {
  constexpr double eps = 0.3;
  int ok = 0;
  double worst_margin = 1e300;
  Rng rng(9009);
  for (int fx = 0; fx < 20; ++fx) {
    const int n = 5 + rng.below(8);
    const int p = 2 + rng.below(std::min(6, n - 1) - 1);
    const auto seed = 90000 + static_cast<std::uint64_t>(fx);
    const auto metric = fx % 2 == 0 ? test::random_euclidean(n, 2, seed) : test::random_range12(n, seed);
    const diversification::DiversificationInstance di(metric, workbench::gen_coverage_function(n, 10, 3, seed + 1), p);
    const auto opt = diversification::brute_force_diversification(di);
    double sum = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) sum += diversification::diversify(di, eps, exact_inner(), s).value;
    const double bound = (1.0 - eps) * opt.disp + (1.0 - 1.0 / kE - eps) * opt.f;
    const double margin = sum / 50.0 - bound;
    worst_margin = std::min(worst_margin, margin);
    ok += margin >= 0.0;
  }
  return {ok == 20, fmt("%d/20 fixtures meet the bound (worst margin %.4f)", ok, worst_margin)};
}

// --- 10 ---------------------------------------------------------------------
Outcome generator_identities() {
  int dcg_ok = 0, dcg_total = 0;
  Rng rng(10010);
  for (int i = 0; i < 40; ++i) {
    const int k = 2 + rng.below(5);
    const int universe = k * (1 + rng.below(4));
    const auto cov = workbench::gen_regular_coverage(universe, k, true, rng.below(4), 100000 + static_cast<std::uint64_t>(i));
    const auto inst = workbench::coverage_to_dcg(cov);
    std::vector<int> order = range_vector(static_cast<int>(cov.sets.size()));
    double expected = 0.0;
    for (int r = 1; r <= k; ++r) expected += (static_cast<double>(universe) / k) / std::log2(r + 1.0);
    dcg_ok += std::abs(ranking::dcg_value(order, inst) - expected) <= 1e-9;
    ++dcg_total;
  }

  long subsets = 0, id_ok = 0;
  for (int n = 2; n <= 10; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      const auto g = test::random_dks(n, 2, 0, 101000 + static_cast<std::uint64_t>(n * 10 + rep));
      const auto image = workbench::dks_to_dispersion(g);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int k = std::popcount(mask);
        if (k < 2) continue;
        std::vector<int> j;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) j.push_back(v);
        const double pairs = k * (k - 1) / 2.0;
        const double d = dks::den(j, g);
        ++subsets;
        id_ok += std::abs(disp(j, image.metric) - pairs * (1.0 + d)) <= 1e-9;
      }
    }

  int metrics_ok = 0, metrics_total = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 30;
    const auto seed = 102000 + static_cast<std::uint64_t>(i);
    const MetricInstance m = i % 3 == 0   ? workbench::gen_random_euclidean(n, 1 + i % 4, seed)
                             : i % 3 == 1 ? workbench::gen_random_metric(n, seed)
                                          : workbench::dks_to_dispersion(
                                                workbench::gen_planted_dks(std::max(n, 3), 2, seed).instance)
                                                .metric;
    metrics_ok += validate_metric(m).ok();
    ++metrics_total;
  }
  return {dcg_ok == dcg_total && id_ok == subsets && metrics_ok == metrics_total,
          fmt("planted DCG %d/%d; den/disp identity %ld/%ld subsets; metrics valid %d/%d", dcg_ok, dcg_total, id_ok,
              subsets, metrics_ok, metrics_total)};
}

// --- 11 ---------------------------------------------------------------------
Outcome determinism() {
  using workbench::Json;
  const auto metric = workbench::gen_random_euclidean(10, 2, 11);
  const auto f = workbench::gen_coverage_function(10, 12, 3, 12);
  const diversification::DiversificationInstance di(metric, f, 4);
  const auto planted = workbench::gen_planted_dks(10, 4, 13);
  const auto sets = workbench::gen_setsystem(6, 5, 3, 14);
  dispersion::InnerOverrides scheme;
  scheme.s = 1;

  std::vector<std::pair<std::string, std::function<Json()>>> solvers = {
      {"ptas_dcg", [&] { return workbench::to_json(ranking::ptas_dcg(sets, {}, 5)); }},
      {"submodular_dks",
       [&] {
         const ScaledCoverage h{workbench::gen_coverage_function(10, 8, 3, 15), 0.5};
         return workbench::to_json(dks::submodular_dks(planted.instance, h, {}, 5));
       }},
      {"dks_additive", [&] { return workbench::to_json(dks::dks_additive(planted.instance, 0.2, 5)); }},
      {"qptas_dispersion/exact",
       [&] {
         const auto r = dispersion::qptas_dispersion(metric, 4, 0.5, exact_inner(), 5);
         return workbench::pair_loop_json("dispersion_result", r, r.value, 0.0);
       }},
      {"qptas_dispersion/scheme",
       [&] {
         const auto r = dispersion::qptas_dispersion(metric, 4, 0.5, scheme, 5);
         return workbench::pair_loop_json("dispersion_result", r, r.value, 0.0);
       }},
      {"diversify",
       [&] {
         const auto r = diversification::diversify(di, 0.3, exact_inner(), 5);
         const double fv = f(r.set);
         return workbench::pair_loop_json("diversification_result", r, r.value - fv, fv);
       }},
      {"greedy_dispersion", [&] { return Json(dispersion::greedy_dispersion(metric, 4)); }},
      {"greedy_diversification", [&] { return Json(diversification::greedy_diversification(di)); }},
  };
  int same = 0;
  std::string failed;
  for (const auto& [name, run] : solvers) {
    if (run().dump(2) == run().dump(2))
      ++same;
    else
      failed += " " + name;
  }
  const int total = static_cast<int>(solvers.size());
  return {same == total, fmt("%d/%d solvers byte-identical across repeated runs%s%s", same, total,
                             failed.empty() ? "" : "; differing:", failed.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> checks = {
      {"DkS oracle equivalence", dks_oracle_equivalence},
      {"DkS additive guarantee", dks_additive_guarantee},
      {"submodular DkS expectation bound", submodular_expectation},
      {"DCG relaxation soundness", dcg_relaxation_soundness},
      {"DCG PTAS quality", dcg_ptas_quality},
      {"structural lemmas", structural_lemmas},
      {"dispersion planted recovery", planted_recovery},
      {"dispersion approximation", dispersion_approximation},
      {"diversification bound", diversification_bound},
      {"generator and identity checks", generator_identities},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
