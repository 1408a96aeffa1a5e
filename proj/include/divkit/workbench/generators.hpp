#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/combinatorics.hpp"
#include "divkit/core/dks_instance.hpp"
#include "divkit/core/errors.hpp"
#include "divkit/core/metric.hpp"
#include "divkit/core/rng.hpp"
#include "divkit/core/set_system.hpp"
#include "divkit/core/submodular.hpp"

namespace divkit::workbench {

/// n points uniform in [0, 1]^dim with Euclidean distances; coordinates kept.
inline MetricInstance gen_random_euclidean(int n, int dim, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_euclidean: n must be >= 2");
  if (dim < 1) throw std::invalid_argument("gen_random_euclidean: dim must be >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& p : pts)
    for (auto& c : p) c = rng.uniform();
  return MetricInstance::from_points(std::move(pts));
}

/// Distances drawn uniformly from [1, 2]; any such matrix satisfies the
/// triangle inequality since 2 <= 1 + 1.
inline MetricInstance gen_random_metric(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_metric: n must be >= 2");
  Rng rng(seed);
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> d(nn * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) d[i * nn + j] = d[j * nn + i] = rng.uniform(1.0, 2.0);
  return MetricInstance(n, std::move(d));
}

struct PlantedDks {
  DksInstance instance;
  std::vector<int> planted;  // sorted
};

/// A k-set with all internal weights 1; every other pair uniform in [0, 0.5].
/// The forced set is empty.
inline PlantedDks gen_planted_dks(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n) throw std::invalid_argument("gen_planted_dks: need 2 <= k <= n");
  Rng rng(seed);
  auto planted = rng.sample_subset(n, k);
  std::sort(planted.begin(), planted.end());
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int x : planted) in[static_cast<std::size_t>(x)] = 1;
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> w(nn * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) w[i * nn + j] = w[j * nn + i] = in[i] && in[j] ? 1.0 : rng.uniform(0.0, 0.5);
  return {DksInstance(n, std::move(w), {}, k), std::move(planted)};
}

struct DispersionImage {
  MetricInstance metric;
  int p = 0;
};

/// d(u, v) = 1 + w(u, v) on a DkS instance with empty forced set; p = k.
/// For |T| = k, disp(T) = k(k-1)/2 * (1 + den(T)).
inline DispersionImage dks_to_dispersion(const DksInstance& g) {
  if (!g.forced().empty()) throw ValidationError("dks_to_dispersion: forced set must be empty");
  const int n = g.size();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> d(nn * nn, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)] = 1.0 + g.weight(i, j);
  return {MetricInstance(n, std::move(d)), g.k()};
}

/// Maximum k-Coverage input over the universe [0, M).
struct CoverageInstance {
  int universe = 0;
  std::vector<std::vector<int>> sets;
  int k = 1;
  bool regular = false;
  std::vector<int> planted;  // indices of planted partition sets, empty if none

  void validate() const {
    if (universe < 1) throw ValidationError("coverage instance: universe must be >= 1");
    if (k < 1) throw ValidationError("coverage instance: k must be >= 1");
    if (sets.empty()) throw ValidationError("coverage instance: at least one set is required");
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto& t = sets[s];
      const std::string where = "coverage instance: sets[" + std::to_string(s) + "]";
      if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end())
        throw ValidationError(where + " must be sorted and distinct");
      if (!t.empty() && (t.front() < 0 || t.back() >= universe)) throw ValidationError(where + " item out of range");
    }
    if (regular) {
      if (universe % k != 0) throw ValidationError("coverage instance: regular requires k to divide the universe size");
      for (std::size_t s = 0; s < sets.size(); ++s)
        if (static_cast<int>(sets[s].size()) != universe / k)
          throw ValidationError("coverage instance: sets[" + std::to_string(s) + "] must have size M/k");
    }
    for (int i : planted)
      if (i < 0 || i >= static_cast<int>(sets.size())) throw ValidationError("coverage instance: planted index out of range");
  }

  friend bool operator==(const CoverageInstance&, const CoverageInstance&) = default;
};

/// Regular instance: every set has M/k items. With `planted`, the first k
/// sets partition [M]; `extra_sets` random regular sets follow.
inline CoverageInstance gen_regular_coverage(int universe, int k, bool planted, int extra_sets, std::uint64_t seed) {
  if (universe < 1 || k < 1) throw std::invalid_argument("gen_regular_coverage: need M >= 1 and k >= 1");
  if (universe % k != 0) throw std::invalid_argument("gen_regular_coverage: k must divide M");
  if (extra_sets < 0) throw std::invalid_argument("gen_regular_coverage: extra_sets must be >= 0");
  if (!planted && extra_sets == 0) throw std::invalid_argument("gen_regular_coverage: instance would have no sets");
  Rng rng(seed);
  const int q = universe / k;
  CoverageInstance c;
  c.universe = universe;
  c.k = k;
  c.regular = true;
  if (planted) {
    auto perm = range_vector(universe);
    rng.shuffle(perm);
    for (int i = 0; i < k; ++i) {
      std::vector<int> t(perm.begin() + i * q, perm.begin() + (i + 1) * q);
      std::sort(t.begin(), t.end());
      c.sets.push_back(std::move(t));
      c.planted.push_back(i);
    }
  }
  for (int e = 0; e < extra_sets; ++e) {
    auto t = rng.sample_subset(universe, q);
    std::sort(t.begin(), t.end());
    c.sets.push_back(std::move(t));
  }
  c.validate();
  return c;
}

inline int coverage_of(const CoverageInstance& c, std::span<const int> chosen) {
  std::vector<char> hit(static_cast<std::size_t>(c.universe), 0);
  int count = 0;
  for (int s : chosen)
    for (int item : c.sets.at(static_cast<std::size_t>(s)))
      if (!hit[static_cast<std::size_t>(item)]) {
        hit[static_cast<std::size_t>(item)] = 1;
        ++count;
      }
  return count;
}

inline constexpr std::uint64_t kBruteForceCoverageLimit = 1000000;

struct CoverageOptimum {
  std::vector<int> chosen;
  int value = 0;
};

/// Cov(T, k): the most items covered by k sets (all sets when fewer than k).
inline CoverageOptimum brute_force_coverage(const CoverageInstance& c) {
  const int n = static_cast<int>(c.sets.size());
  const int k = std::min(c.k, n);
  const std::uint64_t count = binomial(n, k);
  if (count > kBruteForceCoverageLimit)
    throw GuardError("brute_force_coverage: " + std::to_string(count) + " subsets exceed the limit of " +
                     std::to_string(kBruteForceCoverageLimit));
  CoverageOptimum best;
  bool have = false;
  for_each_subset_of_size(range_vector(n), k, [&](std::span<const int> s) {
    const int v = coverage_of(c, s);
    if (!have || v > best.value) {
      best = {std::vector<int>(s.begin(), s.end()), v};
      have = true;
    }
  });
  return best;
}

/// Elements are the sets of the coverage instance; for each universe item i
/// the DCG set S_i lists the sets containing i, with requirement 1.
inline SetSystemInstance coverage_to_dcg(const CoverageInstance& c) {
  c.validate();
  std::vector<CoveredSet> out(static_cast<std::size_t>(c.universe));
  for (std::size_t j = 0; j < c.sets.size(); ++j)
    for (int item : c.sets[j]) out[static_cast<std::size_t>(item)].members.push_back(static_cast<int>(j));
  std::vector<int> uncovered;
  for (int i = 0; i < c.universe; ++i)
    if (out[static_cast<std::size_t>(i)].members.empty()) uncovered.push_back(i);
  if (!uncovered.empty()) {
    std::string list;
    for (std::size_t i = 0; i < uncovered.size() && i < 10; ++i) list += (i ? "," : "") + std::to_string(uncovered[i]);
    throw ValidationError("coverage_to_dcg: " + std::to_string(uncovered.size()) +
                          " universe item(s) covered by no set: " + list + (uncovered.size() > 10 ? ",..." : ""));
  }
  return SetSystemInstance(static_cast<int>(c.sets.size()), std::move(out));
}

/// n elements, m sets with sizes uniform in [1, n] and requirements uniform
/// in [1, min(|S|, kmax)].
inline SetSystemInstance gen_setsystem(int n, int m, int kmax, std::uint64_t seed) {
  if (n < 1 || m < 1 || kmax < 1) throw std::invalid_argument("gen_setsystem: need n, m, kmax >= 1");
  Rng rng(seed);
  std::vector<CoveredSet> sets;
  for (int s = 0; s < m; ++s) {
    const int size = 1 + rng.below(n);
    auto members = rng.sample_subset(n, size);
    const int k = 1 + rng.below(std::min(size, kmax));
    sets.push_back({std::move(members), k});
  }
  return SetSystemInstance(n, std::move(sets));
}

/// Weighted coverage over [0, universe): element e covers 1..max_cover random
/// items; item weights uniform in [0.1, 1].
inline SubmodularSpec gen_coverage_function(int n, int universe, int max_cover, std::uint64_t seed) {
  if (n < 1 || universe < 1 || max_cover < 1) throw std::invalid_argument("gen_coverage_function: arguments must be >= 1");
  Rng rng(seed);
  std::vector<std::vector<int>> covers(static_cast<std::size_t>(n));
  for (auto& c : covers) c = rng.sample_subset(universe, 1 + rng.below(std::min(max_cover, universe)));
  std::vector<double> w(static_cast<std::size_t>(universe));
  for (auto& x : w) x = rng.uniform(0.1, 1.0);
  return SubmodularSpec::coverage(universe, std::move(covers), std::move(w));
}

/// Modular weights uniform in [0, scale].
inline SubmodularSpec gen_modular_function(int n, double scale, std::uint64_t seed) {
  if (n < 1 || !(scale >= 0.0)) throw std::invalid_argument("gen_modular_function: need n >= 1 and scale >= 0");
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.uniform(0.0, scale);
  return SubmodularSpec::modular(std::move(w));
}

}  // namespace divkit::workbench
