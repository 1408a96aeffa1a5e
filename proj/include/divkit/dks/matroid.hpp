#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace divkit::dks {

enum class MatroidMode { exact, greedy };

inline const char* to_string(MatroidMode m) noexcept { return m == MatroidMode::exact ? "exact" : "greedy"; }

inline MatroidMode parse_matroid_mode(const std::string& s) {
  if (s == "exact") return MatroidMode::exact;
  if (s == "greedy") return MatroidMode::greedy;
  throw std::invalid_argument("matroid mode must be exact or greedy, got '" + s + "'");
}

struct MatroidResult {
  std::vector<int> choice;  // per part: index into its pool, -1 when the pool is empty
  double value = 0.0;
  bool fell_back = false;   // exact mode exceeded its budget and ran greedy instead
  long evaluations = 0;
};

inline constexpr std::uint64_t kDefaultExactBudget = 1000000;
inline constexpr double kMatroidTieTolerance = 1e-12;

namespace detail {

template <class Value>
MatroidResult lazy_greedy(const std::vector<int>& pool_sizes, Value& value) {
  const int parts = static_cast<int>(pool_sizes.size());
  MatroidResult r;
  r.choice.assign(static_cast<std::size_t>(parts), -1);
  double base = value(r.choice);
  ++r.evaluations;

  struct Entry {
    double bound;
    int part;
    int idx;
  };
  // Max-heap on bound; ties prefer the smaller (part, idx).
  auto lower = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.part != b.part) return a.part > b.part;
    return a.idx > b.idx;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);
  for (int p = 0; p < parts; ++p)
    for (int i = 0; i < pool_sizes[static_cast<std::size_t>(p)]; ++i)
      heap.push({std::numeric_limits<double>::infinity(), p, i});

  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (r.choice[static_cast<std::size_t>(e.part)] >= 0) continue;
    r.choice[static_cast<std::size_t>(e.part)] = e.idx;
    const double with = value(r.choice);
    ++r.evaluations;
    r.choice[static_cast<std::size_t>(e.part)] = -1;
    e.bound = with - base;
    while (!heap.empty() && r.choice[static_cast<std::size_t>(heap.top().part)] >= 0) heap.pop();
    if (heap.empty() || !lower(e, heap.top())) {
      r.choice[static_cast<std::size_t>(e.part)] = e.idx;
      base = with;
    } else {
      heap.push(e);
    }
  }
  r.value = base;
  return r;
}

}  // namespace detail

/// Maximizes a monotone set function over a partition matroid with at most
/// one pick per part. `value(choice)` evaluates a selection given as one pool
/// index per part (-1 = nothing from that part).
///
/// exact: enumerates every selection that takes one element from each
/// non-empty pool, in lexicographic order; the first maximizer wins ties.
/// Selections that skip a part are dominated under monotonicity, so they are
/// not enumerated. When the number of selections exceeds `exact_budget`, the
/// greedy mode runs instead and `fell_back` is set.
///
/// greedy: lazy greedy on marginal gains; ties go to the smaller (part,
/// index). It keeps adding until every non-empty part has a pick.
///
/// In both modes each part with a non-empty pool ends up with one pick.
template <class Value>
MatroidResult matroid_maximize(const std::vector<int>& pool_sizes, Value&& value, MatroidMode mode,
                               std::uint64_t exact_budget = kDefaultExactBudget) {
  if (mode == MatroidMode::greedy) return detail::lazy_greedy(pool_sizes, value);

  std::vector<int> active;
  std::uint64_t combos = 1;
  bool over = false;
  for (std::size_t p = 0; p < pool_sizes.size(); ++p) {
    const int sz = pool_sizes[p];
    if (sz <= 0) continue;
    active.push_back(static_cast<int>(p));
    if (combos > exact_budget / static_cast<std::uint64_t>(sz)) over = true;
    combos *= static_cast<std::uint64_t>(sz);
  }
  if (over || combos > exact_budget) {
    auto r = detail::lazy_greedy(pool_sizes, value);
    r.fell_back = true;
    return r;
  }

  MatroidResult best;
  std::vector<int> choice(pool_sizes.size(), -1);
  for (int p : active) choice[static_cast<std::size_t>(p)] = 0;
  bool have = false;
  for (;;) {
    const double v = value(choice);
    ++best.evaluations;
    if (!have || v > best.value + kMatroidTieTolerance) {
      best.value = v;
      best.choice = choice;
      have = true;
    }
    // Mixed-radix increment, last active part fastest.
    int pos = static_cast<int>(active.size()) - 1;
    while (pos >= 0) {
      int& c = choice[static_cast<std::size_t>(active[static_cast<std::size_t>(pos)])];
      if (++c < pool_sizes[static_cast<std::size_t>(active[static_cast<std::size_t>(pos)])]) break;
      c = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

}  // namespace divkit::dks
