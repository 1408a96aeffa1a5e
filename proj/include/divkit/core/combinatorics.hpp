#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace divkit {

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// n! / (n-k)!, saturating.
inline std::uint64_t falling_factorial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<unsigned>(n - i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// Advances `idx` (strictly increasing, values in [0, n)) to the next
/// k-combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<int>& idx, int n) noexcept {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

/// Calls fn(std::span<const int>) for every k-subset of `items` in
/// lexicographic order of positions. fn may return false to stop early.
template <class Fn>
void for_each_subset_of_size(std::span<const int> items, int k, Fn&& fn) {
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<int> subset(static_cast<std::size_t>(k));
  do {
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    if constexpr (std::is_same_v<decltype(fn(std::span<const int>(subset))), bool>) {
      if (!fn(std::span<const int>(subset))) return;
    } else {
      fn(std::span<const int>(subset));
    }
  } while (next_combination(idx, n));
}

inline std::vector<int> range_vector(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

}  // namespace divkit
