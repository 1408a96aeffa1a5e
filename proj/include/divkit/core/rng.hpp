#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <utility>
#include <vector>

namespace divkit {

/// SplitMix64 finalizer. Used for seeding and for deriving child streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a root seed and a path of
/// indices, e.g. derive_seed(seed, {prefix_index, trial_index}).
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t x : path) h = splitmix64(h ^ splitmix64(x + 0x632be59bd9b4e019ULL));
  return h;
}

/// xoshiro256** seeded through SplitMix64.
///
/// All randomized algorithms take an Rng explicitly. The bounded-integer and
/// real draws below are implemented here rather than through <random>
/// distributions, whose output is implementation-defined, so a seed yields the
/// same draw sequence on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) noexcept : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) {
      s = splitmix64(s);
      w = s;
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's nearly-divisionless rejection.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  int below(int bound) noexcept {
    return static_cast<int>(below(static_cast<std::uint64_t>(bound)));
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Fisher-Yates over the first `count` positions: afterwards v[0..count)
  /// is a uniform random ordered sample of v.
  template <class T>
  void partial_shuffle(std::vector<T>& v, std::size_t count) noexcept {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < count && i + 1 < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(v[i], v[j]);
    }
  }

  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    partial_shuffle(v, v.size());
  }

  /// Uniform random `count`-subset of [0, n), returned sorted.
  std::vector<int> sample_subset(int n, int count) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    partial_shuffle(all, static_cast<std::size_t>(count));
    all.resize(static_cast<std::size_t>(count));
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t state_[4]{};
};

}  // namespace divkit
