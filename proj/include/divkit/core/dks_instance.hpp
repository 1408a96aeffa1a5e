#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "divkit/core/errors.hpp"

namespace divkit {

struct WeightedPair {
  int a = 0;
  int b = 0;
  double w = 0.0;
};

/// Densest-k-subgraph input: nodes [0, n), pair weights in [0, 1], a forced
/// set I that every solution must contain, and a target size |I| <= k <= n.
/// Pairs not listed have weight 0; self-pairs are always 0.
class DksInstance {
 public:
  DksInstance() = default;

  DksInstance(int n, std::vector<double> weight_matrix, std::vector<int> forced, int k)
      : n_(n), w_(std::move(weight_matrix)), forced_(std::move(forced)), k_(k) {
    if (n < 1) throw ValidationError("dks: n must be >= 1");
    if (w_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw ValidationError("dks: weight matrix must be n x n");
    for (int i = 0; i < n; ++i) {
      if (weight(i, i) != 0.0) throw ValidationError("dks: self-pair weights must be 0");
      for (int j = i + 1; j < n; ++j) {
        const double x = weight(i, j);
        if (!(x >= 0.0 && x <= 1.0))
          throw ValidationError("dks: weight of pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") must lie in [0,1]");
        if (x != weight(j, i)) throw ValidationError("dks: weight matrix must be symmetric");
      }
    }
    normalize_forced();
  }

  static DksInstance from_pairs(int n, const std::vector<WeightedPair>& pairs, std::vector<int> forced, int k) {
    if (n < 1) throw ValidationError("dks: n must be >= 1");
    std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto& e = pairs[p];
      const std::string where = "dks: weights[" + std::to_string(p) + "]";
      if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) throw ValidationError(where + " node out of range");
      if (e.a == e.b) throw ValidationError(where + " is a self-pair");
      if (!(e.w >= 0.0 && e.w <= 1.0)) throw ValidationError(where + " weight must lie in [0,1]");
      m[static_cast<std::size_t>(e.a * n + e.b)] = e.w;
      m[static_cast<std::size_t>(e.b * n + e.a)] = e.w;
    }
    return DksInstance(n, std::move(m), std::move(forced), k);
  }

  int size() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const std::vector<int>& forced() const noexcept { return forced_; }
  const std::vector<double>& matrix() const noexcept { return w_; }

  double weight(int i, int j) const noexcept {
    return w_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }

  bool is_forced(int v) const { return std::binary_search(forced_.begin(), forced_.end(), v); }

  /// V' = V \ I in ascending order.
  std::vector<int> free_nodes() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (!is_forced(v)) out.push_back(v);
    return out;
  }

  /// Non-zero pairs (a < b) in lexicographic order.
  std::vector<WeightedPair> pairs() const {
    std::vector<WeightedPair> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (weight(i, j) != 0.0) out.push_back({i, j, weight(i, j)});
    return out;
  }

  DksInstance with_k(int k) const { return DksInstance(n_, w_, forced_, k); }

  friend bool operator==(const DksInstance&, const DksInstance&) = default;

 private:
  void normalize_forced() {
    std::sort(forced_.begin(), forced_.end());
    if (std::adjacent_find(forced_.begin(), forced_.end()) != forced_.end())
      throw ValidationError("dks: forced set contains duplicates");
    if (!forced_.empty() && (forced_.front() < 0 || forced_.back() >= n_))
      throw ValidationError("dks: forced node out of range");
    if (k_ < static_cast<int>(forced_.size()) || k_ > n_)
      throw ValidationError("dks: k must satisfy |forced| <= k <= n");
  }

  int n_ = 0;
  std::vector<double> w_;
  std::vector<int> forced_;
  int k_ = 0;
};

}  // namespace divkit
