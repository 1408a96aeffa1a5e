#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/errors.hpp"

namespace divkit {

/// A set function evaluated through value queries on a list of element
/// indices. Callers may pass duplicate indices; implementations treat the
/// argument as a set.
template <class F>
concept SetFunction = requires(const F& f, std::span<const int> s) {
  { f(s) } -> std::convertible_to<double>;
};

struct ZeroFunction {
  double operator()(std::span<const int>) const noexcept { return 0.0; }
};

/// Serializable monotone submodular function: either modular (non-negative
/// per-element weights) or weighted coverage (element e covers a subset of
/// the universe [0, M); the value is the total weight of the union covered).
class SubmodularSpec {
 public:
  enum class Kind { modular, coverage };

  SubmodularSpec() = default;

  static SubmodularSpec modular(std::vector<double> weights) {
    SubmodularSpec s;
    s.kind_ = Kind::modular;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (!std::isfinite(weights[i]) || weights[i] < 0.0)
        throw ValidationError("modular: weights[" + std::to_string(i) + "] must be finite and non-negative");
    s.weights_ = std::move(weights);
    return s;
  }

  static SubmodularSpec coverage(int universe, std::vector<std::vector<int>> covers,
                                 std::optional<std::vector<double>> uweights = std::nullopt) {
    SubmodularSpec s;
    s.kind_ = Kind::coverage;
    if (universe < 0) throw ValidationError("coverage: universe must be >= 0");
    s.universe_ = universe;
    for (std::size_t e = 0; e < covers.size(); ++e) {
      auto& c = covers[e];
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      if (!c.empty() && (c.front() < 0 || c.back() >= universe))
        throw ValidationError("coverage: covers[" + std::to_string(e) + "] item out of range");
    }
    if (uweights) {
      if (uweights->size() != static_cast<std::size_t>(universe))
        throw ValidationError("coverage: uweights must have length universe");
      for (std::size_t i = 0; i < uweights->size(); ++i)
        if (!std::isfinite((*uweights)[i]) || (*uweights)[i] < 0.0)
          throw ValidationError("coverage: uweights[" + std::to_string(i) + "] must be finite and non-negative");
    }
    s.covers_ = std::move(covers);
    s.uweights_ = std::move(uweights);
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  int ground_size() const noexcept {
    return static_cast<int>(kind_ == Kind::modular ? weights_.size() : covers_.size());
  }
  const std::vector<double>& weights() const noexcept { return weights_; }
  int universe() const noexcept { return universe_; }
  const std::vector<std::vector<int>>& covers() const noexcept { return covers_; }
  const std::optional<std::vector<double>>& uweights() const noexcept { return uweights_; }

  double operator()(std::span<const int> s) const { return evaluate(s); }

  double evaluate(std::span<const int> s) const {
    const int n = ground_size();
    for (int x : s)
      if (x < 0 || x >= n) throw std::out_of_range("submodular: element " + std::to_string(x) + " out of range");
    if (kind_ == Kind::modular) {
      std::vector<int> uniq(s.begin(), s.end());
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      double total = 0.0;
      for (int x : uniq) total += weights_[static_cast<std::size_t>(x)];
      return total;
    }
    std::vector<char> hit(static_cast<std::size_t>(universe_), 0);
    for (int x : s)
      for (int item : covers_[static_cast<std::size_t>(x)]) hit[static_cast<std::size_t>(item)] = 1;
    double total = 0.0;
    for (int item = 0; item < universe_; ++item)
      if (hit[static_cast<std::size_t>(item)]) total += uweights_ ? (*uweights_)[static_cast<std::size_t>(item)] : 1.0;
    return total;
  }

  friend bool operator==(const SubmodularSpec&, const SubmodularSpec&) = default;

 private:
  Kind kind_ = Kind::modular;
  std::vector<double> weights_;
  int universe_ = 0;
  std::vector<std::vector<int>> covers_;
  std::optional<std::vector<double>> uweights_;
};

inline double eval_submodular(const SubmodularSpec& spec, std::span<const int> s) { return spec.evaluate(s); }

}  // namespace divkit
