#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace divkit::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, greater_equal, equal };

struct Constraint {
  std::vector<double> coeffs;  // dense, one entry per variable
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

/// Maximize objective . x subject to the constraints and lo <= x <= hi.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;  // optional, used only by the text dump

  LinearProgram() = default;
  explicit LinearProgram(int n, double lo = 0.0, double hi = kInfinity)
      : num_vars(n),
        objective(static_cast<std::size_t>(n), 0.0),
        lower(static_cast<std::size_t>(n), lo),
        upper(static_cast<std::size_t>(n), hi) {}

  Constraint& add(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
    return constraints.back();
  }

  /// Throws std::invalid_argument on shape mismatches, non-finite
  /// coefficients, or lo > hi.
  void validate() const {
    const auto n = static_cast<std::size_t>(num_vars);
    if (num_vars < 0) throw std::invalid_argument("lp: negative variable count");
    if (objective.size() != n || lower.size() != n || upper.size() != n)
      throw std::invalid_argument("lp: objective/bounds size mismatch");
    for (double c : objective)
      if (!std::isfinite(c)) throw std::invalid_argument("lp: non-finite objective coefficient");
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] || lower[j] == kInfinity ||
          upper[j] == -kInfinity)
        throw std::invalid_argument("lp: invalid bounds on variable " + std::to_string(j));
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      const auto& c = constraints[i];
      if (c.coeffs.size() != n) throw std::invalid_argument("lp: constraint " + std::to_string(i) + " has wrong width");
      if (!std::isfinite(c.rhs)) throw std::invalid_argument("lp: non-finite rhs in constraint " + std::to_string(i));
      for (double a : c.coeffs)
        if (!std::isfinite(a)) throw std::invalid_argument("lp: non-finite coefficient in constraint " + std::to_string(i));
    }
  }
};

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

inline const char* to_string(LpStatus s) noexcept {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  std::vector<double> values;
  double objective = 0.0;
  long pivots = 0;
  double max_violation = 0.0;  // worst constraint/bound violation at `values`
};

/// Amount by which x violates c (0 when satisfied).
inline double violation(const Constraint& c, const std::vector<double>& x) {
  double lhs = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
  switch (c.relation) {
    case Relation::less_equal: return std::max(0.0, lhs - c.rhs);
    case Relation::greater_equal: return std::max(0.0, c.rhs - lhs);
    case Relation::equal: return std::abs(lhs - c.rhs);
  }
  return 0.0;
}

inline double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& c : lp.constraints) worst = std::max(worst, violation(c, x));
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper[j]);
  }
  return worst;
}

}  // namespace divkit::lp
