#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "divkit/lp/linear_program.hpp"
#include "divkit/lp/simplex.hpp"

namespace divkit::lp {

using CutKey = std::vector<int>;

/// A constraint produced by a separation oracle. Cuts with equal keys are
/// considered identical and added at most once.
struct Cut {
  CutKey key;
  Constraint row;
};

/// Given a candidate point, returns constraints it violates (empty when the
/// oracle certifies feasibility).
using SeparationOracle = std::function<std::vector<Cut>(const std::vector<double>&)>;

struct CutLoopOptions {
  int max_rounds = 200;
  SimplexOptions simplex{};
};

struct CutLoopResult {
  LpSolution solution;
  int rounds = 0;        // LP solves performed
  int cuts_added = 0;
  bool converged = false;           // oracle found nothing (beyond tolerance) at the final point
  bool rounds_exhausted = false;    // stopped at max_rounds with violations remaining
  double residual_violation = 0.0;  // worst violation among cuts returned at the final point
  std::vector<double> objective_history;
  LinearProgram final_lp;           // base plus every cut added
};

/// Constraint generation: solve, ask the oracle for violated cuts, add the
/// new ones and re-solve until the oracle is satisfied or max_rounds LP solves
/// have been spent.
inline CutLoopResult solve_with_cuts(const LinearProgram& base, const SeparationOracle& oracle,
                                     const CutLoopOptions& options = {}) {
  CutLoopResult out;
  out.final_lp = base;
  std::set<CutKey> seen;
  for (;;) {
    out.solution = solve_lp(out.final_lp, options.simplex);
    ++out.rounds;
    if (out.solution.status != LpStatus::optimal) return out;
    out.objective_history.push_back(out.solution.objective);

    std::vector<Cut> cuts = oracle(out.solution.values);
    out.residual_violation = 0.0;
    for (const auto& c : cuts) out.residual_violation = std::max(out.residual_violation, violation(c.row, out.solution.values));
    std::vector<Cut> fresh;
    for (auto& c : cuts)
      if (seen.insert(c.key).second) fresh.push_back(std::move(c));

    if (fresh.empty() || out.residual_violation <= options.simplex.feasibility_tolerance) {
      out.converged = out.residual_violation <= options.simplex.feasibility_tolerance;
      return out;
    }
    if (out.rounds >= options.max_rounds) {
      out.rounds_exhausted = true;
      return out;
    }
    for (auto& c : fresh) {
      out.final_lp.constraints.push_back(std::move(c.row));
      ++out.cuts_added;
    }
  }
}

}  // namespace divkit::lp
