#pragma once

#include <span>
#include <string>
#include <vector>

#include "divkit/core/set_system.hpp"
#include "divkit/lp/cutting_plane.hpp"
#include "divkit/lp/dcg_separation.hpp"
#include "divkit/lp/linear_program.hpp"
#include "divkit/ranking/gain.hpp"

namespace divkit::ranking {

/// Base DCG relaxation: assignment equalities, monotone coverage variables and
/// the telescoping objective sum_S sum_t (y(S,t) - y(S,t-1)) f(t) with
/// y(S,0) = 0. The exponentially many knapsack rows are left to
/// lp::dcg_separation.
struct DcgLp {
  lp::LinearProgram program;
  lp::DcgLayout layout;
};

inline DcgLp build_dcg_lp(const SetSystemInstance& inst, const GainFunction& f) {
  const int n = inst.element_count();
  const int m = inst.set_count();
  lp::DcgLayout layout{n, m};
  lp::LinearProgram prog(layout.num_vars(), 0.0, 1.0);
  prog.names.resize(static_cast<std::size_t>(layout.num_vars()));
  for (int e = 0; e < n; ++e)
    for (int t = 0; t < n; ++t)
      prog.names[static_cast<std::size_t>(layout.x(e, t))] = "x_" + std::to_string(e) + "_" + std::to_string(t + 1);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < n; ++t)
      prog.names[static_cast<std::size_t>(layout.y(s, t))] = "y_" + std::to_string(s) + "_" + std::to_string(t + 1);

  // sum_t (y_t - y_{t-1}) f(t) = sum_t y_t (f(t) - f(t+1)) with f(n+1) := 0.
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < n; ++t) {
      const double ft = f(t + 1);
      const double next = t + 1 < n ? f(t + 2) : 0.0;
      prog.objective[static_cast<std::size_t>(layout.y(s, t))] = ft - next;
    }

  const auto width = static_cast<std::size_t>(layout.num_vars());
  for (int t = 0; t < n; ++t) {
    std::vector<double> row(width, 0.0);
    for (int e = 0; e < n; ++e) row[static_cast<std::size_t>(layout.x(e, t))] = 1.0;
    prog.add(std::move(row), lp::Relation::equal, 1.0);
  }
  for (int e = 0; e < n; ++e) {
    std::vector<double> row(width, 0.0);
    for (int t = 0; t < n; ++t) row[static_cast<std::size_t>(layout.x(e, t))] = 1.0;
    prog.add(std::move(row), lp::Relation::equal, 1.0);
  }
  for (int s = 0; s < m; ++s)
    for (int t = 1; t < n; ++t) {
      std::vector<double> row(width, 0.0);
      row[static_cast<std::size_t>(layout.y(s, t))] = 1.0;
      row[static_cast<std::size_t>(layout.y(s, t - 1))] = -1.0;
      prog.add(std::move(row), lp::Relation::greater_equal, 0.0);
    }
  return {std::move(prog), layout};
}

/// Solved relaxation with x and y split out.
struct DcgLpSolution {
  lp::LpStatus status = lp::LpStatus::numerical_failure;
  bool converged = false;
  double objective = 0.0;
  std::vector<double> x;  // n x n, (element, position)
  std::vector<double> y;  // m x n, (set, position)
  int rounds = 0;
  int cuts_added = 0;
  lp::LinearProgram final_lp;

  bool usable() const noexcept { return status == lp::LpStatus::optimal && converged; }
};

inline DcgLpSolution solve_dcg_lp(const SetSystemInstance& inst, const GainFunction& f,
                                  const lp::CutLoopOptions& options = {}) {
  DcgLp base = build_dcg_lp(inst, f);
  auto res = lp::solve_with_cuts(base.program, lp::dcg_oracle(inst, base.layout), options);
  DcgLpSolution out;
  out.status = res.solution.status;
  out.converged = res.converged;
  out.rounds = res.rounds;
  out.cuts_added = res.cuts_added;
  out.final_lp = std::move(res.final_lp);
  if (res.solution.status == lp::LpStatus::optimal) {
    out.objective = res.solution.objective;
    const auto nx = static_cast<std::size_t>(base.layout.n) * static_cast<std::size_t>(base.layout.n);
    out.x.assign(res.solution.values.begin(), res.solution.values.begin() + static_cast<std::ptrdiff_t>(nx));
    out.y.assign(res.solution.values.begin() + static_cast<std::ptrdiff_t>(nx), res.solution.values.end());
  }
  return out;
}

}  // namespace divkit::ranking
