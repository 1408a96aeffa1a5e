#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "divkit/lp/linear_program.hpp"

namespace divkit::lp {

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  long max_pivots = 200000;  // cycling / stalling guard
};

namespace detail {

// Dense two-phase tableau for: max c.x  s.t.  A x <= b,  x >= 0.
// Layout follows the classic single-artificial formulation: column n is the
// artificial variable, column n+1 the right-hand side, row m the objective
// and row m+1 the phase-one objective. Pivoting uses Bland's rule.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b, const std::vector<double>& c,
          const SimplexOptions& opt)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        w_(static_cast<std::size_t>(n_) + 2),
        nonbasic_(static_cast<std::size_t>(n_) + 1),
        basic_(static_cast<std::size_t>(m_)),
        d_((static_cast<std::size_t>(m_) + 2) * w_, 0.0),
        opt_(opt) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      basic_[static_cast<std::size_t>(i)] = n_ + i;
      at(i, n_) = -1.0;
      at(i, n_ + 1) = b[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[static_cast<std::size_t>(j)] = j;
      at(m_, j) = -c[static_cast<std::size_t>(j)];
    }
    nonbasic_[static_cast<std::size_t>(n_)] = -1;
    at(m_ + 1, n_) = 1.0;
  }

  LpStatus solve(std::vector<double>& x, double& value) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    if (m_ > 0 && at(r, n_ + 1) < -opt_.pivot_tolerance) {
      pivot(r, n_);
      const LpStatus aux = run(2);
      if (aux == LpStatus::numerical_failure) return aux;
      if (aux != LpStatus::optimal || at(m_ + 1, n_ + 1) < -opt_.feasibility_tolerance) return LpStatus::infeasible;
      // Drive a degenerate artificial out of the basis if it is still there.
      for (int i = 0; i < m_; ++i) {
        if (basic_[static_cast<std::size_t>(i)] != -1) continue;
        int s = -1;
        double best = opt_.pivot_tolerance;
        for (int j = 0; j <= n_; ++j) {
          if (nonbasic_[static_cast<std::size_t>(j)] == -1) continue;
          if (std::abs(at(i, j)) > best) {
            best = std::abs(at(i, j));
            s = j;
          }
        }
        if (s >= 0) pivot(i, s);
      }
    }
    const LpStatus main = run(1);
    if (main != LpStatus::optimal) return main;
    x.assign(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int v = basic_[static_cast<std::size_t>(i)];
      if (v >= 0 && v < n_) x[static_cast<std::size_t>(v)] = at(i, n_ + 1);
    }
    value = at(m_, n_ + 1);
    return LpStatus::optimal;
  }

  long pivots() const noexcept { return pivots_; }

 private:
  double& at(int i, int j) noexcept {
    return d_[static_cast<std::size_t>(i) * w_ + static_cast<std::size_t>(j)];
  }

  void pivot(int r, int s) {
    ++pivots_;
    double* row_r = &at(r, 0);
    const double inv = 1.0 / row_r[s];
    const std::size_t width = w_;
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      double* row_i = &at(i, 0);
      if (std::abs(row_i[s]) <= opt_.pivot_tolerance) continue;
      const double factor = row_i[s] * inv;
      for (std::size_t j = 0; j < width; ++j) row_i[j] -= row_r[j] * factor;
      row_i[s] = row_r[s] * factor;
    }
    for (std::size_t j = 0; j < width; ++j)
      if (static_cast<int>(j) != s) row_r[j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) at(i, s) *= -inv;
    row_r[s] = inv;
    std::swap(basic_[static_cast<std::size_t>(r)], nonbasic_[static_cast<std::size_t>(s)]);
  }

  // Phase 2 drives the artificial out (row m+1); phase 1 optimizes row m.
  LpStatus run(int phase) {
    const int obj = m_ + phase - 1;
    for (;;) {
      if (pivots_ >= opt_.max_pivots) return LpStatus::numerical_failure;
      // Bland: entering column is the eligible variable with smallest label.
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        const int label = nonbasic_[static_cast<std::size_t>(j)];
        if (label == -phase) continue;
        if (at(obj, j) < -opt_.pivot_tolerance && (s == -1 || label < nonbasic_[static_cast<std::size_t>(s)])) s = j;
      }
      if (s == -1) return LpStatus::optimal;
      int r = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, s);
        if (a <= opt_.pivot_tolerance) continue;
        const double ratio = at(i, n_ + 1) / a;
        if (r == -1 || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basic_[static_cast<std::size_t>(i)] < basic_[static_cast<std::size_t>(r)])) {
          r = i;
          best_ratio = ratio;
        }
      }
      if (r == -1) return LpStatus::unbounded;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::size_t w_;
  std::vector<int> nonbasic_, basic_;
  std::vector<double> d_;
  SimplexOptions opt_;
  long pivots_ = 0;
};

}  // namespace detail

/// Solves a bounded-variable LP with a dense two-phase simplex.
///
/// Variables are shifted to their lower bounds (free variables are split),
/// finite upper bounds become rows, >= rows are negated and equalities are
/// split into two inequalities. An optimal answer is re-checked against the
/// original constraints; a residual above the feasibility tolerance is
/// reported as numerical_failure.
inline LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  lp.validate();
  const auto n = static_cast<std::size_t>(lp.num_vars);

  // Column map: original j -> (column, sign, offset) with x_j = offset + sign * x'_col (- x'_neg for free vars).
  struct Column {
    int pos = -1;
    int neg = -1;  // second column for a free variable
    double sign = 1.0;
    double offset = 0.0;
  };
  std::vector<Column> cols(n);
  int ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    auto& c = cols[j];
    if (std::isfinite(lp.lower[j])) {
      c = {ncols++, -1, 1.0, lp.lower[j]};
    } else if (std::isfinite(lp.upper[j])) {
      c = {ncols++, -1, -1.0, lp.upper[j]};
    } else {
      c.pos = ncols++;
      c.neg = ncols++;
    }
  }

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  auto emit = [&](const std::vector<double>& coeffs, double rhs, double sign) {
    std::vector<double> row(static_cast<std::size_t>(ncols), 0.0);
    double shifted = rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = coeffs[j];
      if (v == 0.0) continue;
      const auto& c = cols[j];
      shifted -= v * c.offset;
      row[static_cast<std::size_t>(c.pos)] += sign * v * c.sign;
      if (c.neg >= 0) row[static_cast<std::size_t>(c.neg)] -= sign * v;
    }
    a.push_back(std::move(row));
    b.push_back(sign * shifted);
  };
  for (const auto& c : lp.constraints) {
    switch (c.relation) {
      case Relation::less_equal: emit(c.coeffs, c.rhs, 1.0); break;
      case Relation::greater_equal: emit(c.coeffs, c.rhs, -1.0); break;
      case Relation::equal:
        emit(c.coeffs, c.rhs, 1.0);
        emit(c.coeffs, c.rhs, -1.0);
        break;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower[j]) && std::isfinite(lp.upper[j])) {
      std::vector<double> row(static_cast<std::size_t>(ncols), 0.0);
      row[static_cast<std::size_t>(cols[j].pos)] = 1.0;
      a.push_back(std::move(row));
      b.push_back(lp.upper[j] - lp.lower[j]);
    }
  }
  std::vector<double> c(static_cast<std::size_t>(ncols), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& col = cols[j];
    c[static_cast<std::size_t>(col.pos)] += lp.objective[j] * col.sign;
    if (col.neg >= 0) c[static_cast<std::size_t>(col.neg)] -= lp.objective[j];
  }

  detail::Tableau tableau(a, b, c, opt);
  std::vector<double> xs;
  double value = 0.0;
  LpSolution sol;
  sol.status = tableau.solve(xs, value);
  sol.pivots = tableau.pivots();
  if (sol.status != LpStatus::optimal) return sol;

  sol.values.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& col = cols[j];
    double v = col.offset + col.sign * xs[static_cast<std::size_t>(col.pos)];
    if (col.neg >= 0) v -= xs[static_cast<std::size_t>(col.neg)];
    sol.values[j] = std::clamp(v, lp.lower[j], lp.upper[j]);
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * sol.values[j];
  sol.objective = obj;
  sol.max_violation = max_violation(lp, sol.values);
  if (sol.max_violation > opt.feasibility_tolerance) sol.status = LpStatus::numerical_failure;
  return sol;
}

}  // namespace divkit::lp
