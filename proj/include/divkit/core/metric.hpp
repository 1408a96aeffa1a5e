#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/errors.hpp"

namespace divkit {

/// Finite point set with a dense pairwise distance matrix.
///
/// The matrix is stored row-major. Construction checks shape, finiteness,
/// non-negativity and a zero diagonal; the remaining metric axioms are
/// checked by validate_metric(), which reports instead of throwing.
/// Zero distances between distinct points are accepted (pseudometrics).
class MetricInstance {
 public:
  MetricInstance() = default;

  MetricInstance(int n, std::vector<double> dist_row_major,
                 std::optional<std::vector<std::vector<double>>> coords = std::nullopt)
      : n_(n), dist_(std::move(dist_row_major)), coords_(std::move(coords)) {
    if (n < 1) throw ValidationError("metric: n must be >= 1");
    if (dist_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw ValidationError("metric: distance matrix must be n x n");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double d = (*this)(i, j);
        if (!std::isfinite(d) || d < 0.0)
          throw ValidationError("metric: dist[" + std::to_string(i) + "][" + std::to_string(j) +
                                "] must be finite and non-negative");
        if (i == j && d != 0.0)
          throw ValidationError("metric: dist[" + std::to_string(i) + "][" + std::to_string(i) +
                                "] must be 0");
      }
    if (coords_ && coords_->size() != static_cast<std::size_t>(n))
      throw ValidationError("metric: coordinate count must equal n");
  }

  static MetricInstance from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw ValidationError("metric: distance matrix must be square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return MetricInstance(n, std::move(flat));
  }

  /// Euclidean distances between the given points.
  static MetricInstance from_points(std::vector<std::vector<double>> points) {
    const int n = static_cast<int>(points.size());
    std::vector<double> flat(points.size() * points.size(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto& a = points[static_cast<std::size_t>(i)];
        const auto& b = points[static_cast<std::size_t>(j)];
        if (a.size() != b.size()) throw ValidationError("metric: points differ in dimension");
        double s = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
        const double d = std::sqrt(s);
        flat[static_cast<std::size_t>(i * n + j)] = d;
        flat[static_cast<std::size_t>(j * n + i)] = d;
      }
    return MetricInstance(n, std::move(flat), std::move(points));
  }

  int size() const noexcept { return n_; }

  double operator()(int i, int j) const noexcept {
    return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }

  const std::vector<double>& matrix() const noexcept { return dist_; }
  const std::optional<std::vector<std::vector<double>>>& coordinates() const noexcept { return coords_; }

  double diameter() const noexcept {
    double d = 0.0;
    for (double x : dist_) d = std::max(d, x);
    return d;
  }

  /// Returns a copy with every distance multiplied by c > 0.
  MetricInstance scaled(double c) const {
    std::vector<double> d = dist_;
    for (double& x : d) x *= c;
    return MetricInstance(n_, std::move(d));
  }

  friend bool operator==(const MetricInstance&, const MetricInstance&) = default;

 private:
  int n_ = 0;
  std::vector<double> dist_;
  std::optional<std::vector<std::vector<double>>> coords_;
};

struct MetricReport {
  enum class Violation { none, asymmetric, triangle };
  Violation violation = Violation::none;
  // Witness indices: (i, j) for asymmetry; dist[i][k] > dist[i][j] + dist[j][k] for triangle.
  int i = -1, j = -1, k = -1;

  bool ok() const noexcept { return violation == Violation::none; }
};

inline constexpr double kTriangleTolerance = 1e-9;

/// Checks symmetry and the triangle inequality (absolute tolerance 1e-9).
inline MetricReport validate_metric(const MetricInstance& inst) {
  const int n = inst.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (inst(i, j) != inst(j, i)) return {MetricReport::Violation::asymmetric, i, j, -1};
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (inst(i, k) > inst(i, j) + inst(j, k) + kTriangleTolerance)
          return {MetricReport::Violation::triangle, i, j, k};
      }
  return {};
}

namespace detail {
inline void check_indices(std::span<const int> s, int n) {
  for (int x : s)
    if (x < 0 || x >= n) throw std::out_of_range("point index " + std::to_string(x) + " out of range");
}
}  // namespace detail

/// Sum of distances over unordered distinct pairs of S.
inline double disp(std::span<const int> s, const MetricInstance& inst) {
  detail::check_indices(s, inst.size());
  double total = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) total += inst(s[a], s[b]);
  return total;
}

/// Sum of d(a, b) over a in A, b in B.
inline double disp_cross(std::span<const int> a, std::span<const int> b, const MetricInstance& inst) {
  detail::check_indices(a, inst.size());
  detail::check_indices(b, inst.size());
  double total = 0.0;
  for (int x : a)
    for (int y : b) total += inst(x, y);
  return total;
}

inline double disp_point(int u, std::span<const int> s, const MetricInstance& inst) {
  const int one[] = {u};
  return disp_cross(one, s, inst);
}

}  // namespace divkit
