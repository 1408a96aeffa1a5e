#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divkit/core/dks_instance.hpp"

namespace divkit::dks {

/// Sum of w over unordered distinct pairs of T.
inline double pair_weight(std::span<const int> t, const DksInstance& inst) {
  double total = 0.0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) total += inst.weight(t[a], t[b]);
  return total;
}

/// Average pair weight of T; requires |T| >= 2.
inline double den(std::span<const int> t, const DksInstance& inst) {
  if (t.size() < 2) throw std::invalid_argument("den: |T| must be >= 2");
  for (int v : t)
    if (v < 0 || v >= inst.size()) throw std::out_of_range("den: node " + std::to_string(v) + " out of range");
  const double pairs = 0.5 * static_cast<double>(t.size()) * static_cast<double>(t.size() - 1);
  return pair_weight(t, inst) / pairs;
}

/// den(T), or 0 when |T| < 2. Used as the objective term for degenerate sizes.
inline double den_or_zero(std::span<const int> t, const DksInstance& inst) {
  return t.size() < 2 ? 0.0 : den(t, inst);
}

/// ow(U) = W 1(U) / |U| (one entry per node of V) and oind(U) = 1(U) / |U|.
struct Profile {
  std::vector<double> ow;
  std::vector<double> oind;
};

inline std::vector<double> average_weight_vector(std::span<const int> u, const DksInstance& inst) {
  const int n = inst.size();
  std::vector<double> ow(static_cast<std::size_t>(n), 0.0);
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int v : u) s += inst.weight(x, v);
    ow[static_cast<std::size_t>(x)] = s / static_cast<double>(u.size());
  }
  return ow;
}

inline Profile profile_vectors(std::span<const int> u, const DksInstance& inst) {
  if (u.empty()) throw std::invalid_argument("profile_vectors: U must be non-empty");
  Profile p;
  p.ow = average_weight_vector(u, inst);
  p.oind.assign(static_cast<std::size_t>(inst.size()), 0.0);
  for (int v : u) p.oind[static_cast<std::size_t>(v)] = 1.0 / static_cast<double>(u.size());
  return p;
}

/// oind(U) . ow(Q): the mean of ow(Q) over U.
inline double mean_over(std::span<const int> u, const std::vector<double>& ow) {
  double s = 0.0;
  for (int v : u) s += ow[static_cast<std::size_t>(v)];
  return s / static_cast<double>(u.size());
}

/// Admission test of a candidate U against an anchor Q, given their profiles:
///   ||ow(U) - ow(Q)||_inf <= 2 gamma'  and
///   |oind(U) . ow(Q) - oind(Q) . ow(Q)| <= 4 gamma'.
inline bool admit_with_profiles(std::span<const int> u, const std::vector<double>& ow_u, const std::vector<double>& ow_q,
                                double q_self, double gamma_prime) {
  const double bound = 2.0 * gamma_prime;
  for (std::size_t x = 0; x < ow_u.size(); ++x)
    if (std::abs(ow_u[x] - ow_q[x]) > bound) return false;
  return std::abs(mean_over(u, ow_q) - q_self) <= 4.0 * gamma_prime;
}

inline bool candidate_admit(std::span<const int> u, std::span<const int> q, const DksInstance& inst,
                            double gamma_prime) {
  if (u.empty() || q.empty()) throw std::invalid_argument("candidate_admit: U and Q must be non-empty");
  const auto ow_u = average_weight_vector(u, inst);
  const auto ow_q = average_weight_vector(q, inst);
  return admit_with_profiles(u, ow_u, ow_q, mean_over(q, ow_q), gamma_prime);
}

/// Per-part concentration checks of a random partition against a reference
/// solution T' (subset of V'): size within [(1-g)t, (1+g)t], profile within g
/// in sup-norm, and self-weight within g. Empty intersections fail the
/// profile checks.
struct PartConditions {
  bool size_ok = false;
  bool profile_ok = false;
  bool self_weight_ok = false;
};

inline std::vector<PartConditions> check_partition_conditions(const DksInstance& inst,
                                                              const std::vector<std::vector<int>>& parts,
                                                              std::span<const int> reference, double t,
                                                              double gamma_prime) {
  if (reference.empty()) throw std::invalid_argument("check_partition_conditions: empty reference set");
  const auto ow_ref = average_weight_vector(reference, inst);
  const double ref_self = mean_over(reference, ow_ref);
  std::vector<char> in_ref(static_cast<std::size_t>(inst.size()), 0);
  for (int v : reference) in_ref[static_cast<std::size_t>(v)] = 1;
  std::vector<PartConditions> out;
  for (const auto& part : parts) {
    std::vector<int> u;
    for (int v : part)
      if (in_ref[static_cast<std::size_t>(v)]) u.push_back(v);
    PartConditions c;
    const double g = static_cast<double>(u.size());
    c.size_ok = g >= (1.0 - gamma_prime) * t && g <= (1.0 + gamma_prime) * t;
    if (!u.empty()) {
      const auto ow_u = average_weight_vector(u, inst);
      double worst = 0.0;
      for (std::size_t x = 0; x < ow_u.size(); ++x) worst = std::max(worst, std::abs(ow_u[x] - ow_ref[x]));
      c.profile_ok = worst <= gamma_prime;
      c.self_weight_ok = std::abs(mean_over(u, ow_ref) - ref_self) <= gamma_prime;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace divkit::dks
