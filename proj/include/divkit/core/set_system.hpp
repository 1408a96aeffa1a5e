#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "divkit/core/errors.hpp"

namespace divkit {

struct CoveredSet {
  std::vector<int> members;  // sorted, distinct, in [0, n)
  int requirement = 1;       // k_S

  friend bool operator==(const CoveredSet&, const CoveredSet&) = default;
};

/// Ground set [0, n) with a family of sets, each with a coverage requirement
/// 1 <= k_S <= |S|.
class SetSystemInstance {
 public:
  SetSystemInstance() = default;

  SetSystemInstance(int n, std::vector<CoveredSet> sets) : n_(n), sets_(std::move(sets)) {
    if (n < 1) throw ValidationError("setsystem: n must be >= 1");
    if (sets_.empty()) throw ValidationError("setsystem: at least one set is required");
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      auto& set = sets_[s];
      const std::string where = "setsystem: sets[" + std::to_string(s) + "]";
      std::sort(set.members.begin(), set.members.end());
      if (std::adjacent_find(set.members.begin(), set.members.end()) != set.members.end())
        throw ValidationError(where + ".members contains duplicates");
      if (set.members.empty()) throw ValidationError(where + ".members must be non-empty");
      if (set.members.front() < 0 || set.members.back() >= n)
        throw ValidationError(where + ".members index out of range");
      if (set.requirement < 1 || set.requirement > static_cast<int>(set.members.size()))
        throw ValidationError(where + ".k must satisfy 1 <= k <= |members|");
    }
  }

  int element_count() const noexcept { return n_; }
  int set_count() const noexcept { return static_cast<int>(sets_.size()); }
  const std::vector<CoveredSet>& sets() const noexcept { return sets_; }
  const CoveredSet& set(int s) const { return sets_.at(static_cast<std::size_t>(s)); }

  friend bool operator==(const SetSystemInstance&, const SetSystemInstance&) = default;

 private:
  int n_ = 0;
  std::vector<CoveredSet> sets_;
};

}  // namespace divkit
