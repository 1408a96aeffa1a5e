#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace divkit {

/// Generator metadata embedded in instance files.
struct Provenance {
  std::string generator;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::vector<int> planted;  // planted solution, when the generator has one

  bool empty() const noexcept { return generator.empty(); }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

}  // namespace divkit
