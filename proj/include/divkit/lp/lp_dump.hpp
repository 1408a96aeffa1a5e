#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "divkit/lp/linear_program.hpp"

namespace divkit::lp {

/// Writes a plain-text dump: objective line, one line per constraint, then
/// one line per bounded variable. Zero coefficients are omitted.
inline void write_lp_text(std::ostream& os, const LinearProgram& lp) {
  os.precision(17);
  auto name = [&](std::size_t j) {
    return j < lp.names.size() && !lp.names[j].empty() ? lp.names[j] : "v" + std::to_string(j);
  };
  auto terms = [&](const std::vector<double>& coeffs) {
    bool first = true;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0.0) continue;
      if (!first) os << " +";
      os << ' ' << coeffs[j] << ' ' << name(j);
      first = false;
    }
    if (first) os << " 0";
  };
  os << "max:";
  terms(lp.objective);
  os << '\n';
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    os << 'c' << i << ':';
    terms(c.coeffs);
    os << (c.relation == Relation::less_equal ? " <= " : c.relation == Relation::greater_equal ? " >= " : " = ")
       << c.rhs << '\n';
  }
  for (std::size_t j = 0; j < static_cast<std::size_t>(lp.num_vars); ++j)
    os << "bound: " << lp.lower[j] << " <= " << name(j) << " <= " << lp.upper[j] << '\n';
}

inline std::string lp_text(const LinearProgram& lp) {
  std::ostringstream os;
  write_lp_text(os, lp);
  return os.str();
}

}  // namespace divkit::lp
