#pragma once

#include <stdexcept>
#include <string>

namespace divkit {

/// Raised when an instance or input document violates its schema or type
/// invariants. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration guard or budget would be exceeded and the
/// operation has no fallback. The CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace divkit
