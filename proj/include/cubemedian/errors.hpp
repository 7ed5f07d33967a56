#pragma once

#include <stdexcept>
#include <string>

namespace cubemedian {

/// Bad user input: unknown labels, malformed data, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (states, radius, geodesics) ran out before the
/// computation finished. `reached` carries the partial progress certificate.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& msg, long long reached = -1)
      : std::runtime_error(msg), reached_(reached) {}
  long long reached() const { return reached_; }

 private:
  long long reached_;
};

/// Internal consistency violation: the data fails an invariant that valid
/// inputs cannot fail (non-median host on a certified query, wall that does
/// not bisect its window, disagreeing classification conditions).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubemedian
