#pragma once

#include <stdexcept>
#include <string>

namespace mixbvp {

// Configuration, validation and precondition failures. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Boundary data incompatible with a rank-deficient mode system: the series
// method has no solution. The CLI maps these to exit code 2; the message
// names the offending mode index.
class UnsolvableError : public Error {
 public:
  UnsolvableError(int k, const std::string& what) : Error(what), resonant_k_(k) {}
  int resonant_k() const { return resonant_k_; }

 private:
  int resonant_k_;
};

}  // namespace mixbvp
