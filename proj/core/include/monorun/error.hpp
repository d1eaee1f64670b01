#pragma once

#include <stdexcept>
#include <string>

namespace monorun {

enum class ErrorKind {
  InvalidInput,        // malformed or non-permutation input
  Domain,              // parameter outside the range where a quantity is defined
  CapExceeded,         // exhaustive enumeration above the configured cap
  InvariantViolation,  // a scan consistency check failed during simulation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace monorun
