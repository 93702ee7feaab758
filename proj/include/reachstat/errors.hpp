#pragma once

#include <stdexcept>
#include <string>

namespace reachstat {

// Malformed arguments or files: shape mismatches, out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would exceed a configured cap (vertex count, sign pairs).
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

// The expression has a form the operation cannot handle (e.g. nonlinear terms).
class UnsupportedFormError : public std::runtime_error {
 public:
  explicit UnsupportedFormError(const std::string& what) : std::runtime_error(what) {}
};

// A set invariant was broken, e.g. a support LP was unbounded or infeasible.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// An optimization problem without a feasible point.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Missing or unreadable bundled data.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reachstat
