#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phasealg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient spaces, rings or phases.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (not an ideal, no augmentation, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A bounded search or enumeration ran out of budget before finishing.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t bound)
      : Error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}

  std::uint64_t bound() const noexcept { return bound_; }

 private:
  std::uint64_t bound_;
};

}  // namespace phasealg
