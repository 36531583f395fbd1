#pragma once

#include <stdexcept>
#include <string>

namespace ndstc {

/// Invalid argument or configuration value.
class ParamError : public std::invalid_argument {
 public:
  explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

/// Operation called on an object in the wrong lifecycle state
/// (e.g. differential encoding before the preamble finished).
class StateError : public std::logic_error {
 public:
  explicit StateError(const std::string& what) : std::logic_error(what) {}
};

/// An exhaustive search would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical postcondition failed (non-finite values, constraint drift).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ndstc
