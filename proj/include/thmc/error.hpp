#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thmc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A 64-bit count or statistic would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Enumeration stopped because it hit its element or node budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t partial_count)
      : Error(what), partial_count_(partial_count) {}

  std::uint64_t partial_count() const noexcept { return partial_count_; }

 private:
  std::uint64_t partial_count_;
};

/// Maximum likelihood fitting did not converge.
class FitFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace thmc
