#pragma once

#include <stdexcept>
#include <string>

#include "aggpack/bigint.hpp"

namespace aggpack {

// Raised when an exhaustive search would visit more points than the caller
// allowed. The message and the `required()` accessor state the budget that
// would have been needed.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, BigInt required)
      : std::runtime_error(what), required_(std::move(required)) {}

  const BigInt& required() const { return required_; }

 private:
  BigInt required_;
};

}  // namespace aggpack
