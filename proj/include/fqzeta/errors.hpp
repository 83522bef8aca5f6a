// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fqz {

/// Bad input to an operation: wrong domain, violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested precision cannot be met from the precision of the inputs.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what, long long required = -1)
      : std::runtime_error(what), required_(required) {}
  long long required() const noexcept { return required_; }

 private:
  long long required_;
};

/// An invariant that the preconditions guarantee was found broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fqz
