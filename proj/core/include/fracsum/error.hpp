#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracsum {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation outside a function's real domain (pole, log of a
/// non-positive number, non-finite result).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or quadrature that cannot produce a usable value.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace fracsum
