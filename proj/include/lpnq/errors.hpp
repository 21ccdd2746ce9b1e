#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpnq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(std::string const& msg, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

struct DimensionError : Error {
  using Error::Error;
};

// The induced map on the central block is not defined, or a presentation
// that must be invariant is not declared so.
struct NotInvariantError : Error {
  using Error::Error;
};

struct GuardExceededError : Error {
  using Error::Error;
};

struct InconsistentError : Error {
  using Error::Error;
};

struct TooLargeError : Error {
  using Error::Error;
};

}  // namespace lpnq
