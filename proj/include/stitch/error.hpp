#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stitch {

// Input data is malformed or violates a documented precondition.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Caller passed an argument outside the operation's domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace stitch
