#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ticksup {

// Contract violations: malformed inputs, mismatched alphabets, unknown names.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the text-format readers with a 1-based source position.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

}  // namespace ticksup
