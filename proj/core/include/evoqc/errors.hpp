#pragma once

#include <stdexcept>
#include <string>

namespace evoqc {

// Raised when serialized input (circuit text, chromosome CSV, target table
// files, JSON configs) is malformed. `line` is 1-based; 0 means the error is
// not tied to a particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  explicit ParseError(const std::string& message) : ParseError(0, message) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace evoqc
