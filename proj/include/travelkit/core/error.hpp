#pragma once

#include <stdexcept>
#include <string>

namespace travelkit {

// Base for every failure raised by the library. Validation problems that are
// expected in normal data are returned as values, not thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record could not be decoded. line is 1-based, 0 when not from a file.
class RecordError : public Error {
 public:
  RecordError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace travelkit
