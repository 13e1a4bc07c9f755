#pragma once

#include <stdexcept>
#include <string>

namespace sw2l {

// Input text could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Structural invariant of a graph under construction was violated
// (self-loop, parallel arc, vertex out of range).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called with arguments outside its contract
// (cyclic graph where a DAG is required, unsatisfying assignment, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource guard was exceeded (oracle size limit, state budget).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sw2l
