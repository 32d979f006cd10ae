#pragma once

#include <stdexcept>
#include <string>

namespace hyperham {

// A set or parameter has the wrong size for the requested operation.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A vertex, parameter or divisibility condition lies outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters select a bound form whose hypotheses do not apply.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A pipeline stage could not complete; `stage()` names it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace hyperham
