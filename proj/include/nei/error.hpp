#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nei {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a mathematical precondition (non-positive intensity,
/// probabilities not summing to one, h outside [0,1], ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Malformed textual input. `line()` is 1-based, 0 when unknown.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line = 0)
      : error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid simulation configuration; `field()` names the offending key path.
class config_error : public error {
 public:
  config_error(const std::string& field, const std::string& what)
      : error(field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace nei
