#pragma once

#include <stdexcept>
#include <string>

namespace misembed {

/// Structural misuse: a configuration of the wrong length, an out-of-range
/// vertex, a dependent set passed where an independent one is required.
class StructuralError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `field` names the offending JSON/CSV field.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string field, const std::string &message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string &field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A search exceeded its configured node or state budget. Results computed so
/// far are incomplete and must not be reported as exact.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A checked invariant failed (contract violation, construction bug).
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace misembed
