#pragma once

#include <stdexcept>
#include <string>

namespace evg {

// Malformed arguments: unknown nodes, bad indices, invalid parameters.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A date outside the trace's covered range [t_0, t_k).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed trace text; carries the 1-based line number.
struct ParseError : InputError {
  ParseError(const std::string& what, int line)
      : InputError(what + " at line " + std::to_string(line)), line_no(line) {}
  int line_no;
};

// Unreadable or unwritable file.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke an API contract (e.g. applying a non-applicable rule).
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace evg
