#pragma once

#include <stdexcept>
#include <string>

namespace hanspec {

/// Invalid scenario or allocator configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Caller violated an operation precondition (dimension mismatch, empty input).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// An assignment outside the conflict-free set was passed where one is required.
class FeasibilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search would exceed its enumeration budget.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Selection was asked to choose from an all-zero distribution.
class NoCandidateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario file.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hanspec
