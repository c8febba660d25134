#pragma once

#include <stdexcept>
#include <string>

namespace congestion {

// Field length does not match the grid it is used with.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain (rho <= 0, gamma <= 0, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// rho^gamma would overflow; the run cannot continue meaningfully.
struct SaturationError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A single step produced a nonpositive density. Caught by the step-size
// rescue in the solver; escapes only through VacuumError.
struct PositivityError : std::runtime_error {
  PositivityError(int cell, double value)
      : std::runtime_error("nonpositive density " + std::to_string(value) +
                           " in cell " + std::to_string(cell)),
        cell(cell) {}
  int cell;
};

// Density reached zero even after the maximum number of dt halvings.
struct VacuumError : std::runtime_error {
  VacuumError(double t, int cell, double gamma);
  double t;
  int cell;
  double gamma;
};

}  // namespace congestion
