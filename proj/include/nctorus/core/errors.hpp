#pragma once

#include <stdexcept>
#include <string>

namespace nct {

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PositivityError : std::runtime_error {
  PositivityError(const std::string& what, double violating_eigenvalue)
      : std::runtime_error(what), eigenvalue(violating_eigenvalue) {}
  double eigenvalue;
};

struct UnsupportedOrderError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ShapeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConvergenceError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace nct
