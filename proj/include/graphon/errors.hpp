#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

// Malformed input data or configuration (bad edge list, unknown graphon id,
// unknown node label, inconsistent dimensions).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (infeasible QP, degenerate posterior density).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphon
