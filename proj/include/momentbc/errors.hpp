#pragma once

#include <stdexcept>
#include <string>

namespace momentbc {

/// A numerical verification failed (matrix not SPD, singular block, solver
/// residual too large, ...).  The CLI maps it to exit code 2.
class NumericalError : public std::runtime_error
{
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace momentbc
