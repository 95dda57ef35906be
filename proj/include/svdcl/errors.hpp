#pragma once

#include <stdexcept>
#include <string>

namespace svdcl {

// Bad user input: unknown system id, malformed config, shape mismatch.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerics went off the rails: NaN loss, integrator overflow, SVD stall.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace svdcl
