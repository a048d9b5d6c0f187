#pragma once

#include <stdexcept>
#include <string>

namespace mdev {

// Invalid inputs or experiment specs. The CLI maps these to exit code 2.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failures during a run. The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : NumericError {
  using NumericError::NumericError;
};

// Rate denominator is zero (degenerate model).
struct DegenerateRate : NumericError {
  using NumericError::NumericError;
};

// No sign change and no near-zero of the estimating equation inside the
// search box.
struct NoRootInBox : NumericError {
  using NumericError::NumericError;
};

}  // namespace mdev
