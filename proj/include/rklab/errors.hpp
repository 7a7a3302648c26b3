// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rklab {

/// Stability polynomial has no positive imaginary interval radius: the
/// method cannot be stable for the full class of negative operators.
struct NoImaginaryInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precondition of coercivity_constant: the operator must be negative in
/// the weighted inner product.
struct NotNegative : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StencilTooWide : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MassMatrixSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Boundary maximum of |p| underflowed; the Crouzeix ratio is undefined.
struct DegenerateRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownScenario : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EigenSolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rklab
