#pragma once

#include <stdexcept>
#include <string>

namespace aamr {

/// Two operands (vectors, operators, blocks) live in spaces of different dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterate stopped being finite (NaN or Inf).
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle failed to reach its accuracy target within its iteration cap.
class MaxIterExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle converged but its certified residual is too large to be trusted.
class OracleRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aamr
