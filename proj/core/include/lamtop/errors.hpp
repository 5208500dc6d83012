#pragma once

#include <stdexcept>
#include <string>

namespace lamtop {

/// Base class for all domain errors raised by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A symbol has negative-index support where an analytic one is required.
struct NotAnalytic : Error {
  using Error::Error;
};

/// Evaluation point outside the open unit disc.
struct OutOfDomain : Error {
  using Error::Error;
};

/// The query point lies on (or numerically on) the sampled curve; the
/// winding number is undefined there.
struct OnCurve : Error {
  using Error::Error;
};

/// Winding number not divisible by q; signals a broken input symbol.
struct NonIntegralIndex : Error {
  using Error::Error;
};

/// Automorphism has no fixed point in the open disc.
struct NotElliptic : Error {
  using Error::Error;
};

/// Multiplier is not a root of unity within the searched order range.
struct NotFiniteOrder : Error {
  using Error::Error;
};

/// Truncated Fourier expansion leaves a residual above the certification
/// threshold; the caller must raise the degree.
struct TailTooLarge : Error {
  using Error::Error;
};

/// Requested matrix dimension exceeds the dense-kernel budget.
struct DimensionCap : Error {
  using Error::Error;
};

/// Malformed input value (non-finite entry, invalid rotation data, ...).
struct InvalidInput : Error {
  using Error::Error;
};

}  // namespace lamtop
