#pragma once

#include <stdexcept>
#include <string>

namespace betherec {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scalar function was evaluated at a pole (u = v and similar), or a
// degenerate parameter choice (coincident Bethe parameters) was detected.
// Callers are expected to resample and retry.
struct PoleError : Error {
  using Error::Error;
};

// A normalization factor evaluated to zero; the spectral point must be
// resampled.
struct ZeroNormalizationError : Error {
  using Error::Error;
};

// An index (color, matrix index, branch selector) is outside its legal range.
struct IndexError : Error {
  using Error::Error;
};

// A partition cardinality profile cannot be realized on the given sets.
struct InfeasibleProfileError : Error {
  using Error::Error;
};

// Polynomial reconstruction of a monodromy entry failed its holdout check.
struct InterpolationError : Error {
  using Error::Error;
};

// The vacuum scan found no (or more than one) annihilated basis vector.
struct NoVacuumError : Error {
  using Error::Error;
};

// An operation specific to one algebra family was requested for the other.
struct FamilyError : Error {
  using Error::Error;
};

// Solving the twists from the Bethe equations produced a zero or undefined
// twist; the roots must be resampled.
struct DegenerateRootsError : Error {
  using Error::Error;
};

// Invalid run configuration (CLI or config file level).
struct ConfigError : Error {
  using Error::Error;
};

// Pre-Bethe operator requested for a block that is not rank one.
struct UnsupportedBlockError : Error {
  using Error::Error;
};

}  // namespace betherec
