#pragma once

#include <stdexcept>
#include <string>

namespace gfusion {

// Base type for everything this library throws on contract violations.
// Constructor-argument misuse (negative dims, ragged matrices) throws
// std::invalid_argument instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AllVectorsNumericallyZero : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

// Negative-power functional calculus requested for an operator whose smallest
// eigenvalue sits below the invertibility floor.
struct SingularOperator : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

// Two frames that were expected to share a measure space (same atom ids, in
// order, with identical weights) do not.
struct MeasureSpaceMismatch : Error {
  using Error::Error;
};

struct UnknownAtomId : Error {
  using Error::Error;
};

// Lower frame bound is numerically zero: Bessel family only.
struct NotAFrame : Error {
  using Error::Error;
};

struct NotParseval : Error {
  using Error::Error;
};

struct NotTight : Error {
  using Error::Error;
};

// A check that requires real atom weights was handed complex ones.
struct NonRealWeights : Error {
  using Error::Error;
};

struct NotAlternateDual : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

struct GenerationFailed : Error {
  using Error::Error;
};

// File / JSON layer.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace gfusion
