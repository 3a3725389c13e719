#pragma once

#include <stdexcept>

namespace hrgap {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input file does not exist or cannot be opened.
struct FileNotFoundError : Error {
  using Error::Error;
};

/// CSV header is absent or lacks a requested column.
struct MalformedHeaderError : Error {
  using Error::Error;
};

/// No record survived cleaning.
struct EmptySeriesError : Error {
  using Error::Error;
};

/// The series cannot hold a single gap window.
struct SeriesTooShortError : Error {
  using Error::Error;
};

/// A gap plan references indices outside the series it is applied to.
struct PlanMismatchError : Error {
  using Error::Error;
};

/// The observed view cannot support the requested imputation method.
struct InsufficientContextError : Error {
  using Error::Error;
};

/// An interpolation target lies outside the observed hull.
struct OutOfRangeError : Error {
  using Error::Error;
};

/// A percentage-error denominator is exactly zero.
struct ZeroDenominatorError : Error {
  using Error::Error;
};

/// A metric needs more samples than the segment holds.
struct SegmentTooShortError : Error {
  using Error::Error;
};

/// Invalid configuration (unknown method name, non-positive sizes, ...).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hrgap
