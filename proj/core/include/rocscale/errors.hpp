#pragma once

#include <stdexcept>
#include <string>

namespace rocscale {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input value fell outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A labeled pool contains no negative samples; the ROC curve is undefined.
class AllPositiveError : public Error {
 public:
  using Error::Error;
};

/// A labeled pool contains no positive samples; the ROC curve is undefined.
class AllNegativeError : public Error {
 public:
  using Error::Error;
};

/// The acceptance probability is exactly zero, so conditional quantities
/// (precision, accepted-sample statistics) are undefined.
class ZeroAcceptanceError : public Error {
 public:
  using Error::Error;
};

/// A compute budget is below the minimum cost of one sample or above the
/// largest cost the curve can realize.
class BudgetOutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Requested budget exceeds the cost range covered by an observed prefix.
class BudgetTooLargeError : public Error {
 public:
  using Error::Error;
};

/// The observed prefix has zero accuracy, so no consistent score can reach
/// perfect accuracy.
class ZeroAccuracyPrefixError : public Error {
 public:
  using Error::Error;
};

/// The ROC slope is queried at a breakpoint where the two one-sided slopes
/// disagree; callers can fall back to the one-sided values.
class KinkPointError : public Error {
 public:
  using Error::Error;
};

/// No pool sample clears the rejection threshold.
class NoAcceptingSampleError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its size cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

/// An aggregate operation received an empty input.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A data file failed to parse; the message names the offending row.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A curve-spec document is malformed; the message names the offending field.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace rocscale
