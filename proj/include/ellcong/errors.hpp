#pragma once

#include <stdexcept>
#include <string>

namespace ellcong {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: malformed curve/generator strings, unusable parameters.
struct UsageError : Error {
    using Error::Error;
};

// Malformed file content; message carries the offending line number.
struct ParseError : UsageError {
    using UsageError::UsageError;
};

struct NotPrimeError : UsageError {
    using UsageError::UsageError;
};

struct SingularCurveError : UsageError {
    using UsageError::UsageError;
};

struct UnsupportedFamilyError : UsageError {
    using UsageError::UsageError;
};

struct NonInvertibleGeneratorError : UsageError {
    using UsageError::UsageError;
};

// Requested value is undefined for the given argument (e.g. supersingularity
// of a bad-reduction record).
struct NotApplicableError : Error {
    using Error::Error;
};

struct NonInvertibleError : Error {
    using Error::Error;
};

struct UnsupportedCharacteristicError : Error {
    using Error::Error;
};

// Randomized order finding exhausted its attempt budget without pinning a
// unique group order.
struct AmbiguousOrderError : Error {
    using Error::Error;
};

// Integer factorization gave up and no completeness proof was available.
struct FactorizationTooHardError : Error {
    using Error::Error;
};

// Subgroup closure exceeded its element cap.
struct SizeCapExceededError : Error {
    using Error::Error;
};

// Two sources disagree about the same computed value (cache corruption guard).
struct ConflictError : Error {
    using Error::Error;
};

// A computed value violated an invariant that must hold unconditionally.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace ellcong
