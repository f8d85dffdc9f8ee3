#pragma once

#include <stdexcept>
#include <string>

namespace evid {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mass assignment does not sum to one (no silent renormalization).
struct SumNotOneError : Error {
    using Error::Error;
};

/// Positive mass assigned to the empty set.
struct EmptyFocalError : Error {
    using Error::Error;
};

/// Invalid frame, out-of-range member index, or frame mismatch between operands.
struct BadFrameError : Error {
    using Error::Error;
};

/// Dempster combination undefined: degree of conflict reached one.
struct TotalConflictError : Error {
    using Error::Error;
};

/// Likelihood vector with no strictly positive entry.
struct AllZeroLikelihoodError : Error {
    using Error::Error;
};

/// Mass transfer produced a negative remainder on the frame.
struct NonNormalizableError : Error {
    using Error::Error;
};

/// Credal-partition row places all mass on the empty set.
struct AllMassEmptyError : Error {
    using Error::Error;
};

/// Normalizing denominator vanished (disjoint supports).
struct ZeroDenominatorError : Error {
    using Error::Error;
};

/// Parameter outside its documented range.
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Optimization aborted (non-finite loss or similar diagnostic).
struct TrainingError : Error {
    using Error::Error;
};

/// File or format problem on an external interface.
struct IoError : Error {
    using Error::Error;
};

}  // namespace evid
