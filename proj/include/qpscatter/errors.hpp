#pragma once

#include <stdexcept>
#include <string>

namespace qps {

/// Base of every library error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected before any numerical work (bad parameters, mismatched media).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// beta_j or gamma_j vanishes: a grazing (Wood) mode.
class ResonanceError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A propagating mode lies outside the truncated index window.
class TruncationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Permittivity does not match eps+/eps- near y = +-1.
class MediumMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Adaptive resolution did not converge below its size cap.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Pivot breakdown in a direct factorization.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Dense materialization requested above the configured unknown count.
class SizeCapError : public Error {
public:
    using Error::Error;
};

/// Arnoldi breakdown that does not yield a solution.
class BreakdownError : public Error {
public:
    using Error::Error;
};

/// Quantity undefined for the given input (e.g. energy balance for lossy media).
class NotApplicableError : public Error {
public:
    using Error::Error;
};

}  // namespace qps
