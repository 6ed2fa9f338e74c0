#pragma once

#include <stdexcept>
#include <string>

namespace fcpool {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters for a law, plan or query.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A transform-side functional was requested from a simulation-only law.
class UnsupportedTransform : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of the requested operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// Shifted rates of a general plan are too close for partial fractions.
class RateCollision : public Error {
public:
    using Error::Error;
};

/// Partial-fraction coefficients exceeded the conditioning guard.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Evaluation refused at an excluded or omitted singular point.
class SingularityGuard : public Error {
public:
    using Error::Error;
};

class UnsupportedMean : public Error {
public:
    using Error::Error;
};

/// The exact CTMC oracle only covers exponential service.
class UnsupportedOracle : public Error {
public:
    using Error::Error;
};

/// Inverted probabilities did not sum to one within tolerance.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Euler and Talbot inversions disagreed beyond the cross-check tolerance.
class ConvergenceWarning : public Error {
public:
    using Error::Error;
};

}  // namespace fcpool
