#pragma once

#include <stdexcept>
#include <string>

namespace swpclock {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration value violates a type invariant (e.g. v0 <= 0, |v1| >= v0).
class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// Incident wave number k1 <= 0 (or not finite).
class NonPositiveWaveNumber : public Error {
public:
    using Error::Error;
};

/// The matching system at the barrier interfaces is singular.
class DegenerateMatch : public Error {
public:
    using Error::Error;
};

/// An operation valid only in one regime was called in another.
class RegimeMismatch : public Error {
public:
    using Error::Error;
};

/// V1 > 0 and E(k1) <= V1: there is no transmitted wave at z > a.
class TransmissionUndefined : public Error {
public:
    using Error::Error;
};

/// Finite-difference step exceeds V0/10.
class StepTooLarge : public Error {
public:
    using Error::Error;
};

/// V1 = 0: the resonance reflection-time expression is singular.
class SymmetricBarrier : public Error {
public:
    using Error::Error;
};

/// Channel weight integral below 1e-300; density undefined.
class VanishingChannel : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not meet tolerance within max_subdivisions.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Malformed command line.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace swpclock
