#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetgeo {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in algebras of different dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Evaluation left the domain of a partial operation
/// (division by zero, log of a non-positive value, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A float64-only operation was requested in exact-rational mode.
struct ExactModeError : Error {
    using Error::Error;
};

/// A Gram matrix failed its positive-definiteness witness (leading minor <= 0).
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// Exact-mode Cholesky hit a pivot whose square root is irrational.
/// The matrix may still be positive definite; it just has no rational factor.
struct IrrationalCholesky : Error {
    using Error::Error;
};

/// A linear map that must be surjective is rank deficient.
struct RankDeficient : Error {
    using Error::Error;
};

/// Expression text failed to parse; `offset` is the byte position.
struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t off)
        : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

/// A malformed manifest file (missing section, bad key, arity error).
struct ManifestError : Error {
    using Error::Error;
};

/// Two independent computation routes for the same quantity disagreed.
/// Seeing this means a mathematical identity the code relies on failed.
struct CrossCheckError : Error {
    using Error::Error;
};

} // namespace jetgeo
