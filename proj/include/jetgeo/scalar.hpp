#pragma once

/**
 * @file scalar.hpp
 * @brief The scalar contract shared by the exact and float64 modes.
 *
 * Every algebra in the library is a template over a scalar type T.  Two
 * realizations are provided: Rational (exact, the default for identity
 * verification) and double (float64 mode, comparisons up to a relative
 * tolerance).  Transcendental functions exist only in float64 mode.
 */

#include <cmath>
#include <string>

#include "jetgeo/errors.hpp"
#include "jetgeo/rational.hpp"

namespace jetgeo {

/// Scalar realization selected on the command line.
enum class ScalarMode { Exact, Float64 };

/// Tags for the univariate elementary functions the DSL can call.
/// Integer powers and division are handled structurally, not through tags.
enum class FuncTag { Recip, Sqrt, Sin, Cos, Exp, Log, Tanh };

inline const char* func_name(FuncTag t) {
    switch (t) {
        case FuncTag::Recip: return "recip";
        case FuncTag::Sqrt: return "sqrt";
        case FuncTag::Sin: return "sin";
        case FuncTag::Cos: return "cos";
        case FuncTag::Exp: return "exp";
        case FuncTag::Log: return "log";
        case FuncTag::Tanh: return "tanh";
    }
    return "?";
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static double to_double(const Rational& a) { return a.to_double(); }
    static std::string str(const Rational& a) { return a.str(); }

    /// Square root for Cholesky pivots: exact or a structured error.
    static Rational cholesky_sqrt(const Rational& a) {
        auto r = a.exact_sqrt();
        if (!r)
            throw IrrationalCholesky("pivot " + a.str() +
                                     " has no rational square root; "
                                     "exact mode needs a rationally factorable Gram matrix");
        return *r;
    }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& q) { return q.to_double(); }
    static bool is_zero(double a) { return a == 0.0; }
    static double to_double(double a) { return a; }
    static std::string str(double a) { return std::to_string(a); }

    static double cholesky_sqrt(double a) { return std::sqrt(a); }
};

// --- scalar base cases for the generic algebra interface -------------------

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational constant_like(const Rational&, const Rational& q) { return q; }
inline bool is_exactly_zero(const Rational& a) { return a.is_zero(); }

inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }
inline double constant_like(double, const Rational& q) { return q.to_double(); }
inline bool is_exactly_zero(double a) { return a == 0.0; }

inline Rational recip(const Rational& a) {
    if (a.is_zero()) throw DomainError("division by zero");
    return Rational(1) / a;
}

inline double recip(double a) {
    if (a == 0.0) throw DomainError("division by zero");
    return 1.0 / a;
}

inline Rational lift(FuncTag t, const Rational& a) {
    if (t == FuncTag::Recip) return recip(a);
    throw ExactModeError(std::string(func_name(t)) + " requires float64 mode");
}

inline double lift(FuncTag t, double a) {
    switch (t) {
        case FuncTag::Recip: return recip(a);
        case FuncTag::Sqrt:
            if (a < 0.0) throw DomainError("sqrt of a negative value");
            return std::sqrt(a);
        case FuncTag::Sin: return std::sin(a);
        case FuncTag::Cos: return std::cos(a);
        case FuncTag::Exp: return std::exp(a);
        case FuncTag::Log:
            if (a <= 0.0) throw DomainError("log of a non-positive value");
            return std::log(a);
        case FuncTag::Tanh: return std::tanh(a);
    }
    throw Error("unreachable function tag");
}

} // namespace jetgeo
