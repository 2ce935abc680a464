#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision rational scalar backed by GMP.
 *
 * All identity checks in exact mode run over this type, so arithmetic is
 * exact and division by zero throws instead of producing a silent NaN.
 * Serialization is always "p/q" in lowest terms with q > 0.
 */

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "jetgeo/errors.hpp"

namespace jetgeo {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parse "p", "p/q" or a finite decimal like "1.25" / "-0.5".
    static Rational from_string(const std::string& text);

    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int  sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    double to_double() const { return v_.get_d(); }

    /// "p/q" in lowest terms, q > 0 (integers serialize as "p/1").
    std::string str() const;

    /// Exact square root if this is the square of a rational, else nullopt.
    std::optional<Rational> exact_sqrt() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

Rational abs(const Rational& a);

} // namespace jetgeo
