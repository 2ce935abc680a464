#pragma once

/**
 * @file jets.hpp
 * @brief Exact arithmetic in the three nilpotent jet algebras.
 *
 * Jet1<T>  first-order jets: value + grad . d, with all products of two
 *          generators equal to zero.
 * Jet2<T>  second-order jets stored as (value, grad, Hessian), representing
 *          value + grad . d + 1/2 d^T hess d; degree-3 terms vanish.
 * Lap<T>   the Laplace algebra of dimension n+2 with basis {1, d_1..d_n, s},
 *          where d_i d_j = 0 for i != j, d_i^2 = s, d_i s = 0, s^2 = 0.
 *
 * The scalar T may itself be a jet type; nesting Jet1<Jet1<...>> yields
 * tensor products of first neighbourhoods, which the connection checks use.
 * All elements are immutable values and every operation is pure.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "jetgeo/scalar.hpp"

namespace jetgeo {

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok) throw DimensionMismatch(what);
}
} // namespace detail

// ---------------------------------------------------------------------------
// Jet1
// ---------------------------------------------------------------------------

template <class T>
struct Jet1 {
    T value;
    std::vector<T> grad;

    Jet1() = default;
    Jet1(T v, std::vector<T> g) : value(std::move(v)), grad(std::move(g)) {}

    std::size_t dim() const { return grad.size(); }

    static Jet1 constant(std::size_t n, const T& v) {
        return Jet1(v, std::vector<T>(n, zero_like(v)));
    }
    /// Seed for coordinate i: value + one unit along generator i.
    static Jet1 variable(std::size_t n, std::size_t i, const T& v) {
        Jet1 r = constant(n, v);
        r.grad[i] = one_like(v);
        return r;
    }

    Jet1& operator+=(const Jet1& o) { *this = *this + o; return *this; }

    friend bool operator==(const Jet1& a, const Jet1& b) {
        return a.value == b.value && a.grad == b.grad;
    }
};

template <class T>
Jet1<T> zero_like(const Jet1<T>& s) {
    return Jet1<T>::constant(s.dim(), zero_like(s.value));
}

template <class T>
Jet1<T> one_like(const Jet1<T>& s) {
    return Jet1<T>::constant(s.dim(), one_like(s.value));
}

template <class T>
Jet1<T> constant_like(const Jet1<T>& s, const Rational& q) {
    return Jet1<T>::constant(s.dim(), constant_like(s.value, q));
}

template <class T>
bool is_exactly_zero(const Jet1<T>& a) {
    if (!is_exactly_zero(a.value)) return false;
    for (const auto& g : a.grad)
        if (!is_exactly_zero(g)) return false;
    return true;
}

template <class T>
Jet1<T> operator-(const Jet1<T>& a) {
    Jet1<T> r = a;
    r.value = -r.value;
    for (auto& g : r.grad) g = -g;
    return r;
}

template <class T>
Jet1<T> operator+(const Jet1<T>& a, const Jet1<T>& b) {
    detail::require(a.dim() == b.dim(), "Jet1 dimension mismatch");
    Jet1<T> r = a;
    r.value += b.value;
    for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] += b.grad[i];
    return r;
}

template <class T>
Jet1<T> operator-(const Jet1<T>& a, const Jet1<T>& b) {
    return a + (-b);
}

// Product rule: (v1, g1)(v2, g2) = (v1 v2, v1 g2 + v2 g1).
template <class T>
Jet1<T> operator*(const Jet1<T>& a, const Jet1<T>& b) {
    detail::require(a.dim() == b.dim(), "Jet1 dimension mismatch");
    Jet1<T> r;
    r.value = a.value * b.value;
    r.grad.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        r.grad.push_back(a.value * b.grad[i] + b.value * a.grad[i]);
    return r;
}

template <class T>
Jet1<T> scale(const Jet1<T>& a, const T& c) {
    Jet1<T> r = a;
    r.value = r.value * c;
    for (auto& g : r.grad) g = g * c;
    return r;
}

template <class T>
Jet1<T> recip(const Jet1<T>& a) {
    T f0 = recip(a.value);
    T f1 = -(f0 * f0);
    Jet1<T> r;
    r.value = f0;
    r.grad.reserve(a.dim());
    for (const auto& g : a.grad) r.grad.push_back(f1 * g);
    return r;
}

// ---------------------------------------------------------------------------
// Jet2
// ---------------------------------------------------------------------------

template <class T>
struct Jet2 {
    T value;
    std::vector<T> grad;
    std::vector<T> hess; // n x n row-major, kept symmetric

    Jet2() = default;

    std::size_t dim() const { return grad.size(); }

    const T& h(std::size_t i, std::size_t j) const { return hess[i * dim() + j]; }
    T& h(std::size_t i, std::size_t j) { return hess[i * dim() + j]; }

    static Jet2 constant(std::size_t n, const T& v) {
        Jet2 r;
        r.value = v;
        r.grad.assign(n, zero_like(v));
        r.hess.assign(n * n, zero_like(v));
        return r;
    }
    static Jet2 variable(std::size_t n, std::size_t i, const T& v) {
        Jet2 r = constant(n, v);
        r.grad[i] = one_like(v);
        return r;
    }
    /// Construct from explicit parts; the Hessian is symmetrized so the
    /// invariant holds no matter what the caller passes.
    static Jet2 from_parts(T v, std::vector<T> g, std::vector<T> h_rowmajor) {
        Jet2 r;
        std::size_t n = g.size();
        detail::require(h_rowmajor.size() == n * n, "Jet2 Hessian shape mismatch");
        r.value = std::move(v);
        r.grad = std::move(g);
        r.hess = std::move(h_rowmajor);
        Rational half(1, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                T m = scale_half(r.hess[i * n + j] + r.hess[j * n + i], half);
                r.hess[i * n + j] = m;
                r.hess[j * n + i] = m;
            }
        return r;
    }

    Jet2& operator+=(const Jet2& o) { *this = *this + o; return *this; }

    friend bool operator==(const Jet2& a, const Jet2& b) {
        return a.value == b.value && a.grad == b.grad && a.hess == b.hess;
    }

private:
    static T scale_half(const T& x, const Rational& half) {
        return x * constant_like(x, half);
    }
};

template <class T>
Jet2<T> zero_like(const Jet2<T>& s) {
    return Jet2<T>::constant(s.dim(), zero_like(s.value));
}

template <class T>
Jet2<T> one_like(const Jet2<T>& s) {
    return Jet2<T>::constant(s.dim(), one_like(s.value));
}

template <class T>
Jet2<T> constant_like(const Jet2<T>& s, const Rational& q) {
    return Jet2<T>::constant(s.dim(), constant_like(s.value, q));
}

template <class T>
bool is_exactly_zero(const Jet2<T>& a) {
    if (!is_exactly_zero(a.value)) return false;
    for (const auto& g : a.grad)
        if (!is_exactly_zero(g)) return false;
    for (const auto& h : a.hess)
        if (!is_exactly_zero(h)) return false;
    return true;
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a) {
    Jet2<T> r = a;
    r.value = -r.value;
    for (auto& g : r.grad) g = -g;
    for (auto& h : r.hess) h = -h;
    return r;
}

template <class T>
Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
    detail::require(a.dim() == b.dim(), "Jet2 dimension mismatch");
    Jet2<T> r = a;
    r.value += b.value;
    for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] += b.grad[i];
    for (std::size_t i = 0; i < r.hess.size(); ++i) r.hess[i] += b.hess[i];
    return r;
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
    return a + (-b);
}

// value v1 v2; grad v1 g2 + v2 g1; hess v1 H2 + v2 H1 + g1 g2^T + g2 g1^T.
template <class T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
    detail::require(a.dim() == b.dim(), "Jet2 dimension mismatch");
    std::size_t n = a.dim();
    Jet2<T> r = Jet2<T>::constant(n, a.value * b.value);
    for (std::size_t i = 0; i < n; ++i)
        r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.h(i, j) = a.value * b.h(i, j) + b.value * a.h(i, j) +
                        a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i];
    return r;
}

template <class T>
Jet2<T> scale(const Jet2<T>& a, const T& c) {
    Jet2<T> r = a;
    r.value = r.value * c;
    for (auto& g : r.grad) g = g * c;
    for (auto& h : r.hess) h = h * c;
    return r;
}

// ---------------------------------------------------------------------------
// Lap
// ---------------------------------------------------------------------------

template <class T>
struct Lap {
    T value;
    std::vector<T> grad;
    T sigma; // coefficient of the d_1^2 + ... + d_n^2 class

    Lap() = default;
    Lap(T v, std::vector<T> g, T s)
        : value(std::move(v)), grad(std::move(g)), sigma(std::move(s)) {
        detail::require(grad.size() >= 2, "Lap needs dimension >= 2");
    }

    std::size_t dim() const { return grad.size(); }

    static Lap constant(std::size_t n, const T& v) {
        detail::require(n >= 2, "Lap needs dimension >= 2");
        Lap r;
        r.value = v;
        r.grad.assign(n, zero_like(v));
        r.sigma = zero_like(v);
        return r;
    }
    static Lap variable(std::size_t n, std::size_t i, const T& v) {
        Lap r = constant(n, v);
        r.grad[i] = one_like(v);
        return r;
    }

    Lap& operator+=(const Lap& o) { *this = *this + o; return *this; }

    friend bool operator==(const Lap& a, const Lap& b) {
        return a.value == b.value && a.grad == b.grad && a.sigma == b.sigma;
    }
};

template <class T>
Lap<T> zero_like(const Lap<T>& s) {
    return Lap<T>::constant(s.dim(), zero_like(s.value));
}

template <class T>
Lap<T> one_like(const Lap<T>& s) {
    return Lap<T>::constant(s.dim(), one_like(s.value));
}

template <class T>
Lap<T> constant_like(const Lap<T>& s, const Rational& q) {
    return Lap<T>::constant(s.dim(), constant_like(s.value, q));
}

template <class T>
bool is_exactly_zero(const Lap<T>& a) {
    if (!is_exactly_zero(a.value) || !is_exactly_zero(a.sigma)) return false;
    for (const auto& g : a.grad)
        if (!is_exactly_zero(g)) return false;
    return true;
}

template <class T>
Lap<T> operator-(const Lap<T>& a) {
    Lap<T> r = a;
    r.value = -r.value;
    for (auto& g : r.grad) g = -g;
    r.sigma = -r.sigma;
    return r;
}

template <class T>
Lap<T> operator+(const Lap<T>& a, const Lap<T>& b) {
    detail::require(a.dim() == b.dim(), "Lap dimension mismatch");
    Lap<T> r = a;
    r.value += b.value;
    for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] += b.grad[i];
    r.sigma += b.sigma;
    return r;
}

template <class T>
Lap<T> operator-(const Lap<T>& a, const Lap<T>& b) {
    return a + (-b);
}

// Realizes d_i d_j = 0 (i != j), d_i^2 = s, d_i s = 0, s^2 = 0:
// (v1, g1, s1)(v2, g2, s2) = (v1 v2, v1 g2 + v2 g1, v1 s2 + v2 s1 + g1 . g2).
template <class T>
Lap<T> operator*(const Lap<T>& a, const Lap<T>& b) {
    detail::require(a.dim() == b.dim(), "Lap dimension mismatch");
    std::size_t n = a.dim();
    Lap<T> r = Lap<T>::constant(n, a.value * b.value);
    T dot = zero_like(a.value);
    for (std::size_t i = 0; i < n; ++i) {
        r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
        dot += a.grad[i] * b.grad[i];
    }
    r.sigma = a.value * b.sigma + b.value * a.sigma + dot;
    return r;
}

template <class T>
Lap<T> scale(const Lap<T>& a, const T& c) {
    Lap<T> r = a;
    r.value = r.value * c;
    for (auto& g : r.grad) g = g * c;
    r.sigma = r.sigma * c;
    return r;
}

// ---------------------------------------------------------------------------
// Quotient map D_2(n) -> D_L(n)
// ---------------------------------------------------------------------------

/// Ring homomorphism (value, grad, H) -> (value, grad, 1/2 trace H).
/// Requires dimension >= 2; in dimension 1 the Laplace algebra coincides
/// with the full second neighbourhood and is represented by Jet2 directly.
template <class T>
Lap<T> jet2_to_lap(const Jet2<T>& a) {
    detail::require(a.dim() >= 2, "jet2_to_lap needs dimension >= 2");
    T tr = zero_like(a.value);
    for (std::size_t i = 0; i < a.dim(); ++i) tr += a.h(i, i);
    return Lap<T>(a.value, a.grad, tr * constant_like(a.value, Rational(1, 2)));
}

// ---------------------------------------------------------------------------
// Elementary-function lifts
// ---------------------------------------------------------------------------

/// Multiply by a rational constant (shape-preserving, works on any algebra).
template <class A>
A scale_by(const A& a, const Rational& q) {
    return a * constant_like(a, q);
}

// First and second derivative values of the tagged function at x, built by
// composing lifts so they stay exact on any nilpotent argument.
template <class A>
A lift_d1(FuncTag t, const A& x) {
    switch (t) {
        case FuncTag::Recip: {
            A r = recip(x);
            return -(r * r);
        }
        case FuncTag::Sqrt: {
            A r = recip(lift(FuncTag::Sqrt, x));
            return scale_by(r, Rational(1, 2));
        }
        case FuncTag::Sin: return lift(FuncTag::Cos, x);
        case FuncTag::Cos: return -lift(FuncTag::Sin, x);
        case FuncTag::Exp: return lift(FuncTag::Exp, x);
        case FuncTag::Log: return recip(x);
        case FuncTag::Tanh: {
            A t1 = lift(FuncTag::Tanh, x);
            return one_like(x) - t1 * t1;
        }
    }
    throw Error("unreachable function tag");
}

template <class A>
A lift_d2(FuncTag t, const A& x) {
    switch (t) {
        case FuncTag::Recip: {
            A r = recip(x);
            return scale_by(r * r * r, Rational(2));
        }
        case FuncTag::Sqrt: {
            A s = lift(FuncTag::Sqrt, x);
            return scale_by(-recip(x * s), Rational(1, 4));
        }
        case FuncTag::Sin: return -lift(FuncTag::Sin, x);
        case FuncTag::Cos: return -lift(FuncTag::Cos, x);
        case FuncTag::Exp: return lift(FuncTag::Exp, x);
        case FuncTag::Log: {
            A r = recip(x);
            return -(r * r);
        }
        case FuncTag::Tanh: {
            A t1 = lift(FuncTag::Tanh, x);
            A d = one_like(x) - t1 * t1;
            return scale_by(-(t1 * d), Rational(2));
        }
    }
    throw Error("unreachable function tag");
}

// f(c + nu) = f(c) + f'(c) nu  on first-order jets (nu^2 = 0).
template <class T>
Jet1<T> lift(FuncTag t, const Jet1<T>& a) {
    T f0 = lift(t, a.value);
    T f1 = lift_d1(t, a.value);
    Jet1<T> r;
    r.value = std::move(f0);
    r.grad.reserve(a.dim());
    for (const auto& g : a.grad) r.grad.push_back(f1 * g);
    return r;
}

// f(c + nu) = f(c) + f'(c) nu + 1/2 f''(c) nu^2, exact because nu^3 = 0.
template <class T>
Jet2<T> lift(FuncTag t, const Jet2<T>& a) {
    T f0 = lift(t, a.value);
    T f1 = lift_d1(t, a.value);
    T f2 = lift_d2(t, a.value);
    std::size_t n = a.dim();
    Jet2<T> r = Jet2<T>::constant(n, f0);
    for (std::size_t i = 0; i < n; ++i) r.grad[i] = f1 * a.grad[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.h(i, j) = f1 * a.h(i, j) + f2 * a.grad[i] * a.grad[j];
    return r;
}

template <class T>
Lap<T> lift(FuncTag t, const Lap<T>& a) {
    T f0 = lift(t, a.value);
    T f1 = lift_d1(t, a.value);
    T f2 = lift_d2(t, a.value);
    std::size_t n = a.dim();
    Lap<T> r = Lap<T>::constant(n, f0);
    T dot = zero_like(a.value);
    for (std::size_t i = 0; i < n; ++i) {
        r.grad[i] = f1 * a.grad[i];
        dot += a.grad[i] * a.grad[i];
    }
    r.sigma = f1 * a.sigma + scale_by(f2 * dot, Rational(1, 2));
    return r;
}

template <class T>
Jet2<T> recip(const Jet2<T>& a) {
    return lift(FuncTag::Recip, a);
}

template <class T>
Lap<T> recip(const Lap<T>& a) {
    return lift(FuncTag::Recip, a);
}

// ---------------------------------------------------------------------------
// Powers and division, uniform over scalars and jets
// ---------------------------------------------------------------------------

template <class A>
A pow_int(const A& a, long k) {
    if (k < 0) return recip(pow_int(a, -k));
    A result = one_like(a);
    A base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

inline Rational div(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    return a / b;
}

// a * (1/b), not a/b: jet-valued division goes through recip, and the
// value components of both paths must round identically so that nilpotent
// displacements stay exactly nilpotent in floating mode.
inline double div(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a * (1.0 / b);
}

template <class T>
Jet1<T> div(const Jet1<T>& a, const Jet1<T>& b) {
    return a * recip(b);
}

template <class T>
Jet2<T> div(const Jet2<T>& a, const Jet2<T>& b) {
    return a * recip(b);
}

template <class T>
Lap<T> div(const Lap<T>& a, const Lap<T>& b) {
    return a * recip(b);
}

// ---------------------------------------------------------------------------
// Traits over nested algebras
// ---------------------------------------------------------------------------

template <class T> struct base_scalar { using type = T; };
template <class T> struct base_scalar<Jet1<T>> { using type = typename base_scalar<T>::type; };
template <class T> struct base_scalar<Jet2<T>> { using type = typename base_scalar<T>::type; };
template <class T> struct base_scalar<Lap<T>> { using type = typename base_scalar<T>::type; };
template <class T> using base_scalar_t = typename base_scalar<T>::type;

/// Largest component magnitude, for floating-point residual scaling.
inline double max_abs(const Rational& x) { return std::abs(x.to_double()); }
inline double max_abs(double x) { return std::abs(x); }

template <class T>
double max_abs(const Jet1<T>& a) {
    double m = max_abs(a.value);
    for (const auto& g : a.grad) m = std::max(m, max_abs(g));
    return m;
}

template <class T>
double max_abs(const Jet2<T>& a) {
    double m = max_abs(a.value);
    for (const auto& g : a.grad) m = std::max(m, max_abs(g));
    for (const auto& h : a.hess) m = std::max(m, max_abs(h));
    return m;
}

template <class T>
double max_abs(const Lap<T>& a) {
    double m = std::max(max_abs(a.value), max_abs(a.sigma));
    for (const auto& g : a.grad) m = std::max(m, max_abs(g));
    return m;
}

/// True when the innermost scalar value of the element is exactly zero,
/// i.e. the element is a pure nilpotent displacement.
inline bool base_value_zero(const Rational& x) { return x.is_zero(); }
inline bool base_value_zero(double x) { return x == 0.0; }
template <class T> bool base_value_zero(const Jet1<T>& a) { return base_value_zero(a.value); }
template <class T> bool base_value_zero(const Jet2<T>& a) { return base_value_zero(a.value); }
template <class T> bool base_value_zero(const Lap<T>& a) { return base_value_zero(a.value); }

/// Zero test that is exact for exact base scalars and tolerance-based for
/// floating ones; `scale` widens the band for residuals of large inputs.
template <class A>
bool is_negligible(const A& a, double tol, double scale = 1.0) {
    if (ScalarTraits<base_scalar_t<A>>::exact) return is_exactly_zero(a);
    return max_abs(a) <= tol * std::max(1.0, scale);
}

/// An element with the shape of `proto` and the given scalar value.
inline Rational embed_scalar(const Rational&, const Rational& v) { return v; }
inline double embed_scalar(double, double v) { return v; }

template <class T, class S>
Jet1<T> embed_scalar(const Jet1<T>& proto, const S& v) {
    Jet1<T> r = zero_like(proto);
    r.value = embed_scalar(proto.value, v);
    return r;
}

template <class T, class S>
Jet2<T> embed_scalar(const Jet2<T>& proto, const S& v) {
    Jet2<T> r = zero_like(proto);
    r.value = embed_scalar(proto.value, v);
    return r;
}

template <class T, class S>
Lap<T> embed_scalar(const Lap<T>& proto, const S& v) {
    Lap<T> r = zero_like(proto);
    r.value = embed_scalar(proto.value, v);
    return r;
}

} // namespace jetgeo
