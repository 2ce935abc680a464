#pragma once

/**
 * @file matrix.hpp
 * @brief Dense row-major matrices over an arbitrary commutative ring.
 *
 * Entries may be scalars (Rational, double) or jet-algebra elements; the
 * determinant and adjugate inverse only need ring operations plus recip.
 * Rank is defined for scalar entries only and respects the exactness of
 * the scalar type.
 */

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "jetgeo/jets.hpp"

namespace jetgeo {

template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a; // row-major

    Mat() = default;
    Mat(std::size_t r, std::size_t c, const T& fill)
        : rows(r), cols(c), a(r * c, fill) {}

    const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }

    static Mat zero(std::size_t r, std::size_t c, const T& proto) {
        return Mat(r, c, zero_like(proto));
    }
    static Mat identity(std::size_t n, const T& proto) {
        Mat m = zero(n, n, proto);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one_like(proto);
        return m;
    }
    static Mat from_rows(std::size_t r, std::size_t c, std::vector<T> data) {
        detail::require(data.size() == r * c, "matrix shape mismatch");
        Mat m;
        m.rows = r;
        m.cols = c;
        m.a = std::move(data);
        return m;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

template <class T>
Mat<T> transpose(const Mat<T>& m) {
    Mat<T> r = m;
    r.rows = m.cols;
    r.cols = m.rows;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
    detail::require(x.rows == y.rows && x.cols == y.cols, "matrix shape mismatch");
    Mat<T> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
    detail::require(x.rows == y.rows && x.cols == y.cols, "matrix shape mismatch");
    Mat<T> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
}

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    detail::require(x.cols == y.rows, "matrix product shape mismatch");
    Mat<T> r = Mat<T>::zero(x.rows, y.cols, x.a.empty() ? y.a.front() : x.a.front());
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k)
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) += x.at(i, k) * y.at(k, j);
    return r;
}

/// Matrix times column vector; V is the entry type of the vector and may be
/// a ring extension of T (scalar matrix applied to a jet-valued vector).
template <class T, class V>
std::vector<V> mat_vec(const Mat<T>& m, const std::vector<V>& v) {
    detail::require(m.cols == v.size(), "matrix-vector shape mismatch");
    std::vector<V> r(m.rows, zero_like(v.front()));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            r[i] += embed_scalar(v.front(), m.at(i, j)) * v[j];
    return r;
}

template <class T>
T det(const Mat<T>& m) {
    detail::require(m.rows == m.cols, "determinant needs a square matrix");
    std::size_t n = m.rows;
    if (n == 1) return m.at(0, 0);
    T acc = zero_like(m.at(0, 0));
    for (std::size_t j = 0; j < n; ++j) {
        Mat<T> sub = Mat<T>::zero(n - 1, n - 1, m.at(0, 0));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(r - 1, cc++) = m.at(r, c);
            }
        }
        T term = m.at(0, j) * det(sub);
        if (j % 2 == 0) acc += term;
        else acc = acc - term;
    }
    return acc;
}

/// Adjugate inverse; valid over any ring in which det(m) is a unit.
/// DomainError surfaces from recip when it is not.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
    detail::require(m.rows == m.cols, "inverse needs a square matrix");
    std::size_t n = m.rows;
    T d = det(m);
    T dinv = recip(d);
    if (n == 1) {
        Mat<T> r = m;
        r.at(0, 0) = dinv;
        return r;
    }
    Mat<T> adj = Mat<T>::zero(n, n, m.at(0, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat<T> sub = Mat<T>::zero(n - 1, n - 1, m.at(0, 0));
            std::size_t rr = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    sub.at(rr, cc++) = m.at(r, c);
                }
                ++rr;
            }
            T cof = det(sub);
            if ((i + j) % 2 == 1) cof = -cof;
            adj.at(j, i) = cof * dinv;
        }
    return adj;
}

namespace detail {
inline bool pivot_usable(const Rational& x, double) { return !x.is_zero(); }
inline bool pivot_usable(double x, double thresh) {
    return (x < 0 ? -x : x) > thresh;
}
inline double mag(const Rational& x) { return x.is_zero() ? 0.0 : 1.0; }
inline double mag(double x) { return x < 0 ? -x : x; }
} // namespace detail

/// Row rank by Gaussian elimination with full pivoting. Exact scalars use
/// exact zero tests; floating scalars use tol scaled by the largest entry.
template <class T>
std::size_t rank(Mat<T> m, double tol = 1e-9) {
    double biggest = 0.0;
    for (const auto& x : m.a) biggest = std::max(biggest, detail::mag(x));
    double thresh = ScalarTraits<T>::exact ? 0.0 : tol * std::max(1.0, biggest);
    std::size_t rk = 0;
    std::size_t row = 0, col = 0;
    while (row < m.rows && col < m.cols) {
        std::size_t pi = row, pj = col;
        double best = -1.0;
        for (std::size_t i = row; i < m.rows; ++i)
            for (std::size_t j = col; j < m.cols; ++j) {
                double v = detail::mag(m.at(i, j));
                if (v > best) { best = v; pi = i; pj = j; }
            }
        if (!detail::pivot_usable(m.at(pi, pj), thresh)) break;
        for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, col), m.at(i, pj));
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(pi, j));
        T pinv = recip(m.at(row, col));
        for (std::size_t i = row + 1; i < m.rows; ++i) {
            T f = m.at(i, col) * pinv;
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        ++rk;
        ++row;
        ++col;
    }
    return rk;
}

template <class T>
double max_abs_mat(const Mat<T>& m) {
    double r = 0.0;
    for (const auto& x : m.a) r = std::max(r, max_abs(x));
    return r;
}

template <class V>
std::vector<V> vec_add(const std::vector<V>& x, const std::vector<V>& y) {
    detail::require(x.size() == y.size(), "vector length mismatch");
    std::vector<V> r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

template <class V>
std::vector<V> vec_sub(const std::vector<V>& x, const std::vector<V>& y) {
    detail::require(x.size() == y.size(), "vector length mismatch");
    std::vector<V> r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - y[i];
    return r;
}

template <class V>
std::vector<V> vec_neg(const std::vector<V>& x) {
    std::vector<V> r = x;
    for (auto& e : r) e = -e;
    return r;
}

} // namespace jetgeo
