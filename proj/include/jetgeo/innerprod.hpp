#pragma once

/**
 * @file innerprod.hpp
 * @brief Exact linear algebra for inner-product spaces.
 *
 * Provides Cholesky orthonormalization, the generic L-small probe vector,
 * the sum criterion for L-smallness, trace-zero self-adjoint probes, and
 * semi-conformal classification of constant matrices.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "jetgeo/matrix.hpp"

namespace jetgeo {

struct CheckOptions {
    double tol = 1e-9; // relative tolerance, floating mode only
};

inline Rational abs_val(const Rational& x) { return abs(x); }
inline double abs_val(double x) { return std::abs(x); }

template <class T>
class InnerProduct {
public:
    explicit InnerProduct(Mat<T> gram) : gram_(std::move(gram)) {
        detail::require(gram_.rows == gram_.cols, "inner product gram must be square");
        for (std::size_t i = 0; i < gram_.rows; ++i)
            for (std::size_t j = i + 1; j < gram_.cols; ++j)
                if (!(gram_.at(i, j) == gram_.at(j, i)))
                    throw DomainError("inner product gram must be symmetric");
    }

    static InnerProduct standard(std::size_t n) {
        return InnerProduct(Mat<T>::identity(n, ScalarTraits<T>::from_rational(Rational(1))));
    }

    std::size_t dim() const { return gram_.rows; }
    const Mat<T>& gram() const { return gram_; }

    /// <u, v> over any ring extension A of the scalar type.
    template <class A>
    A eval(const std::vector<A>& u, const std::vector<A>& v) const {
        detail::require(u.size() == dim() && v.size() == dim(),
                        "inner product dimension mismatch");
        A acc = zero_like(u.front());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                acc += embed_scalar(u.front(), gram_.at(i, j)) * u[i] * v[j];
        return acc;
    }

    /// <w, e_i> against a standard basis vector, staying in the ring of w.
    template <class A>
    A eval_basis(const std::vector<A>& w, std::size_t i) const {
        detail::require(w.size() == dim(), "inner product dimension mismatch");
        A acc = zero_like(w.front());
        for (std::size_t a = 0; a < dim(); ++a)
            acc += embed_scalar(w.front(), gram_.at(a, i)) * w[a];
        return acc;
    }

private:
    Mat<T> gram_;
};

/// Upper-triangular S with SᵀS = gram and positive diagonal.
/// NotPositiveDefinite when a pivot radicand is ≤ 0; IrrationalCholesky when
/// an exact pivot is positive but not a rational square.
template <class T>
Mat<T> cholesky(const InnerProduct<T>& ip) {
    std::size_t n = ip.dim();
    const Mat<T>& g = ip.gram();
    Mat<T> s = Mat<T>::zero(n, n, g.at(0, 0));
    for (std::size_t i = 0; i < n; ++i) {
        T rad = g.at(i, i);
        for (std::size_t k = 0; k < i; ++k) rad = rad - s.at(k, i) * s.at(k, i);
        bool pos;
        if constexpr (std::is_same_v<T, Rational>) pos = rad.sign() > 0;
        else pos = rad > 0.0;
        if (!pos)
            throw NotPositiveDefinite("pivot radicand is not positive; "
                                      "gram matrix is not positive definite");
        s.at(i, i) = ScalarTraits<T>::cholesky_sqrt(rad);
        T dinv = recip(s.at(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            T acc = g.at(i, j);
            for (std::size_t k = 0; k < i; ++k) acc = acc - s.at(k, i) * s.at(k, j);
            s.at(i, j) = acc * dinv;
        }
    }
    return s;
}

/// The generic L-small tangent vector u = S⁻¹·δ with Lap coordinates:
/// <u,a><u,b> = (1/n)<u,u><a,b> holds for all constant vectors a, b, and
/// <u,u> = n·σ.
template <class T>
std::vector<Lap<T>> lsmall_probe(const InnerProduct<T>& ip) {
    std::size_t n = ip.dim();
    detail::require(n >= 2, "L-small probe needs dimension >= 2");
    Mat<T> f = inverse(cholesky(ip));
    std::vector<Lap<T>> u;
    u.reserve(n);
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        Lap<T> c = Lap<T>::constant(n, zero);
        for (std::size_t a = 0; a < n; ++a) c.grad[a] = f.at(i, a);
        u.push_back(std::move(c));
    }
    return u;
}

/// L-smallness of a Lap-coordinate vector: <w,a><w,b> = (1/n)<w,w><a,b>
/// checked over all standard basis pairs (sufficient by bilinearity).
template <class T>
bool is_lsmall(const std::vector<Lap<T>>& w, const InnerProduct<T>& ip,
               const CheckOptions& opts = {}) {
    std::size_t n = ip.dim();
    Lap<T> ww = ip.eval(w, w);
    Rational inv_n(1, static_cast<long>(n));
    double scale = max_abs(ww);
    for (std::size_t i = 0; i < n; ++i) {
        Lap<T> wi = ip.eval_basis(w, i);
        scale = std::max(scale, max_abs(wi) * max_abs(wi));
        for (std::size_t j = 0; j < n; ++j) {
            Lap<T> wj = ip.eval_basis(w, j);
            Lap<T> lhs = wi * wj;
            Lap<T> rhs = scale_by(ww, inv_n) *
                         embed_scalar(ww, ip.gram().at(i, j));
            if (!is_negligible(lhs - rhs, opts.tol, scale)) return false;
        }
    }
    return true;
}

/// Coordinate characterization in an orthonormal frame: components satisfy
/// t_i t_j = 0 for i ≠ j, and all t_i² agree.
template <class T>
bool lsmall_coordinate_relations(const std::vector<Lap<T>>& t,
                                 const CheckOptions& opts = {}) {
    detail::require(!t.empty(), "empty coordinate vector");
    double scale = 0.0;
    for (const auto& c : t) scale = std::max(scale, max_abs(c) * max_abs(c));
    Lap<T> sq0 = t[0] * t[0];
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (i == j) continue;
            if (!is_negligible(t[i] * t[j], opts.tol, scale)) return false;
        }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!is_negligible(t[i] * t[i] - sq0, opts.tol, scale)) return false;
    return true;
}

/// Sum criterion: a + b is L-small (given both are) iff
/// <a,u><b,v> + <a,v><b,u> = (2/n)<a,b><u,v> for all basis pairs u, v.
template <class T>
bool sum_lsmall_condition(const std::vector<Lap<T>>& a,
                          const std::vector<Lap<T>>& b,
                          const InnerProduct<T>& ip,
                          const CheckOptions& opts = {}) {
    std::size_t n = ip.dim();
    detail::require(a.size() == n && b.size() == n, "vector length mismatch");
    Lap<T> ab = ip.eval(a, b);
    Rational two_over_n(2, static_cast<long>(n));
    double scale = max_abs(ab);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Lap<T> lhs = ip.eval_basis(a, i) * ip.eval_basis(b, j) +
                         ip.eval_basis(a, j) * ip.eval_basis(b, i);
            Lap<T> rhs = scale_by(ab, two_over_n) *
                         embed_scalar(ab, ip.gram().at(i, j));
            scale = std::max(scale, max_abs(lhs));
            if (!is_negligible(lhs - rhs, opts.tol, scale)) return false;
        }
    return true;
}

/// Basis of the trace-zero self-adjoint maps: E_ij + E_ji for i < j, then
/// E_ii − E_{i+1,i+1}; n(n+1)/2 − 1 matrices in total.
template <class T>
std::vector<Mat<T>> tracezero_selfadjoint_basis(std::size_t n) {
    detail::require(n >= 2, "trace-zero basis needs dimension >= 2");
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    T one = ScalarTraits<T>::from_rational(Rational(1));
    std::vector<Mat<T>> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Mat<T> m = Mat<T>::zero(n, n, zero);
            m.at(i, j) = one;
            m.at(j, i) = one;
            basis.push_back(std::move(m));
        }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Mat<T> m = Mat<T>::zero(n, n, zero);
        m.at(i, i) = one;
        m.at(i + 1, i + 1) = -one;
        basis.push_back(std::move(m));
    }
    return basis;
}

template <class T>
struct SemiConformalReport {
    bool is_semiconformal = false;
    std::optional<T> dilation; // Λ, present iff semi-conformal
    T worst_defect;            // largest orthogonality / equal-norm residual
};

/// Classify a constant m×n matrix between inner-product spaces.
/// B = S_cod · A · S_dom⁻¹ expresses the map in orthonormal frames;
/// semi-conformal iff the rows of B are mutually orthogonal with a common
/// strictly positive square norm Λ.
template <class T>
SemiConformalReport<T> semiconformal_matrix(const Mat<T>& a,
                                            const InnerProduct<T>& ip_dom,
                                            const InnerProduct<T>& ip_cod,
                                            const CheckOptions& opts = {}) {
    std::size_t m = a.rows, n = a.cols;
    detail::require(m == ip_cod.dim() && n == ip_dom.dim(),
                    "matrix shape does not match the inner products");
    if (m > n || rank(a, opts.tol) != m)
        throw RankDeficient("semi-conformal test needs full row rank m <= n");
    Mat<T> b = cholesky(ip_cod) * a * inverse(cholesky(ip_dom));

    std::vector<T> norm_sq;
    norm_sq.reserve(m);
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        T acc = zero;
        for (std::size_t k = 0; k < n; ++k) acc += b.at(i, k) * b.at(i, k);
        norm_sq.push_back(acc);
    }
    double scale = 1.0;
    for (const auto& nsq : norm_sq) scale = std::max(scale, max_abs(nsq));

    T worst = zero;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            T dot = zero;
            for (std::size_t k = 0; k < n; ++k) dot += b.at(i, k) * b.at(j, k);
            worst = std::max(worst, abs_val(dot));
            T nd = abs_val(norm_sq[i] - norm_sq[j]);
            worst = std::max(worst, nd);
        }
    if (m == 1) worst = zero;

    SemiConformalReport<T> rep;
    rep.worst_defect = worst;
    bool ok = is_negligible(worst, opts.tol, scale);
    if (ok) {
        rep.is_semiconformal = true;
        rep.dilation = norm_sq[0];
    }
    return rep;
}

} // namespace jetgeo
