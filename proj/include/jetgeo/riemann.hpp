#pragma once

/**
 * @file riemann.hpp
 * @brief Metrics, the connection bilinear form, second-order exp/log,
 *        mirror images, the Laplacian, and harmonic 2-jets.
 *
 * All derivatives of metric entries come from evaluating their expressions
 * on jet arguments; there are no finite differences anywhere. Every
 * operation is generic over the coordinate ring, so the same formulas run
 * on scalar points, Laplace-algebra points, and nested first-order jets.
 */

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "jetgeo/expr.hpp"
#include "jetgeo/innerprod.hpp"

namespace jetgeo {

/// Positive-definiteness witness by Sylvester's criterion; square-root free,
/// so it accepts every SPD rational matrix.
template <class T>
void require_spd(const Mat<T>& g, const char* where) {
    detail::require(g.rows == g.cols, "gram must be square");
    for (std::size_t k = 1; k <= g.rows; ++k) {
        Mat<T> lead = Mat<T>::zero(k, k, g.at(0, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead.at(i, j) = g.at(i, j);
        T d = det(lead);
        bool pos;
        if constexpr (std::is_same_v<T, Rational>) pos = d.sign() > 0;
        else pos = d > 0.0;
        if (!pos)
            throw NotPositiveDefinite(std::string(where) +
                                      ": gram matrix is not positive definite");
    }
}

template <class T>
class Metric {
public:
    Metric(std::vector<std::string> coords, std::vector<Ast> upper_entries)
        : coords_(std::move(coords)), entries_(std::move(upper_entries)) {
        std::size_t n = coords_.size();
        detail::require(n >= 1, "metric needs at least one coordinate");
        detail::require(entries_.size() == n * (n + 1) / 2,
                        "metric needs n(n+1)/2 upper-triangle entries");
    }

    /// Entries given as expression strings over the coordinate names,
    /// upper triangle in row-major order: g11, g12, ..., g1n, g22, ...
    static Metric from_strings(std::vector<std::string> coords,
                               const std::vector<std::string>& upper) {
        std::vector<Ast> asts;
        asts.reserve(upper.size());
        for (const auto& s : upper) asts.push_back(parse(s, coords));
        return Metric(std::move(coords), std::move(asts));
    }

    std::size_t dim() const { return coords_.size(); }
    const std::vector<std::string>& coords() const { return coords_; }

    const Ast& entry(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        // index of (i,j), i<=j, in the row-major upper triangle
        std::size_t n = dim();
        return entries_[i * n - i * (i + 1) / 2 + j];
    }

    /// Gram matrix at a point with coordinates in any algebra A.
    template <class A>
    Mat<A> gram_at(const std::vector<A>& pt) const {
        detail::require(pt.size() == dim(), "point dimension mismatch");
        Mat<A> g = Mat<A>::zero(dim(), dim(), zero_like(pt.front()));
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i; j < dim(); ++j) {
                A v = eval(entry(i, j), pt);
                g.at(i, j) = v;
                g.at(j, i) = v;
            }
        return g;
    }

    InnerProduct<T> inner_product_at(const std::vector<T>& x) const {
        Mat<T> g = gram_at(x);
        require_spd(g, "metric");
        return InnerProduct<T>(std::move(g));
    }

private:
    std::vector<std::string> coords_;
    std::vector<Ast> entries_;
};

enum class GammaSign { Standard, Flipped };

/// Christoffel data at a base point with coordinates in E (a scalar for
/// ordinary points, a jet algebra for nilpotent-coordinate points).
/// sym stores the classical symbols; the signed connection form is
/// Γ_p(x; u, v) = −Σ Γᵏᵢⱼ uⁱ vʲ under the Standard sign.
template <class E>
struct Gamma {
    std::vector<E> base;
    std::vector<E> sym; // k * n² + i * n + j, symmetric in (i, j)
    GammaSign sign = GammaSign::Standard;

    std::size_t dim() const { return base.size(); }
    const E& s(std::size_t k, std::size_t i, std::size_t j) const {
        return sym[(k * dim() + i) * dim() + j];
    }
    E& s(std::size_t k, std::size_t i, std::size_t j) {
        return sym[(k * dim() + i) * dim() + j];
    }

    static Gamma flat(std::vector<E> base_pt) {
        Gamma g;
        std::size_t n = base_pt.size();
        g.base = std::move(base_pt);
        g.sym.assign(n * n * n, zero_like(g.base.front()));
        return g;
    }

    /// The signed connection form on tangent vectors over any algebra A
    /// extending E's scalars.
    template <class A>
    std::vector<A> connection_form(const std::vector<A>& u, const std::vector<A>& v) const {
        std::size_t n = dim();
        detail::require(u.size() == n && v.size() == n, "tangent dimension mismatch");
        std::vector<A> w(n, zero_like(u.front()));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    w[k] += embed_in(u.front(), s(k, i, j)) * u[i] * v[j];
        if (sign == GammaSign::Standard)
            for (auto& c : w) c = -c;
        return w;
    }

    /// Base point carried into the algebra A.
    template <class A>
    std::vector<A> base_in(const A& proto) const {
        if constexpr (std::is_same_v<E, A>) {
            (void)proto;
            return base;
        } else {
            std::vector<A> r;
            r.reserve(base.size());
            for (const auto& b : base) r.push_back(embed_in(proto, b));
            return r;
        }
    }

private:
    template <class A>
    static A embed_in(const A& proto, const E& e) {
        if constexpr (std::is_same_v<E, A>) {
            (void)proto;
            return e;
        } else {
            return embed_scalar(proto, e);
        }
    }
};

/// Γᵏᵢⱼ = ½ Σ_l gᵏˡ (∂ᵢ g_jl + ∂ⱼ g_il − ∂_l g_ij), every partial obtained
/// by first-order jet evaluation of the metric entries at z.
template <class T, class R>
Gamma<R> christoffel_at(const Metric<T>& g, const std::vector<R>& z,
                        GammaSign sign = GammaSign::Standard) {
    std::size_t n = g.dim();
    detail::require(z.size() == n, "point dimension mismatch");
    std::vector<Jet1<R>> env;
    env.reserve(n);
    for (std::size_t i = 0; i < n; ++i) env.push_back(Jet1<R>::variable(n, i, z[i]));
    Mat<Jet1<R>> g1 = g.gram_at(env);

    Mat<R> gv = Mat<R>::zero(n, n, z.front());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gv.at(i, j) = g1.at(i, j).value;
    if constexpr (std::is_same_v<R, base_scalar_t<R>>) require_spd(gv, "christoffel");
    Mat<R> ginv = inverse(gv);

    Gamma<R> out;
    out.base = z;
    out.sign = sign;
    out.sym.assign(n * n * n, zero_like(z.front()));
    Rational half(1, 2);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                R acc = zero_like(z.front());
                for (std::size_t l = 0; l < n; ++l) {
                    R bracket = g1.at(j, l).grad[i] + g1.at(i, l).grad[j] -
                                g1.at(i, j).grad[l];
                    acc += ginv.at(k, l) * bracket;
                }
                acc = scale_by(acc, half);
                out.s(k, i, j) = acc;
                out.s(k, j, i) = acc;
            }
    return out;
}

/// ∇(x, y, z) = y − x + z + Γ(x; y−x, z−x).
template <class E, class A>
std::vector<A> nabla(const Gamma<E>& gd, const std::vector<A>& y,
                     const std::vector<A>& z) {
    std::vector<A> x = gd.base_in(y.front());
    std::vector<A> dy = vec_sub(y, x);
    std::vector<A> dz = vec_sub(z, x);
    std::vector<A> w = gd.connection_form(dy, dz);
    std::vector<A> r = vec_add(vec_sub(y, x), z);
    return vec_add(r, w);
}

/// exp_x(u) = x + u + ½ Γ(x; u, u); u must have zero value-components.
template <class E, class A>
std::vector<A> exp2(const Gamma<E>& gd, const std::vector<A>& u) {
    for (const auto& c : u)
        if (!base_value_zero(c))
            throw DomainError("exp needs a tangent vector with zero value part");
    std::vector<A> x = gd.base_in(u.front());
    std::vector<A> w = gd.connection_form(u, u);
    for (auto& c : w) c = scale_by(c, Rational(1, 2));
    return vec_add(vec_add(x, u), w);
}

/// log_x(x + u) = u − ½ Γ(x; u, u); the displacement must be nilpotent.
template <class E, class A>
std::vector<A> log2(const Gamma<E>& gd, const std::vector<A>& z) {
    std::vector<A> x = gd.base_in(z.front());
    detail::require(z.size() == x.size(), "point dimension mismatch");
    std::vector<A> u = vec_sub(z, x);
    for (const auto& c : u)
        if (!base_value_zero(c))
            throw DomainError("log needs a nilpotent displacement from the base point");
    std::vector<A> w = gd.connection_form(u, u);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = u[i] - scale_by(w[i], Rational(1, 2));
    return u;
}

/// z′ = exp_x(−log_x(z)); closed form x − u + Γ(x; u, u).
template <class E, class A>
std::vector<A> mirror(const Gamma<E>& gd, const std::vector<A>& z) {
    return exp2(gd, vec_neg(log2(gd, z)));
}

/// σ-coefficient of f(z) + f(z′) − 2 f(x) over the generic L-probe, with
/// z = exp_x(probe). The value- and gradient-components of the defect must
/// vanish; a violation is a broken internal identity, not a data error.
/// For n = 1 the Laplace algebra is the full second neighbourhood, every
/// vector is L-small, and the unnormalized generator replaces the probe.
template <class T, class Fn>
T mirror_defect_coefficient(const Metric<T>& g, const std::vector<T>& x, Fn&& f,
                            const CheckOptions& opts = {}) {
    std::size_t n = g.dim();
    detail::require(x.size() == n, "point dimension mismatch");
    T fx = f(x);
    if (n == 1) {
        Mat<T> gv = g.gram_at(x);
        require_spd(gv, "laplacian");
        Gamma<T> gd = christoffel_at(g, x);
        T zero = ScalarTraits<T>::from_rational(Rational(0));
        std::vector<Jet2<T>> u{Jet2<T>::variable(1, 0, zero)};
        std::vector<Jet2<T>> z = exp2(gd, u);
        std::vector<Jet2<T>> z2 = mirror(gd, z);
        Jet2<T> fz = f(z);
        Jet2<T> fz2 = f(z2);
        Jet2<T> defect = fz + fz2;
        defect.value = defect.value - fx - fx;
        double scale = 1.0 + max_abs(fz) + max_abs(fz2);
        if (!is_negligible(defect.value, opts.tol, scale) ||
            !is_negligible(defect.grad[0], opts.tol, scale))
            throw CrossCheckError("mirror defect has a nonzero value or gradient part");
        T sigma_coef = defect.h(0, 0) * ScalarTraits<T>::from_rational(Rational(1, 2));
        return sigma_coef * recip(gv.at(0, 0));
    }
    InnerProduct<T> ip = g.inner_product_at(x);
    std::vector<Lap<T>> u = lsmall_probe(ip);
    Gamma<T> gd = christoffel_at(g, x);
    std::vector<Lap<T>> z = exp2(gd, u);
    std::vector<Lap<T>> z2 = mirror(gd, z);
    Lap<T> fz = f(z);
    Lap<T> fz2 = f(z2);
    Lap<T> defect = fz + fz2;
    defect.value = defect.value - fx - fx;
    double scale = 1.0 + max_abs(fz) + max_abs(fz2);
    if (!is_negligible(defect.value, opts.tol, scale))
        throw CrossCheckError("mirror defect has a nonzero value part");
    for (const auto& c : defect.grad)
        if (!is_negligible(c, opts.tol, scale))
            throw CrossCheckError("mirror defect has a nonzero gradient part");
    return defect.sigma;
}

/// Δf(x): the σ-coefficient of f(z) + f(z′) − 2 f(x) over the L-probe.
/// With g(x, z) = <probe, probe> = n·σ this matches the defining relation
/// f(z) + f(z′) − 2 f(x) = (Δf(x)/n)·g(x, z).
template <class T>
T laplacian(const Ast& f, const Metric<T>& g, const std::vector<T>& x,
            const CheckOptions& opts = {}) {
    return mirror_defect_coefficient(
        g, x, [&](const auto& env) { return eval(f, env); }, opts);
}

/// Independent oracle: (1/√det g)·Σᵢ ∂ᵢ(√det g · gⁱʲ ∂ⱼ f), computed
/// square-root free via ∂ᵢ(√d)/√d = ½ ∂ᵢd/d so that rational metrics stay
/// exact. All ingredients are jet evaluations:
///   - the metric at a Jet1 point gives det g and its gradient,
///   - f at a Jet2 point gives ∂ⱼf together with the gradient of ∂ⱼf,
///   - Wⁱ = Σⱼ gⁱʲ ∂ⱼf is assembled in the Jet1 ring, so ∂ᵢWⁱ is exact.
template <class T>
T laplace_beltrami_oracle(const Ast& f, const Metric<T>& g, const std::vector<T>& x,
                          const CheckOptions& = {}) {
    std::size_t n = g.dim();
    detail::require(x.size() == n, "point dimension mismatch");
    std::vector<Jet1<T>> env1;
    std::vector<Jet2<T>> env2;
    for (std::size_t i = 0; i < n; ++i) {
        env1.push_back(Jet1<T>::variable(n, i, x[i]));
        env2.push_back(Jet2<T>::variable(n, i, x[i]));
    }
    Mat<Jet1<T>> g1 = g.gram_at(env1);
    {
        Mat<T> gv = Mat<T>::zero(n, n, x.front());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gv.at(i, j) = g1.at(i, j).value;
        require_spd(gv, "laplace-beltrami");
    }
    Jet1<T> d = det(g1);
    Mat<Jet1<T>> ginv = inverse(g1);
    Jet2<T> f2 = eval(f, env2);

    T acc = ScalarTraits<T>::from_rational(Rational(0));
    T half = ScalarTraits<T>::from_rational(Rational(1, 2));
    T dinv = recip(d.value);
    for (std::size_t i = 0; i < n; ++i) {
        Jet1<T> wi = Jet1<T>::constant(n, ScalarTraits<T>::from_rational(Rational(0)));
        for (std::size_t j = 0; j < n; ++j) {
            Jet1<T> dj_f(f2.grad[j], std::vector<T>(f2.hess.begin() + j * n,
                                                    f2.hess.begin() + (j + 1) * n));
            wi += ginv.at(i, j) * dj_f;
        }
        acc += wi.grad[i] + half * d.grad[i] * dinv * wi.value;
    }
    return acc;
}

/// A 2-jet at x as explicit (value, covector, symmetric form) data:
/// z ↦ value + p·(z−x) + ½ (z−x)ᵀ H (z−x).
template <class T>
struct Jet2Scalar {
    std::vector<T> base;
    T value;
    std::vector<T> p;
    Mat<T> form; // symmetric
    std::string label;

    std::size_t dim() const { return base.size(); }

    template <class A>
    A eval_on(const std::vector<A>& env) const {
        detail::require(env.size() == dim(), "jet evaluation dimension mismatch");
        A acc = embed_scalar(env.front(), value);
        std::vector<A> u = env;
        for (std::size_t i = 0; i < dim(); ++i)
            u[i] = u[i] - embed_scalar(env.front(), base[i]);
        for (std::size_t i = 0; i < dim(); ++i)
            acc += embed_scalar(env.front(), p[i]) * u[i];
        Rational half(1, 2);
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                acc += scale_by(embed_scalar(env.front(), form.at(i, j)) * u[i] * u[j], half);
        return acc;
    }

    double norm_scale() const {
        double m = max_abs(value);
        for (const auto& c : p) m = std::max(m, max_abs(c));
        for (const auto& c : form.a) m = std::max(m, max_abs(c));
        return m;
    }
};

template <class T>
struct HarmonicVerdict {
    bool harmonic = false;
    T certificate; // σ-coefficient of the mirror defect (zero iff harmonic)
};

/// Harmonic iff the σ-coefficient certificate of j(z) + j(z′) − 2 j(x)
/// vanishes; tolerance scales with the jet's coefficient norm.
template <class T>
HarmonicVerdict<T> is_harmonic_jet(const Jet2Scalar<T>& j, const Metric<T>& g,
                                   const std::vector<T>& x,
                                   const CheckOptions& opts = {}) {
    detail::require(j.dim() == g.dim(), "jet dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        detail::require(max_abs(j.base[i] - x[i]) == 0.0, "jet is not based at x");
    T c = mirror_defect_coefficient(
        g, x, [&](const auto& env) { return j.eval_on(env); }, opts);
    HarmonicVerdict<T> v;
    v.certificate = c;
    v.harmonic = is_negligible(c, opts.tol, 1.0 + j.norm_scale());
    return v;
}

/// The constant jet, the n affine jets p∘log_x with p the dual basis of the
/// Cholesky orthonormal frame, and the n(n+1)/2 − 1 trace-zero quadratic
/// jets q∘log_x, each expanded into explicit (value, covector, form) data.
template <class T>
std::vector<Jet2Scalar<T>> harmonic_jet_basis(const Metric<T>& g,
                                              const std::vector<T>& x) {
    std::size_t n = g.dim();
    detail::require(x.size() == n, "point dimension mismatch");
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    T one = ScalarTraits<T>::from_rational(Rational(1));
    InnerProduct<T> ip = g.inner_product_at(x);
    Mat<T> s = cholesky(ip);
    Gamma<T> gd = christoffel_at(g, x);

    std::vector<Jet2Scalar<T>> out;
    Jet2Scalar<T> cst{x, one, std::vector<T>(n, zero), Mat<T>::zero(n, n, zero),
                      "constant"};
    out.push_back(std::move(cst));

    // p∘log_x(z) = Σ p_k u_k − ½ Σ p_k Γ_p(x; u, u)_k; the quadratic part
    // written as ½ uᵀHu gives H_ij = −Σ p_k Γ_p(e_i, e_j)_k.
    std::vector<std::vector<T>> unit(n, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < n; ++i) unit[i][i] = one;
    for (std::size_t a = 0; a < n; ++a) {
        Jet2Scalar<T> j;
        j.base = x;
        j.value = zero;
        j.p.assign(n, zero);
        for (std::size_t k = 0; k < n; ++k) j.p[k] = s.at(a, k);
        j.form = Mat<T>::zero(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = i; jj < n; ++jj) {
                std::vector<T> w = gd.connection_form(unit[i], unit[jj]);
                T h = zero;
                for (std::size_t k = 0; k < n; ++k) h = h - j.p[k] * w[k];
                j.form.at(i, jj) = h;
                j.form.at(jj, i) = h;
            }
        j.label = "affine s" + std::to_string(a + 1);
        out.push_back(std::move(j));
    }

    // q∘log_x(z) = (S·log u)ᵀ C (S·log u); only the degree-2 part survives
    // in the second neighbourhood, so the form is 2 SᵀCS.
    if (n >= 2) {
        auto cs = tracezero_selfadjoint_basis<T>(n);
        std::size_t off_pairs = n * (n - 1) / 2;
        for (std::size_t idx = 0; idx < cs.size(); ++idx) {
            Jet2Scalar<T> j;
            j.base = x;
            j.value = zero;
            j.p.assign(n, zero);
            Mat<T> m = transpose(s) * cs[idx] * s;
            j.form = m + m; // 2 SᵀCS
            if (idx < off_pairs) {
                j.label = "tracezero sym(" + std::to_string(idx) + ")";
            } else {
                std::size_t i = idx - off_pairs;
                j.label = "tracezero diag(e" + std::to_string(i + 1) + "-e" +
                          std::to_string(i + 2) + ")";
            }
            out.push_back(std::move(j));
        }
    }
    return out;
}

/// The defining property of the connection: transport preserves the metric.
/// With y = x+a, z = x+b, w = x+c for three independent first-order
/// displacements, G(y; ∇(x,y,z)−y, ∇(x,y,w)−y) = G(x; b, c) exactly.
/// A flipped Γ sign must break this on a curved metric.
template <class T>
bool verify_levicivita(const Metric<T>& g, const std::vector<T>& x,
                       GammaSign sign = GammaSign::Standard,
                       const CheckOptions& opts = {}) {
    std::size_t n = g.dim();
    detail::require(x.size() == n, "point dimension mismatch");
    using J1 = Jet1<T>;
    using J2 = Jet1<J1>;
    using J3 = Jet1<J2>;
    T z0 = ScalarTraits<T>::from_rational(Rational(0));
    J1 z1 = J1::constant(n, z0);
    J2 z2 = J2::constant(n, z1);
    J3 z3 = J3::constant(n, z2);

    auto level1 = [&](std::size_t i) {
        J3 r = z3;
        r.grad[i] = one_like(z2);
        return r;
    };
    auto level2 = [&](std::size_t i) {
        J3 r = z3;
        r.value.grad[i] = one_like(z1);
        return r;
    };
    auto level3 = [&](std::size_t i) {
        J3 r = z3;
        r.value.value.grad[i] = one_like(z0);
        return r;
    };

    std::vector<J3> y, z, w, b, c;
    for (std::size_t i = 0; i < n; ++i) {
        J3 xe = embed_scalar(z3, x[i]);
        y.push_back(xe + level1(i));
        z.push_back(xe + level2(i));
        w.push_back(xe + level3(i));
        b.push_back(level2(i));
        c.push_back(level3(i));
    }

    Gamma<T> gd = christoffel_at(g, x, sign);
    std::vector<J3> nz = nabla(gd, y, z);
    std::vector<J3> nw = nabla(gd, y, w);
    std::vector<J3> dz = vec_sub(nz, y);
    std::vector<J3> dw = vec_sub(nw, y);

    Mat<J3> gram_y = g.gram_at(y);
    J3 lhs = z3;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lhs += gram_y.at(i, j) * dz[i] * dw[j];

    Mat<T> gram_x = g.gram_at(x);
    J3 rhs = z3;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rhs += embed_scalar(z3, gram_x.at(i, j)) * b[i] * c[j];

    double scale = std::max(max_abs(lhs), max_abs(rhs));
    return is_negligible(lhs - rhs, opts.tol, scale);
}

/// Symbolic evidence that the L-neighbour relation is symmetric: with
/// z = exp_x(probe), the vector log_z(x), with Γ and the gram evaluated at
/// the nilpotent-coordinate point z, satisfies the L-smallness identity
/// for the inner product G(z). Evidence, not a proof.
template <class T>
bool lneighbour_symmetry_evidence(const Metric<T>& g, const std::vector<T>& x,
                                  const CheckOptions& opts = {}) {
    std::size_t n = g.dim();
    detail::require(n >= 2, "symmetry evidence needs dimension >= 2");
    InnerProduct<T> ip = g.inner_product_at(x);
    std::vector<Lap<T>> u = lsmall_probe(ip);
    Gamma<T> gd = christoffel_at(g, x);
    std::vector<Lap<T>> z = exp2(gd, u);

    Gamma<Lap<T>> gz = christoffel_at(g, z);
    std::vector<Lap<T>> xe;
    for (std::size_t i = 0; i < n; ++i) xe.push_back(embed_scalar(z.front(), x[i]));
    std::vector<Lap<T>> w = log2(gz, xe);

    Mat<Lap<T>> gram_z = g.gram_at(z);
    Lap<T> ww = zero_like(w.front());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ww += gram_z.at(i, j) * w[i] * w[j];

    Rational inv_n(1, static_cast<long>(n));
    double scale = 1.0 + max_abs(ww);
    for (std::size_t i = 0; i < n; ++i) {
        Lap<T> wi = zero_like(w.front());
        for (std::size_t a = 0; a < n; ++a) wi += gram_z.at(a, i) * w[a];
        for (std::size_t j = 0; j < n; ++j) {
            Lap<T> wj = zero_like(w.front());
            for (std::size_t a = 0; a < n; ++a) wj += gram_z.at(a, j) * w[a];
            Lap<T> lhs = wi * wj;
            Lap<T> rhs = scale_by(ww, inv_n) * gram_z.at(i, j);
            if (!is_negligible(lhs - rhs, opts.tol, scale)) return false;
        }
    }
    return true;
}

} // namespace jetgeo
