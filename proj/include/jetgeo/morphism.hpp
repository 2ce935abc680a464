#pragma once

/**
 * @file morphism.hpp
 * @brief Smooth maps between Riemannian charts: differentials,
 *        semi-conformality, tension, harmonic morphisms, and the
 *        Fuglede–Ishihara cross-check.
 *
 * Every analytic verdict is computed twice, by structurally different
 * routes, and a disagreement raises CrossCheckError: semi-conformality via
 * the matrix test and via pushing the L-probe through log∘φ∘exp; tension
 * via the mirror defect and via the classical Christoffel formula.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetgeo/riemann.hpp"

namespace jetgeo {

template <class T>
class SmoothMap {
public:
    SmoothMap(std::vector<std::string> coords, std::vector<Ast> components)
        : coords_(std::move(coords)), components_(std::move(components)) {
        detail::require(!coords_.empty(), "map needs at least one domain coordinate");
        detail::require(!components_.empty(), "map needs at least one component");
    }

    static SmoothMap from_strings(std::vector<std::string> coords,
                                  const std::vector<std::string>& comps) {
        std::vector<Ast> asts;
        asts.reserve(comps.size());
        for (const auto& c : comps) asts.push_back(parse(c, coords));
        return SmoothMap(std::move(coords), std::move(asts));
    }

    std::size_t domain_dim() const { return coords_.size(); }
    std::size_t codomain_dim() const { return components_.size(); }
    const std::vector<std::string>& coords() const { return coords_; }
    const Ast& component(std::size_t i) const { return components_[i]; }

    template <class A>
    std::vector<A> apply(const std::vector<A>& pt) const {
        detail::require(pt.size() == domain_dim(), "point dimension mismatch");
        std::vector<A> out;
        out.reserve(codomain_dim());
        for (const auto& c : components_) out.push_back(eval(c, pt));
        return out;
    }

private:
    std::vector<std::string> coords_;
    std::vector<Ast> components_;
};

/// Full second-order data of φ at x: value, differential, and one Hessian
/// per component, all from a single Jet2 evaluation sweep.
template <class T>
struct MapJet2 {
    std::vector<T> value;     // φ(x), length m
    Mat<T> dphi;              // m×n
    std::vector<Mat<T>> hess; // m matrices, n×n
};

template <class T>
MapJet2<T> map_jet2(const SmoothMap<T>& phi, const std::vector<T>& x) {
    std::size_t n = phi.domain_dim(), m = phi.codomain_dim();
    detail::require(x.size() == n, "point dimension mismatch");
    std::vector<Jet2<T>> env;
    env.reserve(n);
    for (std::size_t i = 0; i < n; ++i) env.push_back(Jet2<T>::variable(n, i, x[i]));
    MapJet2<T> out;
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    out.dphi = Mat<T>::zero(m, n, zero);
    for (std::size_t c = 0; c < m; ++c) {
        Jet2<T> j = eval(phi.component(c), env);
        out.value.push_back(j.value);
        for (std::size_t i = 0; i < n; ++i) out.dphi.at(c, i) = j.grad[i];
        Mat<T> h = Mat<T>::zero(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = 0; jj < n; ++jj) h.at(i, jj) = j.h(i, jj);
        out.hess.push_back(std::move(h));
    }
    return out;
}

/// Row i = gradient of component i, by first-order jet evaluation.
template <class T>
Mat<T> differential(const SmoothMap<T>& phi, const std::vector<T>& x) {
    std::size_t n = phi.domain_dim(), m = phi.codomain_dim();
    detail::require(x.size() == n, "point dimension mismatch");
    std::vector<Jet1<T>> env;
    env.reserve(n);
    for (std::size_t i = 0; i < n; ++i) env.push_back(Jet1<T>::variable(n, i, x[i]));
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    Mat<T> d = Mat<T>::zero(m, n, zero);
    for (std::size_t c = 0; c < m; ++c) {
        Jet1<T> j = eval(phi.component(c), env);
        for (std::size_t i = 0; i < n; ++i) d.at(c, i) = j.grad[i];
    }
    return d;
}

/// Probe route of the semi-conformality criterion: push the domain L-probe
/// through f = log_{φ(x)} ∘ φ ∘ exp_x and test L-smallness in the codomain.
/// `quad` optionally adds a quadratic map B(u,u) per component to f, which
/// must never change the verdict.
template <class T>
bool probe_route_preserves_lsmall(const SmoothMap<T>& phi, const Metric<T>& g,
                                  const Metric<T>& h, const std::vector<T>& x,
                                  const std::vector<Mat<T>>* quad = nullptr,
                                  const CheckOptions& opts = {}) {
    std::size_t n = phi.domain_dim(), m = phi.codomain_dim();
    detail::require(n >= 2, "probe route needs domain dimension >= 2");
    InnerProduct<T> ip_dom = g.inner_product_at(x);
    std::vector<T> phix = phi.apply(x);
    InnerProduct<T> ip_cod = h.inner_product_at(phix);

    std::vector<Lap<T>> u = lsmall_probe(ip_dom);
    Gamma<T> gd_g = christoffel_at(g, x);
    std::vector<Lap<T>> z = exp2(gd_g, u);
    std::vector<Lap<T>> phiz = phi.apply(z);
    Gamma<T> gd_h = christoffel_at(h, phix);
    std::vector<Lap<T>> w = log2(gd_h, phiz);
    if (quad) {
        detail::require(quad->size() == m, "one quadratic perturbation per component");
        for (std::size_t c = 0; c < m; ++c) {
            const Mat<T>& b = (*quad)[c];
            detail::require(b.rows == n && b.cols == n, "perturbation shape mismatch");
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    w[c] += embed_scalar(w[c], b.at(i, j)) * u[i] * u[j];
        }
    }
    return is_lsmall(w, ip_cod, opts);
}

/// Semi-conformality of dφ_x between G(x) and H(φ(x)). In exact mode the
/// probe route runs as well and must agree with the matrix route.
template <class T>
SemiConformalReport<T> is_semiconformal_at(const SmoothMap<T>& phi, const Metric<T>& g,
                                           const Metric<T>& h, const std::vector<T>& x,
                                           const CheckOptions& opts = {}) {
    Mat<T> d = differential(phi, x);
    InnerProduct<T> ip_dom = g.inner_product_at(x);
    std::vector<T> phix = phi.apply(x);
    InnerProduct<T> ip_cod = h.inner_product_at(phix);
    SemiConformalReport<T> rep = semiconformal_matrix(d, ip_dom, ip_cod, opts);
    if (ScalarTraits<T>::exact && phi.domain_dim() >= 2) {
        bool probe = probe_route_preserves_lsmall<T>(phi, g, h, x, nullptr, opts);
        if (probe != rep.is_semiconformal)
            throw CrossCheckError("semi-conformal matrix and probe routes disagree");
    }
    return rep;
}

/// Classical tension field in coordinates:
/// τᵞ = Σᵢⱼ gⁱʲ (∂ᵢ∂ⱼφᵞ − Σₖ Γᵏᵢⱼ ∂ₖφᵞ + Σ_{αβ} Γᵞ_{αβ} ∂ᵢφᵅ ∂ⱼφᵝ).
template <class T>
std::vector<T> tension_classical(const SmoothMap<T>& phi, const Metric<T>& g,
                                 const Metric<T>& h, const std::vector<T>& x) {
    std::size_t n = phi.domain_dim(), m = phi.codomain_dim();
    MapJet2<T> mj = map_jet2(phi, x);
    Mat<T> gram = g.gram_at(x);
    require_spd(gram, "tension");
    Mat<T> ginv = inverse(gram);
    Gamma<T> gd_g = christoffel_at(g, x);
    Gamma<T> gd_h = christoffel_at(h, mj.value);

    T zero = ScalarTraits<T>::from_rational(Rational(0));
    std::vector<T> tau(m, zero);
    for (std::size_t c = 0; c < m; ++c) {
        T acc = zero;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                T term = mj.hess[c].at(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    term = term - gd_g.s(k, i, j) * mj.dphi.at(c, k);
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < m; ++b)
                        term += gd_h.s(c, a, b) * mj.dphi.at(a, i) * mj.dphi.at(b, j);
                acc += ginv.at(i, j) * term;
            }
        tau[c] = acc;
    }
    return tau;
}

namespace detail {

// Shared mirror-defect core over an arbitrary second-order coordinate ring.
template <class T, class A>
std::vector<A> harmonic_defect(const SmoothMap<T>& phi, const Gamma<T>& gd_g,
                               const Gamma<T>& gd_h, const std::vector<A>& u) {
    std::vector<A> z = exp2(gd_g, u);
    std::vector<A> z2 = mirror(gd_g, z);
    std::vector<A> phiz = phi.apply(z);
    std::vector<A> phiz2 = phi.apply(z2);
    std::vector<A> mphiz = mirror(gd_h, phiz);
    return vec_sub(phiz2, mphiz);
}

} // namespace detail

/// Tension by the mirror route: the σ-coefficient vector of
/// E = φ(z′) − mirror_{h,φ(x)}(φ(z)) over the L-probe. Cross-validated
/// against the classical formula; the proportionality constant between the
/// two routes is exactly 1 (pinned by the flat case, where both reduce to
/// the gram-traced Hessian).
template <class T>
std::vector<T> tension(const SmoothMap<T>& phi, const Metric<T>& g, const Metric<T>& h,
                       const std::vector<T>& x, const CheckOptions& opts = {}) {
    std::size_t n = phi.domain_dim(), m = phi.codomain_dim();
    detail::require(x.size() == n, "point dimension mismatch");
    std::vector<T> phix = phi.apply(x);
    Gamma<T> gd_g = christoffel_at(g, x);
    Gamma<T> gd_h = christoffel_at(h, phix);

    std::vector<T> sigma;
    double scale = 1.0;
    if (n >= 2) {
        InnerProduct<T> ip_dom = g.inner_product_at(x);
        std::vector<Lap<T>> u = lsmall_probe(ip_dom);
        std::vector<Lap<T>> e = detail::harmonic_defect(phi, gd_g, gd_h, u);
        for (const auto& c : e) scale = std::max(scale, max_abs(c));
        for (std::size_t c = 0; c < m; ++c) {
            if (!is_negligible(e[c].value, opts.tol, scale))
                throw CrossCheckError("tension defect has a nonzero value part");
            for (const auto& gr : e[c].grad)
                if (!is_negligible(gr, opts.tol, scale))
                    throw CrossCheckError("tension defect has a nonzero gradient part");
            sigma.push_back(e[c].sigma);
        }
    } else {
        Mat<T> gv = g.gram_at(x);
        require_spd(gv, "tension");
        T zero = ScalarTraits<T>::from_rational(Rational(0));
        std::vector<Jet2<T>> u{Jet2<T>::variable(1, 0, zero)};
        std::vector<Jet2<T>> e = detail::harmonic_defect(phi, gd_g, gd_h, u);
        T ginv00 = recip(gv.at(0, 0));
        T half = ScalarTraits<T>::from_rational(Rational(1, 2));
        for (const auto& c : e) scale = std::max(scale, max_abs(c));
        for (std::size_t c = 0; c < m; ++c) {
            if (!is_negligible(e[c].value, opts.tol, scale) ||
                !is_negligible(e[c].grad[0], opts.tol, scale))
                throw CrossCheckError("tension defect has a nonzero low-order part");
            sigma.push_back(e[c].h(0, 0) * half * ginv00);
        }
    }

    std::vector<T> classical = tension_classical(phi, g, h, x);
    MapJet2<T> mj = map_jet2(phi, x);
    double jscale = 1.0 + max_abs_mat(mj.dphi);
    for (const auto& hm : mj.hess) jscale += max_abs_mat(hm);
    for (std::size_t c = 0; c < m; ++c)
        if (!is_negligible(sigma[c] - classical[c], opts.tol,
                           std::max(scale, jscale)))
            throw CrossCheckError("mirror-defect and classical tension disagree");
    return sigma;
}

template <class T>
struct FIReport {
    bool direct = false;
    bool jet_pullback = false;
    std::optional<std::string> failing_jet;
};

template <class T>
struct PointReport {
    std::vector<T> point;
    Mat<T> dphi;
    SemiConformalReport<T> semiconformal;
    std::vector<T> tension_vector;
    bool harmonic = false;
    bool harmonic_morphism = false;
    std::optional<FIReport<T>> fi;
};

/// Exact 2-jet chain rule: value f∘φ(x); covector dφᵀp; form
/// dφᵀHdφ + Σᵧ pᵧ Hess φᵞ. No re-evaluation of expressions, so abstract
/// jets with no closed-form extension pull back too.
template <class T>
Jet2Scalar<T> pullback_jet(const MapJet2<T>& mj, const Jet2Scalar<T>& jc,
                           const std::vector<T>& x) {
    std::size_t n = mj.dphi.cols, m = mj.dphi.rows;
    detail::require(jc.dim() == m, "jet dimension mismatch");
    for (std::size_t c = 0; c < m; ++c)
        detail::require(max_abs(jc.base[c] - mj.value[c]) == 0.0,
                        "jet must be based at the image point");
    Jet2Scalar<T> out;
    out.base = x;
    out.value = jc.value;
    T zero = ScalarTraits<T>::from_rational(Rational(0));
    out.p.assign(n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < m; ++c)
            out.p[i] += jc.p[c] * mj.dphi.at(c, i);
    out.form = transpose(mj.dphi) * jc.form * mj.dphi;
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out.form.at(i, j) += jc.p[c] * mj.hess[c].at(i, j);
    out.label = "pullback of " + (jc.label.empty() ? "jet" : jc.label);
    return out;
}

template <class T>
struct JetPullbackResult {
    bool all_harmonic = true;
    std::optional<std::string> failing_jet;
    std::optional<T> failing_certificate;
};

/// Pull every member of the codomain harmonic jet basis at φ(x) back
/// through φ's 2-jet and check harmonicity at x.
template <class T>
JetPullbackResult<T> jet_pullback_check(const SmoothMap<T>& phi, const Metric<T>& g,
                                        const Metric<T>& h, const std::vector<T>& x,
                                        const CheckOptions& opts = {}) {
    MapJet2<T> mj = map_jet2(phi, x);
    std::vector<Jet2Scalar<T>> basis = harmonic_jet_basis(h, mj.value);
    JetPullbackResult<T> out;
    for (const auto& jc : basis) {
        Jet2Scalar<T> pb = pullback_jet(mj, jc, x);
        HarmonicVerdict<T> v = is_harmonic_jet(pb, g, x, opts);
        if (!v.harmonic) {
            out.all_harmonic = false;
            if (!out.failing_jet) {
                out.failing_jet = jc.label;
                out.failing_certificate = v.certificate;
            }
        }
    }
    return out;
}

template <class T>
PointReport<T> check_point(const SmoothMap<T>& phi, const Metric<T>& g,
                           const Metric<T>& h, const std::vector<T>& x,
                           const CheckOptions& opts = {}, bool run_fi = false) {
    PointReport<T> rep;
    rep.point = x;
    rep.dphi = differential(phi, x);
    rep.semiconformal = is_semiconformal_at(phi, g, h, x, opts);
    rep.tension_vector = tension(phi, g, h, x, opts);

    MapJet2<T> mj = map_jet2(phi, x);
    double jscale = 1.0 + max_abs_mat(mj.dphi);
    for (const auto& hm : mj.hess) jscale += max_abs_mat(hm);
    rep.harmonic = true;
    for (const auto& t : rep.tension_vector)
        if (!is_negligible(t, opts.tol, jscale)) rep.harmonic = false;
    rep.harmonic_morphism = rep.harmonic && rep.semiconformal.is_semiconformal;

    if (run_fi) {
        JetPullbackResult<T> jp = jet_pullback_check(phi, g, h, x, opts);
        FIReport<T> fi;
        fi.direct = rep.harmonic_morphism;
        fi.jet_pullback = jp.all_harmonic;
        fi.failing_jet = jp.failing_jet;
        rep.fi = fi;
    }
    return rep;
}

/// The two verdicts of the Fuglede–Ishihara equivalence side by side:
/// direct (harmonic and semi-conformal) and jet-pullback (every harmonic
/// 2-jet at φ(x) pulls back to a harmonic 2-jet at x).
template <class T>
FIReport<T> fuglede_ishihara_check(const SmoothMap<T>& phi, const Metric<T>& g,
                                   const Metric<T>& h, const std::vector<T>& x,
                                   const CheckOptions& opts = {}) {
    PointReport<T> rep = check_point(phi, g, h, x, opts, true);
    return *rep.fi;
}

} // namespace jetgeo
