#include "jetgeo/verify.hpp"

#include <random>
#include <sstream>
#include <utility>

#include "jetgeo/corpus.hpp"
#include "jetgeo/morphism.hpp"

namespace jetgeo {
namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long below(long n) {
        return std::uniform_int_distribution<long>(0, n - 1)(eng);
    }
    Rational small() { return Rational(below(9) - 4, below(3) + 1); }
    Rational nonzero() {
        Rational q = small();
        while (q.is_zero()) q = small();
        return q;
    }
};

template <class T>
T sc(const Rational& q) {
    return ScalarTraits<T>::from_rational(q);
}

template <class T>
std::vector<T> pt(const std::vector<Rational>& qs) {
    std::vector<T> out;
    out.reserve(qs.size());
    for (const auto& q : qs) out.push_back(sc<T>(q));
    return out;
}

/// Upper-triangular with positive diagonal, so transpose(s)*s is an SPD Gram
/// whose Cholesky factor is rational by construction.
template <class T>
Mat<T> random_chol_factor(Rng& rng, std::size_t n) {
    static const Rational diags[] = {Rational(1), Rational(2), Rational(1, 2),
                                     Rational(3, 2), Rational(3)};
    Mat<T> s = Mat<T>::zero(n, n, sc<T>(Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        s.at(i, i) = sc<T>(diags[rng.below(5)]);
        for (std::size_t j = i + 1; j < n; ++j) s.at(i, j) = sc<T>(rng.small());
    }
    return s;
}

template <class T>
std::vector<Lap<T>> scale_vec(const std::vector<Lap<T>>& v, const Rational& q) {
    std::vector<Lap<T>> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(scale_by(c, q));
    return out;
}

/// Random polynomial of degree <= 3 over the given coordinates.
std::string random_poly(Rng& rng, const std::vector<std::string>& coords) {
    std::ostringstream os;
    std::size_t terms = 3 + static_cast<std::size_t>(rng.below(3));
    for (std::size_t t = 0; t < terms; ++t) {
        if (t) os << " + ";
        os << "(" << rng.nonzero().str() << ")";
        std::size_t deg = static_cast<std::size_t>(rng.below(4));
        for (std::size_t d = 0; d < deg; ++d)
            os << "*" << coords[static_cast<std::size_t>(
                rng.below(static_cast<long>(coords.size())))];
    }
    return os.str();
}

template <class T>
class Suite {
public:
    Suite(std::uint64_t seed, CheckOptions opts, GammaSign sign)
        : rng_(seed), opts_(opts), sign_(sign) {}

    std::vector<CheckLine> run();

private:
    Rng rng_;
    CheckOptions opts_;
    GammaSign sign_;
    std::vector<CheckLine> lines_;

    template <class Fn>
    void line(const char* name, const char* detail, Fn&& fn) {
        CheckLine c;
        c.name = name;
        c.detail = detail;
        try {
            c.pass = fn();
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string(detail) + " [exception: " + e.what() + "]";
        }
        lines_.push_back(std::move(c));
    }

    template <class A>
    bool near_zero(const A& v, double scale = 1.0) const {
        return is_negligible(v, opts_.tol, scale);
    }

    T zero() const { return sc<T>(Rational(0)); }
    T one() const { return sc<T>(Rational(1)); }

    bool algebra_relations();
    bool quotient_kernel();
    bool probe_identity();
    bool coordinate_relations();
    bool tracezero_pairing();
    bool sum_criterion();
    bool semiconformal_two_routes();
    bool dilation_law();
    bool puresigma_difference();
    bool quadratic_perturbation();
    bool transport_isometry();
    bool sign_pin();
    bool exp_log_inverse();
    bool squared_distance();
    bool mirror_involution();
    bool mirror_closed_form();
    bool firstorder_defect();
    bool defect_pure_sigma();
    bool laplacian_oracle();
    bool jet_families();
    bool jet_recognition();
    bool vanishing_jet_kills();
    bool tension_two_routes();
    bool codomain_line_collapse();
    bool dual_route_corpus();
    bool symmetry_evidence();
};

template <class T>
bool Suite<T>::algebra_relations() {
    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<Lap<T>> d;
        for (std::size_t i = 0; i < n; ++i)
            d.push_back(Lap<T>::variable(n, i, zero()));
        Lap<T> sig = Lap<T>::constant(n, zero());
        sig.sigma = one();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Lap<T> p = d[i] * d[j];
                if (i == j) {
                    if (!near_zero(p - sig)) return false;
                } else if (!near_zero(p)) {
                    return false;
                }
            }
            if (!near_zero(d[i] * sig)) return false;
        }
        if (!near_zero(sig * sig)) return false;
        if (d[0].grad.size() != n) return false; // dim = 1 + n + 1 components
    }
    return true;
}

template <class T>
bool Suite<T>::quotient_kernel() {
    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<Lap<T>> d;
        for (std::size_t i = 0; i < n; ++i)
            d.push_back(Lap<T>::variable(n, i, zero()));
        // sum of coordinate squares spans the kernel of the degree-1 quotient
        Lap<T> q = Lap<T>::constant(n, zero());
        for (std::size_t i = 0; i < n; ++i) q += d[i] * d[i];
        if (!near_zero(q.value) || !near_zero(q.sigma - sc<T>(Rational(static_cast<long>(n)))))
            return false;
        for (const auto& g : q.grad)
            if (!near_zero(g)) return false;
        // forgetting sigma is a ring homomorphism onto the first-order algebra
        for (int rep = 0; rep < 20; ++rep) {
            Lap<T> a = Lap<T>::constant(n, sc<T>(rng_.small()));
            Lap<T> b = Lap<T>::constant(n, sc<T>(rng_.small()));
            for (std::size_t i = 0; i < n; ++i) {
                a.grad[i] = sc<T>(rng_.small());
                b.grad[i] = sc<T>(rng_.small());
            }
            a.sigma = sc<T>(rng_.small());
            b.sigma = sc<T>(rng_.small());
            Lap<T> p = a * b;
            Jet1<T> pa(a.value, a.grad), pb(b.value, b.grad);
            Jet1<T> q1 = pa * pb;
            double scl = 1.0 + max_abs(p);
            if (!near_zero(p.value - q1.value, scl)) return false;
            for (std::size_t i = 0; i < n; ++i)
                if (!near_zero(p.grad[i] - q1.grad[i], scl)) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::probe_identity() {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            Mat<T> s = random_chol_factor<T>(rng_, n);
            InnerProduct<T> ip(transpose(s) * s);
            std::vector<Lap<T>> u = lsmall_probe(ip);
            if (!is_lsmall(u, ip, opts_)) return false;
            Lap<T> uu = ip.eval(u, u);
            Lap<T> want = Lap<T>::constant(n, zero());
            want.sigma = sc<T>(Rational(static_cast<long>(n)));
            if (!near_zero(uu - want, 1.0 + max_abs(uu))) return false;
            // a single-generator vector is never L-small for n >= 2
            std::vector<Lap<T>> w(n, Lap<T>::constant(n, zero()));
            w[0] = Lap<T>::variable(n, 0, zero());
            if (is_lsmall(w, ip, opts_)) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::coordinate_relations() {
    for (std::size_t n = 2; n <= 4; ++n) {
        Mat<T> s = random_chol_factor<T>(rng_, n);
        InnerProduct<T> ip(transpose(s) * s);
        std::vector<Lap<T>> u = lsmall_probe(ip);
        // orthonormal-frame components of the probe
        std::vector<Lap<T>> t;
        for (std::size_t i = 0; i < n; ++i) {
            Lap<T> acc = Lap<T>::constant(n, zero());
            for (std::size_t j = 0; j < n; ++j)
                acc += embed_scalar(acc, s.at(i, j)) * u[j];
            t.push_back(std::move(acc));
        }
        if (!lsmall_coordinate_relations(t, opts_)) return false;
    }
    return true;
}

template <class T>
bool Suite<T>::tracezero_pairing() {
    for (std::size_t n = 2; n <= 3; ++n) {
        Mat<T> s = random_chol_factor<T>(rng_, n);
        InnerProduct<T> ip(transpose(s) * s);
        std::vector<Lap<T>> u = lsmall_probe(ip);
        Lap<T> sig = Lap<T>::constant(n, zero());
        sig.sigma = one();

        // <L u, u> = tr(L) sigma for arbitrary L
        for (int rep = 0; rep < 5; ++rep) {
            Mat<T> l = Mat<T>::zero(n, n, zero());
            T tr = zero();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    l.at(i, j) = sc<T>(rng_.small());
                    if (i == j) tr += l.at(i, j);
                }
            std::vector<Lap<T>> lu = mat_vec(l, u);
            Lap<T> got = ip.eval(lu, u);
            Lap<T> want = embed_scalar(sig, tr) * sig;
            if (!near_zero(got - want, 1.0 + max_abs(got))) return false;
        }

        // self-adjoint trace-zero maps pair to zero, trace-full ones do not
        Mat<T> sinv = inverse(s);
        auto basis = tracezero_selfadjoint_basis<T>(n);
        for (const auto& c : basis) {
            Mat<T> l = sinv * c * s;
            std::vector<Lap<T>> lu = mat_vec(l, u);
            if (!near_zero(ip.eval(lu, u))) return false;
        }
        std::vector<Lap<T>> iu = mat_vec(Mat<T>::identity(n, one()), u);
        Lap<T> full = ip.eval(iu, u);
        if (near_zero(full, 1.0 + max_abs(full))) return false;
    }
    return true;
}

template <class T>
bool Suite<T>::sum_criterion() {
    std::size_t n = 2;
    Mat<T> s = random_chol_factor<T>(rng_, n);
    InnerProduct<T> ip(transpose(s) * s);
    Mat<T> sinv = inverse(s);
    std::vector<Lap<T>> u = lsmall_probe(ip);

    auto transported = [&](const Mat<T>& q) {
        Mat<T> a = sinv * q;
        std::vector<Lap<T>> v(n, Lap<T>::constant(n, zero()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) v[i].grad[k] = a.at(i, k);
        return v;
    };

    // rotated probe: the sum stays L-small and the criterion agrees
    Mat<T> rot = Mat<T>::zero(n, n, zero());
    rot.at(0, 1) = -one();
    rot.at(1, 0) = one();
    std::vector<Lap<T>> v = transported(rot);
    if (!is_lsmall(v, ip, opts_)) return false;
    std::vector<Lap<T>> sum{u[0] + v[0], u[1] + v[1]};
    if (!is_lsmall(sum, ip, opts_)) return false;
    if (!sum_lsmall_condition(u, v, ip, opts_)) return false;

    // swapped probe: the sum degenerates and the criterion rejects it
    Mat<T> swp = Mat<T>::zero(n, n, zero());
    swp.at(0, 1) = one();
    swp.at(1, 0) = one();
    std::vector<Lap<T>> w = transported(swp);
    if (!is_lsmall(w, ip, opts_)) return false;
    std::vector<Lap<T>> bad{u[0] + w[0], u[1] + w[1]};
    if (is_lsmall(bad, ip, opts_)) return false;
    if (sum_lsmall_condition(u, w, ip, opts_)) return false;

    // scalar multiples always pass
    std::vector<Lap<T>> cu = scale_vec(u, Rational(3, 2));
    if (!sum_lsmall_condition(u, cu, ip, opts_)) return false;
    if (!is_lsmall(std::vector<Lap<T>>{u[0] + cu[0], u[1] + cu[1]}, ip, opts_))
        return false;
    return true;
}

template <class T>
bool Suite<T>::semiconformal_two_routes() {
    int positives = 0, negatives = 0;
    for (int rep = 0; rep < 30; ++rep) {
        std::size_t n = 2 + static_cast<std::size_t>(rng_.below(3));
        std::size_t m = 1 + static_cast<std::size_t>(
            rng_.below(static_cast<long>(n)));
        Mat<T> a = Mat<T>::zero(m, n, zero());
        if (rep % 3 == 0) {
            if (m > 2) continue;
            // planted conformal block, padded with zero columns
            Rational p = rng_.nonzero(), q = rng_.small();
            a.at(0, 0) = sc<T>(p);
            if (m == 2) {
                a.at(0, 1) = sc<T>(q);
                a.at(1, 0) = sc<T>(-q);
                a.at(1, 1) = sc<T>(p);
            }
        } else {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) a.at(i, j) = sc<T>(rng_.small());
        }
        Mat<T> sd = random_chol_factor<T>(rng_, n);
        InnerProduct<T> ip_dom(transpose(sd) * sd);
        Mat<T> sco = random_chol_factor<T>(rng_, m);
        InnerProduct<T> ip_cod(transpose(sco) * sco);
        // plant in orthonormal frames: map = S_cod^-1 A S_dom keeps the verdict
        Mat<T> mapm = inverse(sco) * a * sd;

        SemiConformalReport<T> rep_m;
        try {
            rep_m = semiconformal_matrix(mapm, ip_dom, ip_cod, opts_);
        } catch (const RankDeficient&) {
            continue;
        }
        std::vector<Lap<T>> u = lsmall_probe(ip_dom);
        bool probe = is_lsmall(mat_vec(mapm, u), ip_cod, opts_);
        if (probe != rep_m.is_semiconformal) return false;
        if (rep_m.is_semiconformal) ++positives;
        else ++negatives;
    }
    return positives >= 3 && negatives >= 3;
}

template <class T>
bool Suite<T>::dilation_law() {
    // (1/m)<f(u), f(u)> = dilation * (1/n)<u, u> for semi-conformal f
    struct Sample { std::size_t m, n; };
    for (const Sample smp : {Sample{2, 2}, Sample{2, 3}, Sample{1, 2}}) {
        Rational p = rng_.nonzero(), q = rng_.small();
        Mat<T> a = Mat<T>::zero(smp.m, smp.n, zero());
        a.at(0, 0) = sc<T>(p);
        if (smp.m == 2) {
            a.at(0, 1) = sc<T>(q);
            a.at(1, 0) = sc<T>(-q);
            a.at(1, 1) = sc<T>(p);
        }
        InnerProduct<T> ip_dom = InnerProduct<T>::standard(smp.n);
        InnerProduct<T> ip_cod = InnerProduct<T>::standard(smp.m);
        SemiConformalReport<T> rep = semiconformal_matrix(a, ip_dom, ip_cod, opts_);
        if (!rep.is_semiconformal || !rep.dilation) return false;
        T expect = sc<T>(p) * sc<T>(p);
        if (smp.m == 2) expect += sc<T>(q) * sc<T>(q);
        if (!near_zero(*rep.dilation - expect, 1.0 + max_abs(*rep.dilation)))
            return false;
        std::vector<Lap<T>> u = lsmall_probe(ip_dom);
        std::vector<Lap<T>> w = mat_vec(a, u);
        Lap<T> lhs = scale_by(ip_cod.eval(w, w), Rational(1, static_cast<long>(smp.m)));
        Lap<T> rhs = embed_scalar(lhs, *rep.dilation) *
                     scale_by(ip_dom.eval(u, u), Rational(1, static_cast<long>(smp.n)));
        if (!near_zero(lhs - rhs, 1.0 + max_abs(lhs))) return false;
    }
    return true;
}

template <class T>
bool Suite<T>::puresigma_difference() {
    // two maps agreeing to first order at 0 differ on L-neighbours of 0 by a
    // constant multiple of <z, z>
    std::size_t n = 2;
    InnerProduct<T> ip = InnerProduct<T>::standard(n);
    std::vector<std::string> coords{"x", "y"};
    for (int rep = 0; rep < 5; ++rep) {
        Rational lx = rng_.small(), ly = rng_.small();
        auto quad = [&](const Rational& a, const Rational& b, const Rational& c) {
            std::ostringstream os;
            os << "(" << a.str() << ")*x^2 + (" << b.str() << ")*x*y + ("
               << c.str() << ")*y^2 + (" << lx.str() << ")*x + (" << ly.str()
               << ")*y";
            return parse(os.str(), coords);
        };
        Rational a1 = rng_.small(), b1 = rng_.small(), c1 = rng_.small();
        Rational a2 = rng_.small(), b2 = rng_.small(), c2 = rng_.small();
        Ast f1 = quad(a1, b1, c1), f2 = quad(a2, b2, c2);

        std::vector<Lap<T>> u = lsmall_probe(ip);
        for (const Rational& t : {Rational(1), Rational(-2), Rational(1, 3)}) {
            std::vector<Lap<T>> z = scale_vec(u, t);
            Lap<T> diff = eval(f1, z) - eval(f2, z);
            // c = (tr H1 - tr H2) / (2n) for the standard inner product
            Rational c = ((a1 + c1) - (a2 + c2)) * Rational(1, static_cast<long>(n));
            Lap<T> want = scale_by(ip.eval(z, z), c);
            if (!near_zero(diff - want, 1.0 + max_abs(diff))) return false;
            if (!near_zero(diff.value, 1.0 + max_abs(diff))) return false;
            for (const auto& g : diff.grad)
                if (!near_zero(g, 1.0 + max_abs(diff))) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::quadratic_perturbation() {
    Metric<T> flat2 = corpus::flat<T>(2);
    SmoothMap<T> sq = corpus::complex_square<T>();
    SmoothMap<T> st = corpus::stretch<T>();
    std::vector<T> x = pt<T>({Rational(1), Rational(2)});
    std::vector<T> y = pt<T>({Rational(1), Rational(1)});
    bool base_sq = probe_route_preserves_lsmall<T>(sq, flat2, flat2, x, nullptr, opts_);
    bool base_st = probe_route_preserves_lsmall<T>(st, flat2, flat2, y, nullptr, opts_);
    if (!base_sq || base_st) return false;
    for (int rep = 0; rep < 4; ++rep) {
        std::vector<Mat<T>> b;
        for (std::size_t c = 0; c < 2; ++c) {
            Mat<T> m = Mat<T>::zero(2, 2, zero());
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = i; j < 2; ++j) {
                    m.at(i, j) = sc<T>(rng_.small());
                    m.at(j, i) = m.at(i, j);
                }
            b.push_back(std::move(m));
        }
        if (probe_route_preserves_lsmall(sq, flat2, flat2, x, &b, opts_) != base_sq)
            return false;
        if (probe_route_preserves_lsmall(st, flat2, flat2, y, &b, opts_) != base_st)
            return false;
    }
    return true;
}

template <class T>
bool Suite<T>::transport_isometry() {
    Metric<T> flat2 = corpus::flat<T>(2);
    Metric<T> hyp = corpus::hyperbolic_plane<T>();
    Metric<T> sph = corpus::conformal_sphere<T>();
    if (!verify_levicivita(flat2, pt<T>({Rational(1), Rational(2)}), sign_, opts_))
        return false;
    if (!verify_levicivita(hyp, pt<T>({Rational(0), Rational(1)}), sign_, opts_))
        return false;
    if (!verify_levicivita(hyp, pt<T>({Rational(1), Rational(2)}), sign_, opts_))
        return false;
    if (!verify_levicivita(sph, pt<T>({Rational(1), Rational(1)}), sign_, opts_))
        return false;
    return true;
}

template <class T>
bool Suite<T>::sign_pin() {
    Metric<T> hyp = corpus::hyperbolic_plane<T>();
    return !verify_levicivita(hyp, pt<T>({Rational(0), Rational(1)}),
                              GammaSign::Flipped, opts_);
}

template <class T>
std::vector<Lap<T>> random_tangent(Rng& rng, std::size_t n) {
    std::vector<Lap<T>> u(n, Lap<T>::constant(n, sc<T>(Rational(0))));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < n; ++a) u[i].grad[a] = sc<T>(rng.small());
        u[i].sigma = sc<T>(rng.small());
    }
    return u;
}

template <class T>
bool Suite<T>::exp_log_inverse() {
    for (const auto& g : {corpus::hyperbolic_plane<T>(), corpus::conformal_sphere<T>()}) {
        std::vector<T> x = pt<T>({Rational(1), Rational(2)});
        Gamma<T> gd = christoffel_at(g, x);
        InnerProduct<T> ip = g.inner_product_at(x);
        std::vector<Lap<T>> u = lsmall_probe(ip);
        std::vector<Lap<T>> back = log2(gd, exp2(gd, u));
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!near_zero(back[i] - u[i], 1.0 + max_abs(u[i]))) return false;
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Lap<T>> w = random_tangent<T>(rng_, 2);
            std::vector<Lap<T>> z;
            for (std::size_t i = 0; i < 2; ++i)
                z.push_back(embed_scalar(w[i], x[i]) + w[i]);
            std::vector<Lap<T>> again = exp2(gd, log2(gd, z));
            for (std::size_t i = 0; i < 2; ++i)
                if (!near_zero(again[i] - z[i], 1.0 + max_abs(z[i]))) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::squared_distance() {
    // <log_x z, log_x z> at an L-neighbour z equals n sigma
    for (const auto& g : {corpus::flat<T>(2), corpus::hyperbolic_plane<T>(),
                          corpus::conformal_sphere<T>()}) {
        std::vector<T> x = pt<T>({Rational(1), Rational(2)});
        Gamma<T> gd = christoffel_at(g, x);
        InnerProduct<T> ip = g.inner_product_at(x);
        std::vector<Lap<T>> u = lsmall_probe(ip);
        std::vector<Lap<T>> z = exp2(gd, u);
        std::vector<Lap<T>> lg = log2(gd, z);
        Lap<T> d = ip.eval(lg, lg);
        Lap<T> want = Lap<T>::constant(2, zero());
        want.sigma = sc<T>(Rational(2));
        if (!near_zero(d - want, 1.0 + max_abs(d))) return false;
    }
    return true;
}

template <class T>
bool Suite<T>::mirror_involution() {
    for (const auto& g : {corpus::flat<T>(2), corpus::hyperbolic_plane<T>(),
                          corpus::conformal_sphere<T>()}) {
        std::vector<T> x = pt<T>({Rational(1), Rational(2)});
        Gamma<T> gd = christoffel_at(g, x);
        InnerProduct<T> ip = g.inner_product_at(x);
        std::vector<Lap<T>> z = exp2(gd, lsmall_probe(ip));
        std::vector<Lap<T>> zz = mirror(gd, mirror(gd, z));
        for (std::size_t i = 0; i < 2; ++i)
            if (!near_zero(zz[i] - z[i], 1.0 + max_abs(z[i]))) return false;
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Lap<T>> w = random_tangent<T>(rng_, 2);
            std::vector<Lap<T>> z2;
            for (std::size_t i = 0; i < 2; ++i)
                z2.push_back(embed_scalar(w[i], x[i]) + w[i]);
            std::vector<Lap<T>> back = mirror(gd, mirror(gd, z2));
            for (std::size_t i = 0; i < 2; ++i)
                if (!near_zero(back[i] - z2[i], 1.0 + max_abs(z2[i]))) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::mirror_closed_form() {
    // z' = x - u + Gamma(x; u, u) for z = x + u
    for (const auto& g : {corpus::hyperbolic_plane<T>(), corpus::conformal_sphere<T>()}) {
        std::vector<T> x = pt<T>({Rational(1), Rational(2)});
        Gamma<T> gd = christoffel_at(g, x);
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Lap<T>> u = random_tangent<T>(rng_, 2);
            std::vector<Lap<T>> z;
            for (std::size_t i = 0; i < 2; ++i)
                z.push_back(embed_scalar(u[i], x[i]) + u[i]);
            std::vector<Lap<T>> m = mirror(gd, z);
            std::vector<Lap<T>> guu = gd.connection_form(u, u);
            for (std::size_t i = 0; i < 2; ++i) {
                Lap<T> want = embed_scalar(u[i], x[i]) - u[i] + guu[i];
                if (!near_zero(m[i] - want, 1.0 + max_abs(want))) return false;
            }
        }
    }
    return true;
}

template <class T>
bool Suite<T>::firstorder_defect() {
    // f(z') + f(z) - 2 f(x) vanishes identically on first-order neighbours
    std::vector<std::string> coords{"x", "y"};
    for (const auto& g : {corpus::hyperbolic_plane<T>(), corpus::conformal_sphere<T>()}) {
        std::vector<T> x = pt<T>({Rational(1), Rational(2)});
        Gamma<T> gd = christoffel_at(g, x);
        for (int rep = 0; rep < 4; ++rep) {
            Ast f = parse(random_poly(rng_, coords), coords);
            std::vector<Jet1<T>> z;
            for (std::size_t i = 0; i < 2; ++i) {
                Jet1<T> u = Jet1<T>::constant(2, zero());
                for (std::size_t a = 0; a < 2; ++a) u.grad[a] = sc<T>(rng_.small());
                u.value = x[i];
                z.push_back(std::move(u));
            }
            std::vector<Jet1<T>> zp = mirror(gd, z);
            Jet1<T> d = eval(f, z) + eval(f, zp);
            T fx = eval(f, x);
            d.value = d.value - fx - fx;
            if (!near_zero(d, 1.0 + max_abs(eval(f, z)))) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::defect_pure_sigma() {
    // f(z) + f(z') - 2 f(x) is a pure sigma multiple on L-neighbours, with
    // coefficient matching the Laplacian normalization
    std::vector<std::string> coords{"x", "y"};
    for (const auto& g : {corpus::flat<T>(2), corpus::hyperbolic_plane<T>(),
                          corpus::conformal_sphere<T>()}) {
        std::vector<T> x = pt<T>({Rational(1), Rational(2)});
        Gamma<T> gd = christoffel_at(g, x);
        InnerProduct<T> ip = g.inner_product_at(x);
        std::vector<Lap<T>> z = exp2(gd, lsmall_probe(ip));
        std::vector<Lap<T>> zp = mirror(gd, z);
        for (int rep = 0; rep < 3; ++rep) {
            Ast f = parse(random_poly(rng_, coords), coords);
            Lap<T> d = eval(f, z) + eval(f, zp);
            T fx = eval(f, x);
            d.value = d.value - fx - fx;
            double scl = 1.0 + max_abs(eval(f, z));
            if (!near_zero(d.value, scl)) return false;
            for (const auto& gr : d.grad)
                if (!near_zero(gr, scl)) return false;
            T lap = laplacian(f, g, x, opts_);
            if (!near_zero(d.sigma - lap, scl)) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::laplacian_oracle() {
    std::vector<std::string> coords{"x", "y"};
    std::vector<std::vector<Rational>> pts{{Rational(1), Rational(2)},
                                           {Rational(-2), Rational(3)},
                                           {Rational(1, 2), Rational(1, 3)}};
    for (const auto& g : {corpus::flat<T>(2), corpus::hyperbolic_plane<T>(),
                          corpus::conformal_sphere<T>()}) {
        for (const auto& p : pts) {
            std::vector<T> x = pt<T>(p);
            for (int rep = 0; rep < 3; ++rep) {
                Ast f = parse(random_poly(rng_, coords), coords);
                T a = laplacian(f, g, x, opts_);
                T b = laplace_beltrami_oracle(f, g, x, opts_);
                if (!near_zero(a - b, 1.0 + max_abs(a) + max_abs(b))) return false;
            }
        }
    }
    // transcendental spot checks always run in float64
    Metric<double> hypd = corpus::hyperbolic_plane<double>();
    Metric<double> flatd = corpus::flat<double>(2);
    std::vector<double> origin{0.0, 1.0};
    Ast logy = parse("log(y)", coords);
    double got = laplacian(logy, hypd, origin);
    if (std::abs(got + 1.0) > 1e-9) return false;
    if (std::abs(got - laplace_beltrami_oracle(logy, hypd, origin)) > 1e-9)
        return false;
    std::vector<double> xf{0.5, -0.25};
    for (const char* s : {"exp(x)*sin(y)", "sin(x)*sin(y)", "tanh(x) + exp(y)"}) {
        Ast f = parse(s, coords);
        double a = laplacian(f, flatd, xf);
        double b = laplace_beltrami_oracle(f, flatd, xf);
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a) + std::abs(b)))
            return false;
    }
    return true;
}

template <class T>
bool Suite<T>::jet_families() {
    struct Site { Metric<T> g; std::vector<Rational> x; };
    std::vector<Site> sites;
    sites.push_back({corpus::flat<T>(2), {Rational(1), Rational(2)}});
    sites.push_back({corpus::flat<T>(3), {Rational(1), Rational(2), Rational(3)}});
    sites.push_back({corpus::hyperbolic_plane<T>(), {Rational(0), Rational(1)}});
    sites.push_back({corpus::hyperbolic_plane<T>(), {Rational(1), Rational(2)}});
    sites.push_back({corpus::conformal_sphere<T>(), {Rational(1), Rational(1)}});
    for (const auto& site : sites) {
        std::vector<T> x = pt<T>(site.x);
        auto basis = harmonic_jet_basis(site.g, x);
        std::size_t n = site.g.dim();
        if (basis.size() != 1 + n + (n * (n + 1) / 2 - 1)) return false;
        for (const auto& j : basis)
            if (!is_harmonic_jet(j, site.g, x, opts_).harmonic) return false;
    }
    return true;
}

template <class T>
bool Suite<T>::jet_recognition() {
    struct Site { Metric<T> g; std::vector<Rational> x; };
    std::vector<Site> sites;
    sites.push_back({corpus::flat<T>(2), {Rational(1), Rational(2)}});
    sites.push_back({corpus::hyperbolic_plane<T>(), {Rational(0), Rational(1)}});
    for (const auto& site : sites) {
        std::vector<T> x = pt<T>(site.x);
        std::size_t n = site.g.dim();
        Gamma<T> gd = christoffel_at(site.g, x);
        InnerProduct<T> ip = site.g.inner_product_at(x);
        std::vector<Lap<T>> z = exp2(gd, lsmall_probe(ip));
        std::vector<Lap<T>> zp = mirror(gd, z);
        auto basis = harmonic_jet_basis(site.g, x);

        auto defect = [&](const Jet2Scalar<T>& j, const std::vector<Lap<T>>& zt) {
            Lap<T> d = j.eval_on(zt) + j.eval_on(z);
            d.value = d.value - j.value - j.value;
            return d;
        };

        // the true mirror passes every harmonic jet
        for (const auto& j : basis)
            if (!near_zero(defect(j, zp), 1.0 + j.norm_scale())) return false;

        // perturbing the mirror in any coordinate is caught by some jet
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Lap<T>> zt = zp;
            Lap<T> bump = Lap<T>::constant(n, zero());
            bump.sigma = one();
            zt[k] += bump;
            bool caught = false;
            for (const auto& j : basis)
                if (!near_zero(defect(j, zt), 1.0 + j.norm_scale())) caught = true;
            if (!caught) return false;
        }

        // a non-L-small second neighbour is caught by some trace-zero jet
        std::vector<Lap<T>> bad(n, Lap<T>::constant(n, zero()));
        bad[0] = Lap<T>::variable(n, 0, zero());
        std::vector<Lap<T>> zb = exp2(gd, bad);
        std::vector<Lap<T>> zbp = mirror(gd, zb);
        bool caught = false;
        for (const auto& j : basis) {
            Lap<T> d = j.eval_on(zbp) + j.eval_on(zb);
            d.value = d.value - j.value - j.value;
            if (!near_zero(d, 1.0 + j.norm_scale())) caught = true;
        }
        if (!caught) return false;
    }
    return true;
}

template <class T>
bool Suite<T>::vanishing_jet_kills() {
    struct Site { Metric<T> g; std::vector<Rational> x; };
    std::vector<Site> sites;
    sites.push_back({corpus::hyperbolic_plane<T>(), {Rational(0), Rational(1)}});
    sites.push_back({corpus::hyperbolic_plane<T>(), {Rational(1), Rational(2)}});
    sites.push_back({corpus::conformal_sphere<T>(), {Rational(1), Rational(1)}});
    sites.push_back({corpus::flat<T>(3), {Rational(1), Rational(2), Rational(3)}});
    for (const auto& site : sites) {
        std::vector<T> x = pt<T>(site.x);
        std::size_t n = site.g.dim();
        Gamma<T> gd = christoffel_at(site.g, x);
        InnerProduct<T> ip = site.g.inner_product_at(x);
        std::vector<Lap<T>> z = exp2(gd, lsmall_probe(ip));
        auto basis = harmonic_jet_basis(site.g, x);
        // random combinations of the jets that vanish on the first neighbourhood
        for (int rep = 0; rep < 3; ++rep) {
            Lap<T> acc = Lap<T>::constant(n, zero());
            double scl = 1.0;
            for (const auto& j : basis) {
                if (!is_exactly_zero(j.value)) continue;
                bool pure_quadratic = true;
                for (const auto& c : j.p)
                    if (!is_exactly_zero(c)) pure_quadratic = false;
                if (!pure_quadratic) continue;
                Rational c = rng_.small();
                acc += scale_by(j.eval_on(z), c);
                scl += j.norm_scale();
            }
            if (!near_zero(acc, scl)) return false;
        }
    }
    return true;
}

template <class T>
bool Suite<T>::tension_two_routes() {
    Metric<T> flat2 = corpus::flat<T>(2);
    Metric<T> flat3 = corpus::flat<T>(3);
    Metric<T> hyp = corpus::hyperbolic_plane<T>();
    Metric<T> hyp3 = corpus::hyperbolic_space3<T>();

    std::vector<T> t1 = tension(corpus::complex_square<T>(), flat2, flat2,
                                pt<T>({Rational(1), Rational(2)}), opts_);
    if (!near_zero(t1[0]) || !near_zero(t1[1])) return false;

    std::vector<T> t2 = tension(corpus::quad_radial<T>(), flat2, flat2,
                                pt<T>({Rational(1), Rational(1)}), opts_);
    if (!near_zero(t2[0] - sc<T>(Rational(4)), 5.0) || !near_zero(t2[1], 5.0))
        return false;

    std::vector<T> t3 = tension(corpus::identity_map<T>(2), hyp, hyp,
                                pt<T>({Rational(0), Rational(1)}), opts_);
    if (!near_zero(t3[0]) || !near_zero(t3[1])) return false;

    // identity into the curved half-space: tau = (0, 0, 1/z) at z = 2
    std::vector<T> t4 = tension(corpus::identity_map<T>(3), flat3, hyp3,
                                pt<T>({Rational(1), Rational(1), Rational(2)}), opts_);
    if (!near_zero(t4[0]) || !near_zero(t4[1])) return false;
    if (!near_zero(t4[2] - sc<T>(Rational(1, 2)), 2.0)) return false;
    return true;
}

template <class T>
bool Suite<T>::codomain_line_collapse() {
    // for maps into a 1-dimensional codomain, harmonic morphism and harmonic
    // collapse to the same verdict (given a nonvanishing differential)
    Metric<T> flat2 = corpus::flat<T>(2);
    Metric<T> flat1 = corpus::flat<T>(1);
    std::vector<T> x = pt<T>({Rational(1), Rational(2)});

    PointReport<T> good = check_point(corpus::coordinate_sum<T>(), flat2, flat1, x,
                                      opts_, true);
    if (!good.harmonic || !good.semiconformal.is_semiconformal ||
        !good.harmonic_morphism)
        return false;
    if (!good.fi || good.fi->direct != good.fi->jet_pullback || !good.fi->direct)
        return false;

    PointReport<T> badr = check_point(corpus::squared_norm<T>(), flat2, flat1, x,
                                      opts_, true);
    if (badr.harmonic || !badr.semiconformal.is_semiconformal) return false;
    if (badr.harmonic_morphism) return false;
    if (!badr.fi || badr.fi->direct != badr.fi->jet_pullback) return false;
    if (badr.fi->jet_pullback || !badr.fi->failing_jet) return false;
    return good.harmonic_morphism == good.harmonic &&
           badr.harmonic_morphism == badr.harmonic;
}

template <class T>
bool Suite<T>::dual_route_corpus() {
    struct Case {
        SmoothMap<T> phi;
        Metric<T> dom, cod;
        std::vector<Rational> x;
        bool harmonic, semiconformal, morphism;
    };
    Metric<T> flat1 = corpus::flat<T>(1);
    Metric<T> flat2 = corpus::flat<T>(2);
    Metric<T> flat3 = corpus::flat<T>(3);
    Metric<T> flat4 = corpus::flat<T>(4);
    Metric<T> hyp = corpus::hyperbolic_plane<T>();
    Metric<T> hyp3 = corpus::hyperbolic_space3<T>();

    std::vector<Case> cases;
    auto add = [&](SmoothMap<T> m, Metric<T> d, Metric<T> c,
                   std::vector<Rational> x, bool h, bool s, bool hm) {
        cases.push_back({std::move(m), std::move(d), std::move(c), std::move(x),
                         h, s, hm});
    };
    add(corpus::complex_square<T>(), flat2, flat2, {Rational(1), Rational(2)},
        true, true, true);
    add(corpus::complex_square<T>(), flat2, flat2, {Rational(1), Rational(0)},
        true, true, true);
    add(corpus::complex_square<T>(), flat2, flat2, {Rational(-2), Rational(3)},
        true, true, true);
    add(corpus::stretch<T>(), flat2, flat2, {Rational(1), Rational(1)},
        true, false, false);
    add(corpus::stretch<T>(), flat2, flat2, {Rational(2), Rational(-1)},
        true, false, false);
    add(corpus::quad_radial<T>(), flat2, flat2, {Rational(1), Rational(1)},
        false, false, false);
    add(corpus::quad_radial<T>(), flat2, flat2, {Rational(0), Rational(2)},
        false, false, false);
    add(corpus::projection_3to2<T>(), flat3, flat2,
        {Rational(1), Rational(2), Rational(3)}, true, true, true);
    add(corpus::hopf_quadratic<T>(), flat4, flat3,
        {Rational(1), Rational(0), Rational(0), Rational(0)}, true, true, true);
    add(corpus::hopf_quadratic<T>(), flat4, flat3,
        {Rational(1), Rational(1), Rational(1), Rational(1)}, true, true, true);
    add(corpus::identity_map<T>(3), flat3, hyp3,
        {Rational(1), Rational(1), Rational(2)}, false, true, false);
    add(corpus::identity_map<T>(2), hyp, hyp, {Rational(0), Rational(1)},
        true, true, true);
    add(corpus::product_and_sum<T>(), flat2, flat2, {Rational(1), Rational(2)},
        true, false, false);
    add(corpus::squared_norm<T>(), flat2, flat1, {Rational(1), Rational(2)},
        false, true, false);

    for (const auto& c : cases) {
        PointReport<T> rep = check_point(c.phi, c.dom, c.cod, pt<T>(c.x), opts_, true);
        if (rep.harmonic != c.harmonic) return false;
        if (rep.semiconformal.is_semiconformal != c.semiconformal) return false;
        if (rep.harmonic_morphism != c.morphism) return false;
        if (!rep.fi || rep.fi->direct != rep.fi->jet_pullback) return false;
        if (rep.fi->direct != c.morphism) return false;
    }

    // dilation of the squaring map is 4(x^2 + y^2)
    PointReport<T> sq = check_point(corpus::complex_square<T>(), flat2, flat2,
                                    pt<T>({Rational(1), Rational(2)}), opts_, false);
    if (!sq.semiconformal.dilation) return false;
    if (!near_zero(*sq.semiconformal.dilation - sc<T>(Rational(20)), 25.0))
        return false;
    return true;
}

template <class T>
bool Suite<T>::symmetry_evidence() {
    if (!lneighbour_symmetry_evidence(corpus::flat<T>(2),
                                      pt<T>({Rational(1), Rational(2)}), opts_))
        return false;
    if (!lneighbour_symmetry_evidence(corpus::hyperbolic_plane<T>(),
                                      pt<T>({Rational(0), Rational(1)}), opts_))
        return false;
    if (!lneighbour_symmetry_evidence(corpus::hyperbolic_plane<T>(),
                                      pt<T>({Rational(1), Rational(2)}), opts_))
        return false;
    if (!lneighbour_symmetry_evidence(corpus::conformal_sphere<T>(),
                                      pt<T>({Rational(1), Rational(1)}), opts_))
        return false;
    return true;
}

template <class T>
std::vector<CheckLine> Suite<T>::run() {
    line("laplace-algebra-relations",
         "generator products, sigma annihilation, and component count for n = 2..4",
         [&] { return algebra_relations(); });
    line("laplace-quotient-kernel",
         "sum of coordinate squares spans the kernel of the first-order quotient",
         [&] { return quotient_kernel(); });
    line("probe-lsmall-identity",
         "the Cholesky probe satisfies <u,a><u,b> = (1/n)<u,u><a,b> with <u,u> = n sigma",
         [&] { return probe_identity(); });
    line("probe-coordinate-relations",
         "orthonormal probe components satisfy t_i t_j = 0 and equal squares",
         [&] { return coordinate_relations(); });
    line("tracezero-selfadjoint-pairing",
         "<Lu,u> = tr(L) sigma; zero exactly on trace-zero self-adjoint maps",
         [&] { return tracezero_pairing(); });
    line("sum-lsmall-criterion",
         "a + b is L-small iff the 2/n bilinear criterion holds",
         [&] { return sum_criterion(); });
    line("semiconformal-matrix-iff-probe",
         "matrix-route and probe-route semi-conformality verdicts agree",
         [&] { return semiconformal_two_routes(); });
    line("dilation-law",
         "(1/m)<f(u),f(u)> = dilation * (1/n)<u,u> for semi-conformal linear maps",
         [&] { return dilation_law(); });
    line("puresigma-difference",
         "maps agreeing to first order differ by a constant multiple of <z,z>",
         [&] { return puresigma_difference(); });
    line("quadratic-perturbation-invariance",
         "adding a quadratic perturbation never changes the probe-route verdict",
         [&] { return quadratic_perturbation(); });
    line("levicivita-transport-isometry",
         "transport along nabla preserves the metric on nested first-order jets",
         [&] { return transport_isometry(); });
    line("levicivita-sign-pin",
         "the flipped connection sign breaks transport isometry on the half-plane",
         [&] { return sign_pin(); });
    line("exp-log-inverse",
         "log after exp and exp after log are identities on second neighbours",
         [&] { return exp_log_inverse(); });
    line("lneighbour-squared-distance",
         "<log z, log z> = n sigma at L-neighbours",
         [&] { return squared_distance(); });
    line("mirror-involution", "the mirror image of the mirror image is z",
         [&] { return mirror_involution(); });
    line("mirror-closed-form", "z' = x - u + Gamma(x; u, u)",
         [&] { return mirror_closed_form(); });
    line("firstorder-defect-vanishes",
         "f(z) + f(z') - 2 f(x) vanishes identically on first-order neighbours",
         [&] { return firstorder_defect(); });
    line("mirror-defect-pure-sigma",
         "on L-neighbours the defect is a pure sigma multiple with the Laplacian "
         "as coefficient",
         [&] { return defect_pure_sigma(); });
    line("laplacian-vs-laplace-beltrami",
         "mirror-defect Laplacian equals the divergence-form oracle",
         [&] { return laplacian_oracle(); });
    line("harmonic-jet-families",
         "constant, affine, and trace-zero jets are harmonic and count n(n+3)/2",
         [&] { return jet_families(); });
    line("harmonic-jet-recognition",
         "harmonic jets accept the true mirror and reject perturbed or "
         "non-L-small neighbours",
         [&] { return jet_recognition(); });
    line("vanishing-jet-kills-lneighbours",
         "a harmonic jet vanishing on the first neighbourhood vanishes at L-neighbours",
         [&] { return vanishing_jet_kills(); });
    line("tension-two-routes",
         "mirror-defect tension matches the classical Christoffel formula",
         [&] { return tension_two_routes(); });
    line("codomain-line-collapse",
         "for a 1-dimensional codomain, harmonic morphism reduces to harmonic",
         [&] { return codomain_line_collapse(); });
    line("harmonic-morphism-dual-route",
         "direct and jet-pullback harmonic-morphism verdicts agree on the corpus",
         [&] { return dual_route_corpus(); });
    line("lneighbour-symmetry-evidence",
         "evidence at sampled points that the L-neighbour relation is symmetric "
         "(not a proof)",
         [&] { return symmetry_evidence(); });
    return lines_;
}

} // namespace

std::vector<CheckLine> run_paper_suite(ScalarMode mode, std::uint64_t seed,
                                       const CheckOptions& opts, GammaSign sign) {
    if (mode == ScalarMode::Exact) return Suite<Rational>(seed, opts, sign).run();
    return Suite<double>(seed, opts, sign).run();
}

} // namespace jetgeo
