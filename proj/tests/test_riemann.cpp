#include <doctest.h>

#include <random>
#include <vector>

#include "jetgeo/corpus.hpp"
#include "jetgeo/riemann.hpp"

using namespace jetgeo;
using R = Rational;

namespace {

std::mt19937_64 rng(41);

std::vector<R> upper_half_point() {
    return {R(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1),
            R(static_cast<long>(rng() % 4) + 1, static_cast<long>(rng() % 2) + 1)};
}

// g = SᵀS for S = [[2, x], [0, 1/(1+y^2)]]: curved, coupled, and rationally
// Cholesky-factorable at every rational point.
Metric<R> skew_metric() {
    return Metric<R>::from_strings({"x", "y"},
                                   {"4", "2*x", "x^2 + 1/(1 + y^2)^2"});
}

} // namespace

TEST_CASE("flat metrics have vanishing christoffel symbols") {
    for (std::size_t n : {1u, 2u, 3u}) {
        auto g = corpus::flat<R>(n);
        std::vector<R> x(n, R(1, 2));
        Gamma<R> gd = christoffel_at(g, x);
        for (const auto& s : gd.sym) CHECK(s.is_zero());
    }
}

TEST_CASE("hyperbolic plane christoffel symbols at (0, 1)") {
    auto g = corpus::hyperbolic_plane<R>();
    std::vector<R> x = {R(0), R(1)};
    Gamma<R> gd = christoffel_at(g, x);
    CHECK(gd.s(0, 0, 1) == R(-1));
    CHECK(gd.s(0, 1, 0) == R(-1));
    CHECK(gd.s(1, 0, 0) == R(1));
    CHECK(gd.s(1, 1, 1) == R(-1));
    CHECK(gd.s(0, 0, 0) == R(0));
    CHECK(gd.s(0, 1, 1) == R(0));
    CHECK(gd.s(1, 0, 1) == R(0));

    // General y: the nonzero symbols are +-1/y.
    std::vector<R> x2 = {R(3), R(1, 2)};
    Gamma<R> gd2 = christoffel_at(g, x2);
    CHECK(gd2.s(1, 0, 0) == R(2));
    CHECK(gd2.s(0, 0, 1) == R(-2));
}

TEST_CASE("conformal round metric is flat to first order at the origin") {
    auto g = corpus::conformal_sphere<R>();
    Gamma<R> gd = christoffel_at(g, std::vector<R>{R(0), R(0)});
    for (const auto& s : gd.sym) CHECK(s.is_zero());
}

TEST_CASE("non positive-definite grams are rejected") {
    auto g = Metric<R>::from_strings({"x", "y"}, {"1", "2", "1"});
    CHECK_THROWS_AS(christoffel_at(g, std::vector<R>{R(0), R(0)}),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(g.inner_product_at({R(0), R(0)}), NotPositiveDefinite);
}

TEST_CASE("covariant combination reduces to the affine one on flat space") {
    Gamma<R> gd = Gamma<R>::flat({R(1), R(2)});
    std::vector<Lap<R>> y, z;
    for (std::size_t i = 0; i < 2; ++i) {
        Lap<R> yi = Lap<R>::constant(2, gd.base[i]);
        yi.grad[i] = R(1);
        y.push_back(yi);
        Lap<R> zi = Lap<R>::constant(2, gd.base[i]);
        zi.sigma = R(i == 0 ? 1 : 0);
        z.push_back(zi);
    }
    std::vector<Lap<R>> n = nabla(gd, y, z);
    for (std::size_t i = 0; i < 2; ++i) {
        Lap<R> want = y[i] + z[i];
        want.value = want.value - gd.base[i];
        CHECK(n[i] == want);
    }
}

TEST_CASE("exp and log are mutually inverse on the probe") {
    for (const auto& g : {corpus::hyperbolic_plane<R>(), skew_metric()}) {
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<R> x = upper_half_point();
            if (x[0].is_zero()) x[0] = R(1);
            InnerProduct<R> ip = g.inner_product_at(x);
            Mat<R> gram = ip.gram();
            Gamma<R> gd = christoffel_at(g, x);
            std::vector<Lap<R>> u = lsmall_probe(ip);
            std::vector<Lap<R>> z = exp2(gd, u);
            std::vector<Lap<R>> back = log2(gd, z);
            for (std::size_t i = 0; i < 2; ++i) CHECK(back[i] == u[i]);

            // Displacement comparison the other way around.
            std::vector<Lap<R>> w = log2(gd, z);
            std::vector<Lap<R>> z2 = exp2(gd, w);
            for (std::size_t i = 0; i < 2; ++i) CHECK(z2[i] == z[i]);

            // The squared geodesic length of an L-neighbour is n sigma.
            Lap<R> len = zero_like(w.front());
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    len += embed_scalar(w.front(), gram.at(i, j)) * w[i] * w[j];
            CHECK(len == scale(Lap<R>(R(0), {R(0), R(0)}, R(1)), R(2)));
        }
    }
}

TEST_CASE("mirror is an involution with the expected closed form") {
    auto g = skew_metric();
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<R> x = upper_half_point();
        if (x[0].is_zero()) x[0] = R(2);
        InnerProduct<R> ip = g.inner_product_at(x);
        Gamma<R> gd = christoffel_at(g, x);
        std::vector<Lap<R>> u = lsmall_probe(ip);
        std::vector<Lap<R>> z = exp2(gd, u);
        std::vector<Lap<R>> m = mirror(gd, z);
        std::vector<Lap<R>> mm = mirror(gd, m);
        for (std::size_t i = 0; i < 2; ++i) CHECK(mm[i] == z[i]);

        // z' = x - u + Gamma(x; u, u) for z = x + u.
        std::vector<Lap<R>> disp = z;
        for (std::size_t i = 0; i < 2; ++i)
            disp[i].value = disp[i].value - x[i];
        std::vector<Lap<R>> corr = gd.connection_form(disp, disp);
        for (std::size_t i = 0; i < 2; ++i) {
            Lap<R> want = corr[i] - disp[i];
            want.value = want.value + x[i];
            CHECK(m[i] == want);
        }
    }
}

TEST_CASE("mirror reflects first-neighbourhood points exactly") {
    // In first-order jet coordinates the quadratic correction vanishes
    // identically, so the mirror image is the plain reflection x - u.
    auto g = skew_metric();
    std::vector<R> x = {R(1), R(1)};
    std::vector<Jet1<R>> xe = {Jet1<R>::constant(2, x[0]),
                               Jet1<R>::constant(2, x[1])};
    Gamma<Jet1<R>> gd = christoffel_at(g, xe);
    std::vector<Jet1<R>> z = {Jet1<R>(x[0], {R(2), R(-1)}),
                              Jet1<R>(x[1], {R(1), R(3)})};
    std::vector<Jet1<R>> m = mirror(gd, z);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(m[i].value == x[i]);
        CHECK(m[i].grad[0] == -z[i].grad[0]);
        CHECK(m[i].grad[1] == -z[i].grad[1]);
    }
}

TEST_CASE("laplacian of polynomials on flat space") {
    auto g = corpus::flat<R>(2);
    std::vector<R> x = {R(1, 2), R(-1, 3)};
    CHECK(laplacian(parse("x^2 - y^2", {"x", "y"}), g, x) == R(0));
    CHECK(laplacian(parse("x*y", {"x", "y"}), g, x) == R(0));
    CHECK(laplacian(parse("x^2 + y^2", {"x", "y"}), g, x) == R(4));
    CHECK(laplacian(parse("x^3", {"x", "y"}), g, x) == R(3));
    CHECK(laplacian(parse("x", {"x", "y"}), g, x) == R(0));
}

TEST_CASE("hyperbolic laplacian of log y vanishes nowhere but is constant") {
    auto g = corpus::hyperbolic_plane<double>();
    Ast f = parse("log(y)", {"x", "y"});
    CheckOptions opts;
    double got = laplacian(f, g, std::vector<double>{0.0, 1.0}, opts);
    CHECK(got == doctest::Approx(-1.0));
    double got2 = laplacian(f, g, std::vector<double>{0.7, 2.5}, opts);
    CHECK(got2 == doctest::Approx(-1.0));
    // x is harmonic for this metric; x*y is not.
    CHECK(laplacian(parse("x", {"x", "y"}), g, {0.3, 2.0}, opts) ==
          doctest::Approx(0.0));
}

TEST_CASE("laplacian agrees with the divergence-form oracle") {
    // Exact rational agreement on polynomial data.
    auto g = skew_metric();
    std::vector<std::string> fs = {"x^2*y", "x*y - y^3", "x^2 + y^2",
                                   "1/(1 + x^2)"};
    for (const auto& s : fs) {
        Ast f = parse(s, {"x", "y"});
        for (int rep = 0; rep < 8; ++rep) {
            std::vector<R> x = upper_half_point();
            CHECK(laplacian(f, g, x) == laplace_beltrami_oracle(f, g, x));
        }
    }

    // Floating agreement through transcendental lifts.
    auto gf = corpus::hyperbolic_plane<double>();
    std::vector<std::string> fd = {"exp(x)*sin(y)", "log(y)", "tanh(x + y)"};
    for (const auto& s : fd) {
        Ast f = parse(s, {"x", "y"});
        for (double px : {-0.4, 0.3}) {
            std::vector<double> x = {px, 1.5};
            double a = laplacian(f, gf, x);
            double b = laplace_beltrami_oracle(f, gf, x);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("one-dimensional metrics take the jet route") {
    auto g1 = corpus::flat<R>(1);
    CHECK(laplacian(parse("x^2", {"x"}), g1, std::vector<R>{R(3)}) == R(2));
    auto gw = Metric<R>::from_strings({"x"}, {"4"});
    // Constant rescaling divides the flat answer.
    CHECK(laplacian(parse("x^2", {"x"}), gw, std::vector<R>{R(3)}) == R(1, 2));
    Ast f = parse("x^3 - x", {"x"});
    auto gv = Metric<R>::from_strings({"x"}, {"1 + x^2"});
    for (long k = -2; k <= 2; ++k) {
        std::vector<R> x = {R(k, 2)};
        CHECK(laplacian(f, gv, x) == laplace_beltrami_oracle(f, gv, x));
    }
}

TEST_CASE("harmonic jet basis: families, counts, harmonicity") {
    auto g2 = skew_metric();
    std::vector<R> x = {R(1), R(2)};
    auto basis = harmonic_jet_basis(g2, x);
    REQUIRE(basis.size() == 1 + 2 + 2);
    CHECK(basis[0].label == "constant");
    CHECK(basis[1].label == "affine s1");
    CHECK(basis[2].label == "affine s2");
    CHECK(basis[3].label == "tracezero sym(0)");
    CHECK(basis[4].label == "tracezero diag(e1-e2)");
    for (const auto& j : basis) {
        auto v = is_harmonic_jet(j, g2, x);
        CHECK(v.harmonic);
    }

    auto g3 = corpus::flat<R>(3);
    std::vector<R> x3 = {R(0), R(0), R(0)};
    auto b3 = harmonic_jet_basis(g3, x3);
    CHECK(b3.size() == 1 + 3 + 5);
    for (const auto& j : b3) CHECK(is_harmonic_jet(j, g3, x3).harmonic);
}

TEST_CASE("harmonic recognition rejects the pure trace jet") {
    auto g = corpus::flat<R>(2);
    std::vector<R> x = {R(0), R(0)};
    Jet2Scalar<R> trace{x, R(0), {R(0), R(0)},
                        Mat<R>::from_rows(2, 2, {R(2), R(0), R(0), R(2)}),
                        "squared norm"};
    auto v = is_harmonic_jet(trace, g, x);
    CHECK(!v.harmonic);
    // The jet is the squared norm itself, so the certificate is its
    // flat laplacian.
    CHECK(v.certificate == R(4));

    // x^2 - y^2 as an explicit jet is harmonic.
    Jet2Scalar<R> saddle{x, R(0), {R(0), R(0)},
                         Mat<R>::from_rows(2, 2, {R(2), R(0), R(0), R(-2)}),
                         "saddle"};
    CHECK(is_harmonic_jet(saddle, g, x).harmonic);
}

TEST_CASE("explicit jets agree with expression laplacians") {
    // The certificate of a quadratic jet equals the laplacian of the
    // matching polynomial.
    auto g = skew_metric();
    std::vector<R> x = {R(1), R(1)};
    Ast f = parse("3*x^2 + x*y", {"x", "y"});
    std::vector<Jet2<R>> env = {Jet2<R>::variable(2, 0, x[0]),
                                Jet2<R>::variable(2, 1, x[1])};
    Jet2<R> fx = eval(f, env);
    Jet2Scalar<R> j{x, fx.value, fx.grad,
                    Mat<R>::from_rows(2, 2, {fx.h(0, 0), fx.h(0, 1),
                                             fx.h(1, 0), fx.h(1, 1)}),
                    "quadratic"};
    auto v = is_harmonic_jet(j, g, x);
    CHECK(v.certificate == laplacian(f, g, x));
}

TEST_CASE("levi-civita transport preserves the metric, flipped sign breaks it") {
    auto hyp = corpus::hyperbolic_plane<R>();
    std::vector<R> x = {R(1, 2), R(2)};
    CHECK(verify_levicivita(hyp, x));
    CHECK(!verify_levicivita(hyp, x, GammaSign::Flipped));

    auto sk = skew_metric();
    CHECK(verify_levicivita(sk, {R(1), R(1)}));
    CHECK(!verify_levicivita(sk, {R(1), R(1)}, GammaSign::Flipped));

    // On flat space both signs are vacuously fine.
    auto fl = corpus::flat<R>(2);
    CHECK(verify_levicivita(fl, {R(0), R(0)}));
    CHECK(verify_levicivita(fl, {R(0), R(0)}, GammaSign::Flipped));
}

TEST_CASE("neighbour symmetry evidence holds on the corpus metrics") {
    CHECK(lneighbour_symmetry_evidence(corpus::hyperbolic_plane<R>(),
                                       {R(1, 3), R(3, 2)}));
    CHECK(lneighbour_symmetry_evidence(skew_metric(), {R(1), R(2)}));
    CHECK(lneighbour_symmetry_evidence(corpus::flat<R>(3), {R(0), R(1), R(2)}));
}
