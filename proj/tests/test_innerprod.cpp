#include <doctest.h>

#include <random>
#include <vector>

#include "jetgeo/innerprod.hpp"

using namespace jetgeo;
using R = Rational;

namespace {

std::mt19937_64 rng(31);

Mat<R> random_upper_factor(std::size_t n) {
    const R diag[] = {R(1), R(2), R(1, 2), R(3, 2), R(3)};
    Mat<R> s = Mat<R>::zero(n, n, R(0));
    for (std::size_t i = 0; i < n; ++i) {
        s.at(i, i) = diag[rng() % 5];
        for (std::size_t j = i + 1; j < n; ++j)
            s.at(i, j) = R(static_cast<long>(rng() % 7) - 3,
                           static_cast<long>(rng() % 3) + 1);
    }
    return s;
}

InnerProduct<R> gram_from(const Mat<R>& s) {
    return InnerProduct<R>(transpose(s) * s);
}

Lap<R> generator(std::size_t n, std::size_t i) {
    Lap<R> d = Lap<R>::constant(n, R(0));
    d.grad[i] = R(1);
    return d;
}

Lap<R> sigma_elem(std::size_t n) {
    Lap<R> s = Lap<R>::constant(n, R(0));
    s.sigma = R(1);
    return s;
}

} // namespace

TEST_CASE("cholesky on diagonal and identity grams") {
    auto id = InnerProduct<R>::standard(3);
    CHECK(cholesky(id) == Mat<R>::identity(3, R(1)));

    InnerProduct<R> diag(Mat<R>::from_rows(2, 2, {R(4), R(0), R(0), R(9)}));
    Mat<R> s = cholesky(diag);
    CHECK(s.at(0, 0) == R(2));
    CHECK(s.at(1, 1) == R(3));
    CHECK(s.at(0, 1) == R(0));
    CHECK(s.at(1, 0) == R(0));
}

TEST_CASE("cholesky failure modes") {
    InnerProduct<R> indef(Mat<R>::from_rows(2, 2, {R(1), R(2), R(2), R(1)}));
    CHECK_THROWS_AS(cholesky(indef), NotPositiveDefinite);

    InnerProduct<R> irr(Mat<R>::from_rows(2, 2, {R(2), R(0), R(0), R(2)}));
    CHECK_THROWS_AS(cholesky(irr), IrrationalCholesky);

    // The same gram factors fine in floating mode.
    InnerProduct<double> irr_f(
        Mat<double>::from_rows(2, 2, {2.0, 0.0, 0.0, 2.0}));
    Mat<double> sf = cholesky(irr_f);
    CHECK(sf.at(0, 0) == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(
        InnerProduct<R>(Mat<R>::from_rows(2, 2, {R(1), R(2), R(3), R(1)})),
        DomainError);
}

TEST_CASE("cholesky recovers a planted upper-triangular factor") {
    // R^T R factorization with positive diagonal is unique, so planting
    // S and factoring S^T S must return S itself, exactly.
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 25; ++rep) {
            Mat<R> s = random_upper_factor(n);
            CHECK(cholesky(gram_from(s)) == s);
        }
    }
}

TEST_CASE("probe vectors: squared length n sigma, orthonormal coordinates") {
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 15; ++rep) {
            InnerProduct<R> ip = gram_from(random_upper_factor(n));
            std::vector<Lap<R>> u = lsmall_probe(ip);
            Lap<R> uu = ip.eval(u, u);
            Lap<R> want = Lap<R>::constant(n, R(0));
            want.sigma = R(static_cast<long>(n));
            CHECK(uu == want);
            CHECK(is_lsmall(u, ip));
        }
    }
}

TEST_CASE("probe on the standard gram is the generator tuple") {
    auto ip = InnerProduct<R>::standard(2);
    std::vector<Lap<R>> u = lsmall_probe(ip);
    CHECK(u[0] == generator(2, 0));
    CHECK(u[1] == generator(2, 1));
    CHECK(lsmall_coordinate_relations(u));
}

TEST_CASE("non-examples of L-smallness") {
    auto ip = InnerProduct<R>::standard(2);
    // (d0 + d1, 0): square norm 2 sigma concentrated on one coordinate.
    std::vector<Lap<R>> w = {generator(2, 0) + generator(2, 1),
                             Lap<R>::constant(2, R(0))};
    CHECK(!is_lsmall(w, ip));
    CHECK(!lsmall_coordinate_relations(w));

    // Unequal squares fail the coordinate relations.
    std::vector<Lap<R>> v = {generator(2, 0) + generator(2, 0), generator(2, 1)};
    CHECK(!lsmall_coordinate_relations(v));

    // Scaling an L-small vector keeps it L-small.
    std::vector<Lap<R>> u = lsmall_probe(ip);
    for (auto& c : u) c = scale(c, R(-3, 2));
    CHECK(is_lsmall(u, ip));
}

TEST_CASE("sum criterion matches direct L-smallness of the sum") {
    // Vectors with orthonormal coordinates Q·(d_0, ..., d_{n-1}) are
    // L-small for any orthogonal Q; whether a sum of two stays L-small is
    // exactly what the pairing criterion decides.
    for (std::size_t n : {2u, 3u}) {
        for (int rep = 0; rep < 20; ++rep) {
            InnerProduct<R> ip = gram_from(random_upper_factor(n));
            Mat<R> f = inverse(cholesky(ip));
            auto from_frame = [&](const Mat<R>& q) {
                Mat<R> fq = f * q;
                std::vector<Lap<R>> w(n, Lap<R>::constant(n, R(0)));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t b = 0; b < n; ++b) w[i].grad[b] = fq.at(i, b);
                return w;
            };
            auto vsum = [&](const std::vector<Lap<R>>& x, const std::vector<Lap<R>>& y) {
                std::vector<Lap<R>> s = x;
                for (std::size_t i = 0; i < n; ++i) s[i] += y[i];
                return s;
            };
            std::vector<Lap<R>> a = lsmall_probe(ip);

            // Scalar multiples always pass, in any dimension.
            std::vector<Lap<R>> m = a;
            for (auto& c : m) c = scale(c, R(3, 2));
            CHECK(sum_lsmall_condition(a, m, ip));
            CHECK(is_lsmall(vsum(a, m), ip));

            // Swapping two orthonormal coordinates keeps each summand
            // L-small but breaks the sum.
            Mat<R> swp = Mat<R>::identity(n, R(1));
            swp.at(0, 0) = R(0);
            swp.at(0, 1) = R(1);
            swp.at(1, 0) = R(1);
            swp.at(1, 1) = R(0);
            std::vector<Lap<R>> c = from_frame(swp);
            CHECK(is_lsmall(c, ip));
            CHECK(!sum_lsmall_condition(a, c, ip));
            CHECK(!is_lsmall(vsum(a, c), ip));

            // A plane rotation: compatible with the probe only when the
            // plane is the whole space.
            Mat<R> rot = Mat<R>::identity(n, R(1));
            rot.at(0, 0) = R(0);
            rot.at(0, 1) = R(-1);
            rot.at(1, 0) = R(1);
            rot.at(1, 1) = R(0);
            std::vector<Lap<R>> b = from_frame(rot);
            CHECK(is_lsmall(b, ip));
            CHECK(sum_lsmall_condition(a, b, ip) == (n == 2));
            CHECK(is_lsmall(vsum(a, b), ip) == (n == 2));
        }
    }
}

TEST_CASE("trace-zero self-adjoint basis has the right shape") {
    auto b2 = tracezero_selfadjoint_basis<R>(2);
    REQUIRE(b2.size() == 2);
    CHECK(b2[0] == Mat<R>::from_rows(2, 2, {R(0), R(1), R(1), R(0)}));
    CHECK(b2[1] == Mat<R>::from_rows(2, 2, {R(1), R(0), R(0), R(-1)}));

    auto b3 = tracezero_selfadjoint_basis<R>(3);
    CHECK(b3.size() == 5);
    for (const auto& m : b3) {
        R tr(0);
        for (std::size_t i = 0; i < 3; ++i) tr += m.at(i, i);
        CHECK(tr.is_zero());
        CHECK(m == transpose(m));
    }
}

TEST_CASE("pairing of an endomorphism against the probe picks out the trace") {
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + rng() % 3;
        InnerProduct<R> ip = gram_from(random_upper_factor(n));
        std::vector<Lap<R>> u = lsmall_probe(ip);
        Mat<R> l = Mat<R>::zero(n, n, R(0));
        for (auto& e : l.a)
            e = R(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
        R tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += l.at(i, i);

        Lap<R> got = ip.eval(mat_vec(l, u), u);
        Lap<R> want = scale(sigma_elem(n), tr);
        CHECK(got == want);
    }
}

TEST_CASE("semi-conformal classification of explicit matrices") {
    auto ip2 = InnerProduct<R>::standard(2);
    CheckOptions opts;

    auto conf = semiconformal_matrix(
        Mat<R>::from_rows(2, 2, {R(3), R(4), R(4), R(-3)}), ip2, ip2, opts);
    CHECK(conf.is_semiconformal);
    CHECK(*conf.dilation == R(25));

    auto ident = semiconformal_matrix(Mat<R>::identity(2, R(1)), ip2, ip2, opts);
    CHECK(ident.is_semiconformal);
    CHECK(*ident.dilation == R(1));

    auto aniso = semiconformal_matrix(
        Mat<R>::from_rows(2, 2, {R(1), R(0), R(0), R(2)}), ip2, ip2, opts);
    CHECK(!aniso.is_semiconformal);
    CHECK(!aniso.dilation.has_value());
    CHECK(aniso.worst_defect == R(3));

    // A surjective row always qualifies when the codomain is a line.
    auto ip1 = InnerProduct<R>::standard(1);
    auto row = semiconformal_matrix(
        Mat<R>::from_rows(1, 2, {R(1), R(1)}), ip2, ip1, opts);
    CHECK(row.is_semiconformal);
    CHECK(*row.dilation == R(2));
}

TEST_CASE("rank-deficient matrices are rejected, not classified") {
    auto ip2 = InnerProduct<R>::standard(2);
    auto ip3 = InnerProduct<R>::standard(3);
    CHECK_THROWS_AS(semiconformal_matrix(
                        Mat<R>::from_rows(2, 2, {R(1), R(1), R(2), R(2)}),
                        ip2, ip2, CheckOptions{}),
                    RankDeficient);
    // m > n can never have full row rank.
    CHECK_THROWS_AS(semiconformal_matrix(
                        Mat<R>::from_rows(3, 2, {R(1), R(0), R(0), R(1), R(1), R(1)}),
                        ip2, ip3, CheckOptions{}),
                    RankDeficient);
}

TEST_CASE("semi-conformality is frame-invariant") {
    // Plant a conformal block in orthonormal frames of random grams and
    // pull it back; the classification and dilation must survive.
    for (int rep = 0; rep < 20; ++rep) {
        Mat<R> sd = random_upper_factor(2);
        Mat<R> sc = random_upper_factor(2);
        InnerProduct<R> dom = gram_from(sd);
        InnerProduct<R> cod = gram_from(sc);
        R p(static_cast<long>(rng() % 5) - 2), q(static_cast<long>(rng() % 5) - 2);
        if (p.is_zero() && q.is_zero()) p = R(1);
        Mat<R> block = Mat<R>::from_rows(2, 2, {p, q, -q, p});
        Mat<R> a = inverse(sc) * block * sd;
        auto rep_sc = semiconformal_matrix(a, dom, cod, CheckOptions{});
        CHECK(rep_sc.is_semiconformal);
        CHECK(*rep_sc.dilation == p * p + q * q);

        Mat<R> bad = Mat<R>::from_rows(2, 2, {p, q, q, p});
        if (!(q.is_zero() || p.is_zero() || p == q || p == -q)) {
            auto rep_bad = semiconformal_matrix(inverse(sc) * bad * sd, dom, cod,
                                                CheckOptions{});
            CHECK(!rep_bad.is_semiconformal);
        }
    }
}
