#include <doctest.h>

#include <random>

#include "jetgeo/jets.hpp"
#include "jetgeo/rational.hpp"
#include "jetgeo/scalar.hpp"

using jetgeo::Rational;

TEST_CASE("rational normalization and ordering") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5) < Rational(-4, 3));
}

TEST_CASE("rational arithmetic stays exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK_THROWS_AS(a / Rational(0), jetgeo::DomainError);

    // 1/3 has no finite binary expansion; a long alternating sum must
    // come back to zero exactly, not approximately.
    Rational acc(0);
    for (int i = 0; i < 1000; ++i) acc += Rational(1, 3);
    for (int i = 0; i < 1000; ++i) acc -= Rational(1, 3);
    CHECK(acc.is_zero());
}

TEST_CASE("rational parsing accepts p, p/q and finite decimals") {
    CHECK(Rational::from_string("7") == Rational(7));
    CHECK(Rational::from_string("-3/9") == Rational(-1, 3));
    CHECK(Rational::from_string("1.25") == Rational(5, 4));
    CHECK(Rational::from_string("-0.5") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::from_string("1/0"), jetgeo::DomainError);
    CHECK_THROWS_AS(Rational::from_string("a"), jetgeo::DomainError);
    CHECK_THROWS_AS(Rational::from_string(""), jetgeo::DomainError);
}

TEST_CASE("rational serialization is p/q with positive q") {
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(5).str() == "5/1");
    CHECK(Rational(0).str() == "0/1");
}

TEST_CASE("exact square roots") {
    CHECK(Rational(4).exact_sqrt() == Rational(2));
    CHECK(Rational(9, 16).exact_sqrt() == Rational(3, 4));
    CHECK(Rational(0).exact_sqrt() == Rational(0));
    CHECK(!Rational(2).exact_sqrt().has_value());
    CHECK(!Rational(1, 3).exact_sqrt().has_value());
    CHECK(!Rational(-4).exact_sqrt().has_value());
}

TEST_CASE("field laws on random triples") {
    std::mt19937_64 rng(7);
    auto pick = [&]() {
        long num = static_cast<long>(rng() % 41) - 20;
        long den = static_cast<long>(rng() % 9) + 1;
        return Rational(num, den);
    };
    for (int rep = 0; rep < 300; ++rep) {
        Rational a = pick(), b = pick(), c = pick();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("scalar traits: exactness flag and zero predicates") {
    CHECK(jetgeo::ScalarTraits<Rational>::exact);
    CHECK(!jetgeo::ScalarTraits<double>::exact);
    CHECK(jetgeo::is_exactly_zero(Rational(0)));
    CHECK(!jetgeo::is_exactly_zero(Rational(1, 1000000)));
    CHECK(jetgeo::is_negligible(Rational(0), 1e-9, 1.0));
    CHECK(!jetgeo::is_negligible(Rational(1, 1000000000000L), 1e-9, 1.0));
    CHECK(jetgeo::is_negligible(1e-12, 1e-9, 1.0));
    CHECK(!jetgeo::is_negligible(1e-3, 1e-9, 1.0));
    // Tolerance scales with the problem size in floating mode.
    CHECK(jetgeo::is_negligible(1e-4, 1e-9, 1e6));
}

TEST_CASE("rational mode rejects transcendental lifts") {
    CHECK(jetgeo::lift(jetgeo::FuncTag::Recip, Rational(4)) == Rational(1, 4));
    CHECK_THROWS_AS(jetgeo::lift(jetgeo::FuncTag::Sin, Rational(0)),
                    jetgeo::ExactModeError);
    CHECK_THROWS_AS(jetgeo::lift(jetgeo::FuncTag::Exp, Rational(1)),
                    jetgeo::ExactModeError);
    CHECK_THROWS_AS(jetgeo::lift(jetgeo::FuncTag::Sqrt, Rational(4)),
                    jetgeo::ExactModeError);
    CHECK(jetgeo::lift(jetgeo::FuncTag::Exp, 0.0) == doctest::Approx(1.0));
}
