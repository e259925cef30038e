#include "fuchs/polynomial.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using fuchs::Polynomial;
using fuchs::Rational;

TEST_CASE("degree and trimming") {
    CHECK(Polynomial().degree() == -1);
    CHECK(Polynomial({Rational(1), Rational(0), Rational(0)}).degree() == 0);
    CHECK(Polynomial::x().degree() == 1);
    CHECK(Polynomial::monomial(5).degree() == 5);
}

TEST_CASE("euclidean division invariant a = qb + r") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const Polynomial a = testutil::random_polynomial(rng, 8);
        Polynomial b = testutil::random_polynomial(rng, 4);
        if (b.is_zero()) b = Polynomial::x();
        const auto [q, r] = Polynomial::divmod(a, b);
        CHECK(a == q * b + r);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("gcd divides both arguments and is monic") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const Polynomial a = testutil::random_polynomial(rng, 6);
        const Polynomial b = testutil::random_polynomial(rng, 6);
        if (a.is_zero() && b.is_zero()) continue;
        const Polynomial g = Polynomial::gcd(a, b);
        CHECK(g.is_monic());
        if (!a.is_zero()) CHECK(g.divides(a));
        if (!b.is_zero()) CHECK(g.divides(b));
    }
}

TEST_CASE("gcd detects planted common factors") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 40; ++i) {
        Polynomial common = testutil::random_polynomial(rng, 3);
        if (common.degree() < 1) common = Polynomial::x() + Polynomial(1);
        const Polynomial a = common * testutil::random_polynomial(rng, 3);
        const Polynomial b = common * testutil::random_polynomial(rng, 3);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(common.monic().divides(Polynomial::gcd(a, b)));
    }
}

TEST_CASE("shift is substitution") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = testutil::random_polynomial(rng, 6);
        const Rational a = testutil::random_rational(rng);
        const Rational z = testutil::random_rational(rng);
        CHECK(p.shift(a)(z) == p(z + a));
    }
}

TEST_CASE("derivative satisfies the product rule") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = testutil::random_polynomial(rng, 5);
        const Polynomial q = testutil::random_polynomial(rng, 5);
        CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
    }
}

TEST_CASE("rational roots by substitution cross-check") {
    // planted roots with nontrivial denominators
    const Polynomial p = Polynomial::linear_root(Rational(2, 3)) *
                         Polynomial::linear_root(Rational(-5, 7)) *
                         Polynomial::linear_root(Rational(4)) * Polynomial(Rational(6));
    const auto roots = fuchs::rational_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == Rational(-5, 7));
    CHECK(roots[1] == Rational(2, 3));
    CHECK(roots[2] == Rational(4));
    for (const auto &r : roots) CHECK(p(r).is_zero());
}

TEST_CASE("rational roots: irreducible quadratics yield nothing") {
    // x^2 + 1 and x^2 - 2
    CHECK(fuchs::rational_roots(Polynomial({Rational(1), Rational(0), Rational(1)})).empty());
    CHECK(fuchs::rational_roots(Polynomial({Rational(-2), Rational(0), Rational(1)})).empty());
}

TEST_CASE("rational roots: every reported root really vanishes, none is missed") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        Polynomial p(Rational(1));
        std::vector<Rational> planted;
        std::uniform_int_distribution<int> k(1, 3);
        const int nroots = k(rng);
        for (int j = 0; j < nroots; ++j) {
            const Rational r = testutil::random_rational(rng, 10, 6);
            planted.push_back(r);
            p *= Polynomial::linear_root(r);
        }
        p *= Polynomial({Rational(3), Rational(0), Rational(1)}); // irreducible factor
        auto found = fuchs::rational_roots(p);
        for (const auto &r : planted) {
            bool present = false;
            for (const auto &f : found) present = present || (f == r);
            CHECK(present);
        }
        for (const auto &f : found) CHECK(p(f).is_zero());
    }
}

TEST_CASE("large coefficient root extraction stays exact") {
    // (x - 10^20/3)(x + 1/10^15)
    const Rational r1(fuchs::Integer("100000000000000000000"), fuchs::Integer(3));
    const Rational r2(fuchs::Integer(-1), fuchs::Integer("1000000000000000"));
    const Polynomial p = Polynomial::linear_root(r1) * Polynomial::linear_root(r2);
    const auto roots = fuchs::rational_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == r2);
    CHECK(roots[1] == r1);
}
