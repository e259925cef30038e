#include "fuchs/fuzz.hpp"

#include "fuchs/genericity.hpp"
#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace fuchs;

TEST_CASE("the exponent solver hits a hand-written prescription exactly") {
    PrescribedExponents pre;
    pre.at = {{Rational(1, 5), Rational(2, 5)},
              {Rational(1, 7), Rational(3, 7)},
              {Rational(-8, 35), Rational(2, 35)}};
    // total sum must equal (n-1)m(m-1)/2 = 1 for m = 2, n = 2
    Rational total(0);
    for (const auto &pt : pre.at)
        for (const auto &x : pt) total += x;
    REQUIRE(total == Rational(1));
    const auto op = operator_from_exponents(2, {Rational(0), Rational(1)}, pre);
    REQUIRE(op.has_value());
    CHECK(validate_fuchs(*op).accepted);
    const auto t = exponent_table(*op);
    REQUIRE(t.all_split());
    for (std::size_t pi = 0; pi < 3; ++pi) {
        auto want = pre.at[pi];
        std::sort(want.begin(), want.end());
        CHECK(*t.residues[pi].exponents == want);
    }
}

TEST_CASE("an impossible prescription is rejected, not approximated") {
    // sum != Fuchs total: no operator can have these exponents
    PrescribedExponents pre;
    pre.at = {{Rational(1, 5), Rational(2, 5)},
              {Rational(1, 7), Rational(3, 7)},
              {Rational(1, 3), Rational(1, 2)}};
    CHECK_FALSE(operator_from_exponents(2, {Rational(0), Rational(1)}, pre).has_value());
}

TEST_CASE("prescription shape errors throw") {
    PrescribedExponents pre;
    pre.at = {{Rational(0), Rational(1, 2)}, {Rational(0), Rational(1, 3)}};
    CHECK_THROWS_AS(operator_from_exponents(2, {Rational(0), Rational(1)}, pre),
                    std::invalid_argument); // needs n+1 = 3 point lists
    pre.at.push_back({Rational(1, 5)});
    CHECK_THROWS_AS(operator_from_exponents(2, {Rational(0), Rational(1)}, pre),
                    std::invalid_argument); // needs m = 2 exponents per point
}

TEST_CASE("random prescriptions satisfy the structural invariants") {
    std::mt19937_64 rng(227);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t m = 2 + rep % 2, n = 2 + rep % 3;
        const auto pre = random_exponent_prescription(m, n, rng);
        REQUIRE(pre.at.size() == n + 1);
        Rational total(0);
        for (const auto &pt : pre.at) {
            REQUIRE(pt.size() == m);
            // intra-point differences are never integers
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b)
                    CHECK_FALSE((pt[a] - pt[b]).is_integer());
            for (const auto &x : pt) total += x;
        }
        CHECK(total == Rational(((long)n - 1) * (long)m * ((long)m - 1), 2));
    }
}

TEST_CASE("fuzzed operators are valid, split, generic, and honor their prescription") {
    std::mt19937_64 rng(229);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t m = 2 + rep % 2, n = 2 + rep % 2;
        const auto fz = random_generic_operator(m, n, rng);
        CHECK(validate_fuchs(fz.op).accepted);
        const auto t = exponent_table(fz.op);
        REQUIRE(t.all_split());
        for (std::size_t pi = 0; pi < t.points(); ++pi) {
            auto want = fz.prescribed.at[pi];
            std::sort(want.begin(), want.end());
            CHECK(*t.residues[pi].exponents == want);
        }
        CHECK(genericity_report(t, m).generic());
        CHECK(fz.attempts >= 1);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    std::mt19937_64 rng1(233), rng2(233), rng3(239);
    const auto a = random_generic_operator(3, 2, rng1);
    const auto b = random_generic_operator(3, 2, rng2);
    const auto c = random_generic_operator(3, 2, rng3);
    CHECK(a.op.G == b.op.G);
    CHECK(a.op.punctures == b.op.punctures);
    CHECK((a.op.G != c.op.G || a.op.punctures != c.op.punctures));
}

TEST_CASE("free parameters move along the family without changing exponents") {
    std::mt19937_64 rng(241);
    const auto fz = random_generic_operator(2, 3, rng);
    const auto other = operator_from_exponents(
        2, fz.op.punctures, fz.prescribed,
        {Rational(9, 2), Rational(-7, 3), Rational(5), Rational(1, 4), Rational(2), Rational(3)});
    REQUIRE(other.has_value());
    const auto t1 = exponent_table(fz.op), t2 = exponent_table(*other);
    for (std::size_t pi = 0; pi < t1.points(); ++pi)
        CHECK(t1.residues[pi].char_poly == t2.residues[pi].char_poly);
}
