#include "fuchs/gauge.hpp"

#include "fuchs/fuzz.hpp"
#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fuchs;

namespace {

/// A second operator with exactly the same exponents but different free
/// parameters, i.e. a distinct point of the same isomonodromic family.
FuchsianOperator sibling(const FuzzedOperator &fz, std::mt19937_64 &rng) {
    std::uniform_int_distribution<long> fp(-5, 5);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Rational> params;
        for (std::size_t i = 0; i < (std::size_t)dims(fz.op.m, fz.op.n()).e + 4; ++i)
            params.emplace_back(fp(rng), 2);
        const auto other =
            operator_from_exponents(fz.op.m, fz.op.punctures, fz.prescribed, params);
        if (other && other->G != fz.op.G && validate_fuchs(*other).accepted) return *other;
    }
    throw std::runtime_error("could not build a distinct family member");
}

} // namespace

TEST_CASE("self-intertwiners of a generic operator are exactly the scalars") {
    std::mt19937_64 rng(157);
    for (int rep = 0; rep < 8; ++rep) {
        const auto fz = random_generic_operator(2 + rep % 2, 2 + rep % 2, rng);
        const auto sol = gauge_solve(fz.op, fz.op);
        REQUIRE(sol.dimension() == 1);
        // the single basis element is a nonzero multiple of the identity
        const PolyMatrix &g = sol.space[0];
        const Polynomial diag = g(0, 0);
        CHECK_FALSE(diag.is_zero());
        CHECK(diag.degree() == 0);
        for (std::size_t i = 0; i < fz.op.m; ++i)
            for (std::size_t j = 0; j < fz.op.m; ++j)
                CHECK(g(i, j) == (i == j ? diag : Polynomial()));
        CHECK(are_gauge_equivalent(fz.op, fz.op));
    }
}

TEST_CASE("distinct members of one isomonodromic family are never equivalent") {
    std::mt19937_64 rng(163);
    // pairs with a positive-dimensional family, so distinct members exist
    const std::size_t mn[][2] = {{2, 3}, {3, 2}, {2, 4}, {3, 3}};
    for (int rep = 0; rep < 8; ++rep) {
        const auto fz = random_generic_operator(mn[rep % 4][0], mn[rep % 4][1], rng);
        const FuchsianOperator other = sibling(fz, rng);
        // same exponent tables ...
        const auto t1 = exponent_table(fz.op), t2 = exponent_table(other);
        for (std::size_t pi = 0; pi < t1.points(); ++pi)
            CHECK(*t1.residues[pi].exponents == *t2.residues[pi].exponents);
        // ... yet no invertible intertwiner in either direction
        std::string diagnostic;
        CHECK_FALSE(are_gauge_equivalent(fz.op, other, &diagnostic));
        CHECK(diagnostic.empty());
        CHECK_FALSE(are_gauge_equivalent(other, fz.op, &diagnostic));
        CHECK(diagnostic.empty());
    }
}

TEST_CASE("operators with different exponents have no intertwiners at all") {
    const auto op1 = hypergeometric(Rational(1, 3), Rational(1, 5), Rational(1, 2));
    const auto op2 = hypergeometric(Rational(1, 7), Rational(2, 5), Rational(1, 2));
    const auto sol = gauge_solve(op1, op2);
    CHECK(sol.dimension() == 0);
    CHECK_FALSE(are_gauge_equivalent(op1, op2));
}

TEST_CASE("every reported intertwiner satisfies the equation verbatim") {
    std::mt19937_64 rng(167);
    const auto fz = random_generic_operator(3, 2, rng);
    const auto sol = gauge_solve(fz.op, fz.op);
    for (const auto &g : sol.space) {
        const PolyMatrix defect = detail::gauge_residual(fz.op, fz.op, g);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(defect(i, j).is_zero());
        // pattern respected
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (sol.pattern[i][j] < 0)
                    CHECK(g(i, j).is_zero());
                else
                    CHECK(g(i, j).degree() <= sol.pattern[i][j]);
            }
    }
}

TEST_CASE("equivalence implies equality on fuzzed pairs") {
    std::mt19937_64 rng(173);
    for (int rep = 0; rep < 10; ++rep) {
        const auto fz = random_generic_operator(2, 3 + rep % 2, rng);
        const FuchsianOperator other = sibling(fz, rng);
        std::string diagnostic;
        const bool eq = are_gauge_equivalent(fz.op, other, &diagnostic);
        CHECK(diagnostic.empty());       // verdict must agree with G-equality
        CHECK(eq == (fz.op.G == other.G));
    }
}

TEST_CASE("invertible-element search") {
    GaugeSolution sol;
    CHECK_FALSE(find_invertible(sol).has_value());
    // a one-element space with zero diagonal cannot contain an invertible g
    PolyMatrix nilp(2, 2);
    nilp(0, 1) = Polynomial(Rational(1));
    sol.space.push_back(nilp);
    CHECK_FALSE(find_invertible(sol).has_value());
    // adding the identity makes one findable
    sol.space.push_back(PolyMatrix::identity(2));
    const auto g = find_invertible(sol);
    REQUIRE(g.has_value());
    CHECK_FALSE((*g)(0, 0).coeff(0).is_zero());
    CHECK_FALSE((*g)(1, 1).coeff(0).is_zero());
}

TEST_CASE("mismatched supports are rejected") {
    const auto op1 = hypergeometric(Rational(1, 3), Rational(1, 5), Rational(1, 2));
    FuchsianOperator op2 = op1;
    op2.punctures = {Rational(0), Rational(3)};
    CHECK_THROWS_AS(gauge_solve(op1, op2), std::invalid_argument);
}
