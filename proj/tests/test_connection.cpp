#include "fuchs/connection.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fuchs;

TEST_CASE("modified companion matrix, m = 2") {
    FuchsianOperator op;
    op.m = 2;
    op.punctures = {Rational(0), Rational(1)};
    op.G = {Polynomial({Rational(1)}), Polynomial({Rational(2)})};
    const PolyMatrix a = companion_matrix(op);
    // [[0, G_2], [1, G_1 + psi']]
    CHECK(a(0, 0) == Polynomial());
    CHECK(a(0, 1) == op.G[1]);
    CHECK(a(1, 0) == Polynomial(1));
    CHECK(a(1, 1) == op.G[0] + op.psi_prime());
}

TEST_CASE("modified companion matrix, m = 3 structure") {
    std::mt19937_64 rng(67);
    const auto op = testutil::random_valid_operator(3, 3, rng);
    const PolyMatrix a = companion_matrix(op);
    const Polynomial dpsi = op.psi_prime();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j + 1 < 3; ++j) {
            if (j + 1 == i)
                CHECK(a(i, j) == Polynomial(1)); // subdiagonal
            else if (i == j && i >= 1)
                CHECK(a(i, j) == Rational((long)i) * dpsi); // diagonal psi'-multiples
            else
                CHECK(a(i, j) == Polynomial());
        }
    CHECK(a(0, 2) == op.G[2]);
    CHECK(a(1, 2) == op.G[1]);
    CHECK(a(2, 2) == op.G[0] + Rational(2) * dpsi);
}

TEST_CASE("first-order system reproduces the scalar equation in jet variables") {
    std::mt19937_64 rng(71);
    for (std::size_t m = 2; m <= 4; ++m)
        for (std::size_t n = 2; n <= 3; ++n)
            for (int rep = 0; rep < 3; ++rep)
                CHECK(testutil::companion_intertwines(testutil::random_valid_operator(m, n, rng)));
}

TEST_CASE("integer triangle of the infinity frame") {
    const auto a = infinity_lattice_coeffs(4);
    // zeta^j d^j/dzeta^j expanded in powers of (-z) d/dz:
    //   j=1: -z w',  j=2: -2 (-z) w' + (-z)^2 w''
    CHECK(a[0][0] == 1);
    CHECK(a[1][0] == 0);
    CHECK(a[1][1] == 1);
    CHECK(a[2][1] == -2);
    CHECK(a[2][2] == 1);
    // recursion re-check, independently
    for (std::size_t j = 1; j < 4; ++j)
        for (std::size_t kappa = 0; kappa <= j; ++kappa) {
            Integer expect = 0;
            if (kappa >= 1) expect += a[j - 1][kappa - 1];
            if (kappa < j) expect -= Integer((long)(kappa + j - 1)) * a[j - 1][kappa];
            CHECK(a[j][kappa] == expect);
        }
}

TEST_CASE("trivial equation w'' = 0 has the textbook infinity residue") {
    FuchsianOperator op;
    op.m = 2;
    op.punctures = {Rational(0), Rational(1)};
    op.G = {Polynomial(), Polynomial()};
    const QMatrix r = infinity_residue_matrix(infinity_connection_matrix(op));
    CHECK(r(0, 0) == Rational(0));
    CHECK(r(0, 1) == Rational(0));
    CHECK(r(1, 0) == Rational(1));
    CHECK(r(1, 1) == Rational(-1));
}

TEST_CASE("infinity chart is logarithmic for every valid operator") {
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 25; ++rep) {
        const auto op = testutil::random_valid_operator(2 + rep % 3, 2 + rep % 3, rng);
        const RatMatrix atilde = infinity_connection_matrix(op);
        CHECK(atilde.pole_order_at_infinity() <= 1);
    }
}

TEST_CASE("gluing consistency: transported connection matches the direct formula") {
    // Atilde was built as U (-z^2 A / psi) U^{-1} - U'_zeta U^{-1}; re-derive
    // it through the frame transition T instead and compare Laurent data.
    std::mt19937_64 rng(79);
    for (int rep = 0; rep < 6; ++rep) {
        const auto op = testutil::random_valid_operator(2 + rep % 2, 2 + rep % 2, rng);
        const RatMatrix atilde = infinity_connection_matrix(op);
        // independent route: in the stored convention, conjugation by
        // U = (T^{-1})^t is equivalent to the T-frame change computed on the
        // transpose side; verify  dT/dzeta + (A/psi . dz/dzeta)-transport:
        //   Atilde^t = T (-z^2 A^t / psi) T^{-1} + (dT/dzeta) T^{-1}
        const RatMatrix t = frame_transition(op);
        const RatMatrix tinv = t.inverse();
        const RationalFunction mz2(Polynomial({Rational(0), Rational(0), Rational(-1)}));
        const RationalFunction inv_psi(Polynomial(1), op.psi());
        const RatMatrix a_t =
            RatMatrix::from_poly(companion_matrix(op).transpose());
        const RatMatrix direct = t * (mz2 * (inv_psi * a_t)) * tinv + zeta_derivative(t) * tinv;
        const long trunc = 2 * (long)op.m * ((long)op.n() + 1);
        for (std::size_t i = 0; i < op.m; ++i)
            for (std::size_t j = 0; j < op.m; ++j) {
                const auto lhs = atilde(j, i).laurent_at_infinity(trunc);
                const auto rhs = direct(i, j).laurent_at_infinity(trunc);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("bundle degree formula") {
    CHECK(bundle_degree(2, 2) == -1);
    CHECK(bundle_degree(2, 3) == -2);
    CHECK(bundle_degree(3, 2) == -3);
    CHECK(bundle_degree(5, 6) == -50);
}
