#include "fuchs/genericity.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace fuchs;

namespace {

/// Build a minimal exponent table from explicit per-point exponent lists.
ExponentTable table_from_exponents(const std::vector<std::vector<Rational>> &per_point) {
    ExponentTable t;
    for (const auto &exps : per_point) {
        ResidueData r;
        r.matrix = QMatrix(exps.size(), exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) r.matrix(i, i) = exps[i];
        Polynomial chi(Rational(1));
        for (const auto &mu : exps) chi *= Polynomial::linear_root(mu);
        r.char_poly = chi;
        r.exponents = exps;
        t.residues.push_back(std::move(r));
        t.ordering.push_back(exps);
    }
    return t;
}

/// Brute-force oracle: enumerate every choice of a size-k index subset at
/// every point, for every k in 1..m-1, and look for an integer total.
bool no_integer_sums_bruteforce(const std::vector<std::vector<Rational>> &per_point,
                                std::size_t m) {
    for (std::size_t k = 1; k + 1 <= m; ++k) {
        std::vector<std::vector<std::vector<std::size_t>>> point_subsets;
        for (const auto &exps : per_point) {
            std::vector<std::vector<std::size_t>> subs;
            const std::size_t sz = exps.size();
            for (unsigned long mask = 0; mask < (1ul << sz); ++mask) {
                if (__builtin_popcountl(mask) != (int)k) continue;
                std::vector<std::size_t> s;
                for (std::size_t i = 0; i < sz; ++i)
                    if (mask & (1ul << i)) s.push_back(i);
                subs.push_back(std::move(s));
            }
            point_subsets.push_back(std::move(subs));
        }
        std::vector<std::size_t> pick(per_point.size(), 0);
        while (true) {
            Rational total(0);
            for (std::size_t pi = 0; pi < per_point.size(); ++pi)
                for (auto i : point_subsets[pi][pick[pi]]) total += per_point[pi][i];
            if (total.is_integer()) return false;
            std::size_t pos = 0;
            while (pos < pick.size() && ++pick[pos] == point_subsets[pos].size()) {
                pick[pos] = 0;
                ++pos;
            }
            if (pos == pick.size()) break;
        }
    }
    return true;
}

std::vector<std::vector<Rational>> random_table_exponents(std::size_t m, std::size_t points,
                                                          std::mt19937_64 &rng) {
    std::vector<std::vector<Rational>> out;
    for (std::size_t p = 0; p < points; ++p) {
        std::vector<Rational> exps;
        while (exps.size() < m) {
            const Rational x = testutil::random_rational(rng, 5, 4);
            bool dup = false;
            for (const auto &e : exps) dup = dup || e == x;
            if (!dup) exps.push_back(x);
        }
        out.push_back(std::move(exps));
    }
    return out;
}

} // namespace

TEST_CASE("standard hypergeometric parameters are generic") {
    const auto rep = genericity_report(hypergeometric(Rational(1, 3), Rational(1, 5), Rational(1, 2)));
    CHECK(rep.generic());
    CHECK(rep.all_nonresonant());
    CHECK(rep.integer_sum_free == TriState::yes);
    CHECK(rep.mode == "exact");
    CHECK(rep.resonance_witnesses.empty());
    CHECK_FALSE(rep.sum_witness.has_value());
    CHECK(rep.residues_regular_semisimple());
    CHECK(rep.irreducible());
}

TEST_CASE("hypergeometric with c = 1 is resonant at the origin") {
    // exponents at 0 are {0, 1-c} = {0, 0}
    const auto rep = genericity_report(hypergeometric(Rational(1, 3), Rational(1, 5), Rational(1)));
    CHECK_FALSE(rep.nonresonant[0]);
    CHECK_FALSE(rep.generic());
    REQUIRE_FALSE(rep.resonance_witnesses.empty());
    CHECK(rep.resonance_witnesses[0].point_index == 0);
    CHECK(rep.resonance_witnesses[0].shift == 0);
}

TEST_CASE("integer differences larger than zero are caught with a witness") {
    const auto t = table_from_exponents({{Rational(0), Rational(3)}, {Rational(1, 2), Rational(1, 3)}});
    std::vector<ResonanceWitness> ws;
    const auto ok = check_nonresonance(t, &ws);
    CHECK_FALSE(ok[0]);
    CHECK(ok[1]);
    REQUIRE(ws.size() == 1);
    CHECK(ws[0].shift == 3);
    REQUIRE(ws[0].pair.has_value());
    CHECK(ws[0].pair->second - ws[0].pair->first == Rational(3));
}

TEST_CASE("exact sum decision agrees with brute-force enumeration") {
    std::mt19937_64 rng(103);
    int failures_seen = 0;
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t m = 2 + rep % 2;
        const auto exps = random_table_exponents(m, 3, rng);
        const auto t = table_from_exponents(exps);
        std::optional<SumWitness> w;
        const bool got = check_no_integer_sums_exact(t, m, &w);
        CHECK(got == no_integer_sums_bruteforce(exps, m));
        if (!got) {
            ++failures_seen;
            REQUIRE(w.has_value());
            Rational total(0);
            for (const auto &pt : w->selection)
                for (const auto &x : pt) total += x;
            CHECK(total == w->total);
            CHECK(w->total.is_integer());
            CHECK(w->size >= 1);
            CHECK(w->size < m);
        }
    }
    CHECK(failures_seen > 0); // the sample must exercise both outcomes
}

TEST_CASE("a planted integer selection is found") {
    // picking 1/4 at the first point and 3/4 at the second sums to 1
    const auto t = table_from_exponents(
        {{Rational(1, 4), Rational(1, 3)}, {Rational(3, 4), Rational(1, 5)}});
    std::optional<SumWitness> w;
    CHECK_FALSE(check_no_integer_sums_exact(t, 2, &w));
    REQUIRE(w.has_value());
    CHECK(w->size == 1);
    CHECK(w->total == Rational(1));
}

TEST_CASE("interval mode agrees with exact mode on rational tables") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t m = 2 + rep % 2;
        const auto exps = random_table_exponents(m, 3, rng);
        const auto t = table_from_exponents(exps);
        const bool exact = check_no_integer_sums_exact(t, m);
        std::string reason;
        const TriState iv = check_no_integer_sums_interval(t, m, 256, &reason);
        if (exact) {
            CHECK(iv == TriState::yes);
        } else {
            // a true integer sum can never be certified away
            CHECK(iv != TriState::yes);
        }
    }
}

TEST_CASE("exact mode refuses unsplit tables") {
    FuchsianOperator op;
    op.m = 2;
    op.punctures = {Rational(0), Rational(1)};
    op.G = {Polynomial(), Polynomial(Rational(1))};
    const auto t = exponent_table(op);
    REQUIRE_FALSE(t.all_split());
    CHECK_THROWS_AS(check_no_integer_sums_exact(t, 2), std::invalid_argument);
}

TEST_CASE("interval mode handles irrational real exponents") {
    // golden-ratio exponents at the finite points
    FuchsianOperator op;
    op.m = 2;
    op.punctures = {Rational(0), Rational(1)};
    op.G = {Polynomial(), Polynomial(Rational(1))};
    const auto rep = genericity_report(op);
    CHECK(rep.mode.rfind("interval", 0) == 0);
    if (rep.undecided()) CHECK_FALSE(rep.undecided_reason.empty());
}

TEST_CASE("interval mode reports complex exponents as undecided") {
    FuchsianOperator op;
    op.m = 2;
    op.punctures = {Rational(0), Rational(1)};
    op.G = {Polynomial(), Polynomial(Rational(-1))}; // indicial mu^2 - mu + 1 at 0
    const auto t = exponent_table(op);
    REQUIRE_FALSE(t.all_split());
    std::string reason;
    CHECK(check_no_integer_sums_interval(t, 2, 256, &reason) == TriState::undecided);
    CHECK(reason == "non-real exponents; interval mode covers real roots only");
}
