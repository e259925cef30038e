#pragma once

// Random generation of generic operators with fully rational exponent
// tables. Exponents are prescribed first (arithmetic progressions with
// prime denominators, which keeps every point non-resonant), then the
// coefficient polynomials are solved for: the map from coefficients to the
// residue characteristic polynomials at all n+1 points is affine-linear,
// because only the companion last column varies. Remaining freedom (the
// isomonodromy directions) is filled with random rationals, and the result
// is rejection-sampled against the exact genericity checks.

#include "fuchs/deformation.hpp"
#include "fuchs/genericity.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/spectral.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace fuchs {

struct PrescribedExponents {
    std::vector<std::vector<Rational>> at; // per point, p_1..p_n then infinity
};

namespace detail {

/// Concatenated non-leading charpoly coefficients of all residues,
/// p_1..p_n then infinity; an affine-linear function of the G coefficients.
inline std::vector<Rational> charpoly_coeff_map(const FuchsianOperator &op) {
    std::vector<Rational> out;
    for (std::size_t j = 1; j <= op.n(); ++j) {
        const Polynomial chi = residue_at(op, j).char_poly;
        for (std::size_t i = 0; i < op.m; ++i) out.push_back(chi.coeff(i));
    }
    const auto inf = infinity_charpoly_coeffs(op);
    out.insert(out.end(), inf.begin(), inf.end());
    return out;
}

} // namespace detail

/// Solves for an operator whose residues have the prescribed eigenvalues.
/// `free_params` (any length; excess ignored, missing treated as zero)
/// selects a point of the solution affine subspace. Returns nullopt when
/// the prescription is inconsistent (e.g. the total exponent sum is off).
inline std::optional<FuchsianOperator> operator_from_exponents(
    std::size_t m, const std::vector<Rational> &punctures, const PrescribedExponents &pre,
    const std::vector<Rational> &free_params = {}) {
    const std::size_t n = punctures.size();
    if (pre.at.size() != n + 1) throw std::invalid_argument("need exponents at n+1 points");
    for (const auto &e : pre.at)
        if (e.size() != m) throw std::invalid_argument("need m exponents per point");

    const detail::CoeffLayout layout(m, n);
    FuchsianOperator base;
    base.m = m;
    base.punctures = punctures;
    base.G.assign(m, Polynomial());

    const std::vector<Rational> f0 = detail::charpoly_coeff_map(base);
    QMatrix lin(f0.size(), layout.total);
    for (std::size_t idx = 0; idx < layout.total; ++idx) {
        std::vector<Rational> v(layout.total, Rational(0));
        v[idx] = Rational(1);
        FuchsianOperator probe = base;
        probe.G = layout.unflatten(v);
        const auto fi = detail::charpoly_coeff_map(probe);
        for (std::size_t r = 0; r < f0.size(); ++r) lin(r, idx) = fi[r] - f0[r];
    }

    std::vector<Rational> target;
    for (const auto &ex : pre.at) {
        Polynomial chi(1);
        for (const auto &mu : ex) chi *= Polynomial({-mu, Rational(1)});
        for (std::size_t i = 0; i < m; ++i) target.push_back(chi.coeff(i));
    }
    for (std::size_t r = 0; r < target.size(); ++r) target[r] -= f0[r];

    const auto particular = lin.solve(target);
    if (!particular) return std::nullopt;
    std::vector<Rational> x = *particular;
    const auto kernel = lin.kernel_basis();
    for (std::size_t k = 0; k < kernel.size() && k < free_params.size(); ++k)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += free_params[k] * kernel[k][i];

    FuchsianOperator op = base;
    op.G = layout.unflatten(x);
    return op;
}

/// Exponents c_j + s_k/q_j at each point with q_j a prime exceeding m and
/// the s_k distinct residues mod q_j, so intra-point differences are never
/// integers; the offset at infinity is chosen to satisfy the global
/// exponent-sum identity. The numerators are randomized: a symmetric
/// progression would let the middle elements sum to total/m, an integer
/// for odd m, defeating the selection-sum condition every time.
inline PrescribedExponents random_exponent_prescription(std::size_t m, std::size_t n,
                                                        std::mt19937_64 &rng) {
    static const long primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    std::vector<long> q;
    for (long p : primes) {
        if ((std::size_t)p > m) q.push_back(p);
        if (q.size() == n + 1) break;
    }
    std::uniform_int_distribution<long> num(-3, 3), den(2, 5);
    const auto steps = [&](long qj) {
        std::vector<long> s;
        std::uniform_int_distribution<long> pick(0, qj - 1);
        while (s.size() < m) {
            const long v = pick(rng);
            bool dup = false;
            for (long x : s) dup = dup || (x == v);
            if (!dup) s.push_back(v);
        }
        return s;
    };
    PrescribedExponents pre;
    Rational total(0);
    for (std::size_t j = 0; j < n; ++j) {
        const Rational c(num(rng), den(rng) * 13);
        std::vector<Rational> ex;
        for (long s : steps(q[j])) {
            ex.push_back(c + Rational(s, q[j]));
            total += ex.back();
        }
        pre.at.push_back(ex);
    }
    const Rational fuchs(((long)n - 1) * (long)m * ((long)m - 1), 2);
    const std::vector<long> s_inf = steps(q[n]);
    Rational tail(0);
    for (long s : s_inf) tail += Rational(s, q[n]);
    const Rational c_inf = (fuchs - total - tail) / Rational((long)m);
    std::vector<Rational> ex;
    for (long s : s_inf) ex.push_back(c_inf + Rational(s, q[n]));
    pre.at.push_back(ex);
    return pre;
}

struct FuzzedOperator {
    FuchsianOperator op;
    PrescribedExponents prescribed;
    std::size_t attempts = 0;
};

/// A random valid operator with rational, non-resonant, fully generic
/// exponents. Throws after `max_attempts` rejections (with sane parameters
/// acceptance is high; exhaustion indicates a bug).
inline FuzzedOperator random_generic_operator(std::size_t m, std::size_t n, std::mt19937_64 &rng,
                                              std::size_t max_attempts = 64) {
    std::uniform_int_distribution<long> pz(-6, 6), fp_num(-4, 4), fp_den(1, 4);
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<Rational> punctures;
        while (punctures.size() < n) {
            const Rational p(pz(rng));
            bool dup = false;
            for (const auto &x : punctures) dup = dup || (x == p);
            if (!dup) punctures.push_back(p);
        }
        const PrescribedExponents pre = random_exponent_prescription(m, n, rng);
        std::vector<Rational> free_params;
        for (std::size_t i = 0; i < dims(m, n).e + 4ul; ++i)
            free_params.emplace_back(fp_num(rng), fp_den(rng));
        auto op = operator_from_exponents(m, punctures, pre, free_params);
        if (!op) continue;
        if (!validate_fuchs(*op).accepted) continue;
        const ExponentTable table = exponent_table(*op);
        if (!table.all_split()) continue;
        // confirm the prescription was hit exactly
        bool hit = true;
        for (std::size_t pi = 0; pi < table.points(); ++pi) {
            std::vector<Rational> want = pre.at[pi];
            std::sort(want.begin(), want.end());
            hit = hit && (*table.residues[pi].exponents == want);
        }
        if (!hit) continue;
        const GenericityReport rep = genericity_report(table, m);
        if (!rep.generic()) continue;
        return {*op, pre, attempt};
    }
    throw std::runtime_error("random operator generation exhausted its attempts");
}

} // namespace fuchs
