#pragma once

// Gauge equivalence of two companion-form connections with the same
// punctures. The intertwiners live in a triangular polynomial pattern fixed
// by the lattice degrees; the intertwining equation is solved exactly as
// one linear system in the pattern coefficients, and solutions are then
// filtered by regularity in the infinity chart.
//
// Indexing note: with matrices in the stored convention (d w_k = sum_j
// M_{jk} w_j dz) the admissible intertwiners occupy the upper triangle
// i <= j with deg g_{ij} <= (j-i)(n-1) and constant diagonal; in the honest
// column-vector convention the same pattern reads lower triangular. The
// equivalence verdicts do not depend on this bookkeeping choice.

#include "fuchs/connection.hpp"
#include "fuchs/matrix.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/polymatrix.hpp"
#include "fuchs/ratfun.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fuchs {

struct GaugeSolution {
    std::vector<PolyMatrix> space;              // basis of admissible intertwiners
    std::vector<std::vector<long>> pattern;     // degree bound per entry, -1 = forced zero
    std::size_t discarded_at_infinity = 0;      // solution dims lost to the regularity filter

    long dimension() const { return (long)space.size(); }
};

namespace detail {

inline std::vector<std::vector<long>> gauge_pattern(std::size_t m, std::size_t n) {
    std::vector<std::vector<long>> p(m, std::vector<long>(m, -1));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) p[i][j] = (long)((j - i) * (n - 1));
    return p;
}

struct GaugeLayout {
    std::size_t m;
    std::vector<std::vector<long>> pattern;
    // slot -> (i, j, degree)
    struct Slot { std::size_t i, j, d; };
    std::vector<Slot> slots;

    GaugeLayout(std::size_t m_, std::size_t n) : m(m_), pattern(gauge_pattern(m_, n)) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                for (long d = 0; d <= pattern[i][j]; ++d)
                    slots.push_back({i, j, (std::size_t)d});
    }
    PolyMatrix unflatten(const std::vector<Rational> &v) const {
        PolyMatrix g(m, m);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (!v[s].is_zero())
                g(slots[s].i, slots[s].j) += Polynomial::monomial(slots[s].d, v[s]);
        return g;
    }
};

/// psi g' - A2 g + g A1, the defect of the intertwining equation.
inline PolyMatrix gauge_residual(const FuchsianOperator &op1, const FuchsianOperator &op2,
                                 const PolyMatrix &g) {
    const PolyMatrix a1 = companion_matrix(op1), a2 = companion_matrix(op2);
    PolyMatrix r = g.derivative();
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) r(i, j) *= op1.psi();
    return r - a2 * g + g * a1;
}

} // namespace detail

/// Basis of polynomial intertwiners g with psi g' = A_2 g - g A_1, matching
/// the triangular degree pattern and regular in the infinity chart.
inline GaugeSolution gauge_solve(const FuchsianOperator &op1, const FuchsianOperator &op2) {
    if (op1.m != op2.m || op1.punctures != op2.punctures)
        throw std::invalid_argument("gauge requires equal order and punctures");
    const std::size_t m = op1.m, n = op1.n();
    const detail::GaugeLayout layout(m, n);

    // residual of each unit pattern coefficient; the map is linear in g
    std::vector<PolyMatrix> images;
    long maxdeg = 0;
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
        std::vector<Rational> unit(layout.slots.size(), Rational(0));
        unit[s] = Rational(1);
        images.push_back(detail::gauge_residual(op1, op2, layout.unflatten(unit)));
        maxdeg = std::max(maxdeg, images.back().max_degree());
    }
    QMatrix sys(m * m * (std::size_t)(maxdeg + 1), layout.slots.size());
    for (std::size_t s = 0; s < images.size(); ++s)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (long d = 0; d <= maxdeg; ++d)
                    sys((i * m + j) * (std::size_t)(maxdeg + 1) + (std::size_t)d, s) =
                        images[s](i, j).coeff((std::size_t)d);
    const auto candidates = sys.kernel_basis();

    GaugeSolution out;
    out.pattern = layout.pattern;
    if (candidates.empty()) return out;

    // regularity in the infinity chart: the transported gtilde = U g U^{-1}
    // must be holomorphic at zeta = 0; its singular Laurent coefficients are
    // linear functionals of g, so filter by a second kernel computation
    const RatMatrix u = endo_transition(op1);
    const RatMatrix uinv = u.inverse();
    std::vector<RatMatrix> transported;
    long worst_pole = 0;
    for (const auto &c : candidates) {
        transported.push_back(u * RatMatrix::from_poly(layout.unflatten(c)) * uinv);
        worst_pole = std::max(worst_pole, transported.back().pole_order_at_infinity());
    }
    std::vector<std::vector<Rational>> basis;
    if (worst_pole <= 0) {
        basis = candidates;
    } else {
        QMatrix reg(m * m * (std::size_t)worst_pole, candidates.size());
        for (std::size_t c = 0; c < candidates.size(); ++c)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const auto series = transported[c](i, j).laurent_at_infinity(-1);
                    for (const auto &[k, a] : series)
                        reg((i * m + j) * (std::size_t)worst_pole + (std::size_t)(-k - 1), c) = a;
                }
        for (const auto &combo : reg.kernel_basis()) {
            std::vector<Rational> v(layout.slots.size(), Rational(0));
            for (std::size_t c = 0; c < candidates.size(); ++c)
                for (std::size_t s = 0; s < v.size(); ++s) v[s] += combo[c] * candidates[c][s];
            basis.push_back(std::move(v));
        }
        out.discarded_at_infinity = candidates.size() - basis.size();
    }
    for (const auto &v : basis) out.space.push_back(layout.unflatten(v));

    // independent re-check over the rational function field
    const RationalFunction psi{op1.psi(), Polynomial(1)};
    const RatMatrix ra1 = RatMatrix::from_poly(companion_matrix(op1));
    const RatMatrix ra2 = RatMatrix::from_poly(companion_matrix(op2));
    for (const auto &g : out.space) {
        const RatMatrix rg = RatMatrix::from_poly(g);
        const RatMatrix defect = psi * rg.derivative() - ra2 * rg + rg * ra1;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!defect(i, j).is_zero())
                    throw std::logic_error("internal error: intertwiner fails symbolic re-check");
        if ((u * rg * uinv).pole_order_at_infinity() > 0)
            throw std::logic_error("internal error: intertwiner singular at infinity");
    }
    return out;
}

/// An invertible element of the solution space, when one exists. The
/// determinant of a pattern matrix is the product of its constant diagonal
/// entries, so invertibility only needs every diagonal entry nonzero;
/// generic small-integer combinations of the basis achieve this whenever
/// no diagonal functional vanishes identically on the space.
inline std::optional<PolyMatrix> find_invertible(const GaugeSolution &sol) {
    if (sol.space.empty()) return std::nullopt;
    const std::size_t m = sol.space[0].rows(), nb = sol.space.size();
    for (std::size_t d = 0; d < m; ++d) {
        bool nonzero = false;
        for (const auto &g : sol.space)
            if (!g(d, d).coeff(0).is_zero()) { nonzero = true; break; }
        if (!nonzero) return std::nullopt;
    }
    // each diagonal entry of sum t^c b_c is a nonzero polynomial in t of
    // degree < nb, so some t in [1, m (nb-1) + 1] avoids all m root sets
    for (long t = 1; t <= (long)(m * nb) + 1; ++t) {
        PolyMatrix g(m, m);
        Rational tp(1);
        for (const auto &b : sol.space) {
            g = g + tp * b;
            tp *= Rational(t);
        }
        bool ok = true;
        for (std::size_t d = 0; d < m; ++d)
            if (g(d, d).coeff(0).is_zero()) { ok = false; break; }
        if (ok) return g;
    }
    return std::nullopt;
}

/// True iff an invertible intertwiner exists. Rigidity says this happens
/// exactly when the operators are equal; a mismatch between the two answers
/// would contradict that and is surfaced through `diagnostic`, never
/// papered over.
inline bool are_gauge_equivalent(const FuchsianOperator &op1, const FuchsianOperator &op2,
                                 std::string *diagnostic = nullptr) {
    const GaugeSolution sol = gauge_solve(op1, op2);
    const bool equivalent = find_invertible(sol).has_value();
    const bool equal = (op1.G == op2.G);
    if (equivalent != equal && diagnostic)
        *diagnostic = std::string("rigidity violated: operators are ") +
                      (equal ? "equal" : "distinct") + " but gauge solver found " +
                      (equivalent ? "an invertible" : "no invertible") + " intertwiner";
    return equivalent;
}

inline nlohmann::json gauge_to_json(const GaugeSolution &sol, bool equivalent) {
    nlohmann::json j;
    j["equivalent"] = equivalent;
    j["dimension"] = sol.dimension();
    j["discarded_at_infinity"] = sol.discarded_at_infinity;
    nlohmann::json pat = nlohmann::json::array();
    for (const auto &row : sol.pattern) pat.push_back(row);
    j["pattern"] = pat;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto &g : sol.space) basis.push_back(polymatrix_to_json(g));
    j["basis"] = basis;
    return j;
}

} // namespace fuchs
