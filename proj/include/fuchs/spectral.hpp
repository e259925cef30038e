#pragma once

// Residues of the connection at the n+1 singular points, their eigenvalues
// (the local exponents), the classical Frobenius indicial polynomial as an
// independent cross-check, and the global Fuchs-relation / residue-theorem
// identities.

#include "fuchs/connection.hpp"
#include "fuchs/matrix.hpp"
#include "fuchs/operator.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuchs {

struct ResidueData {
    std::optional<Rational> point;       // nullopt = infinity
    QMatrix matrix;                      // residue endomorphism, stored convention
    Polynomial char_poly;                // monic, degree m
    std::optional<std::vector<Rational>> exponents; // ascending; present iff char_poly splits over Q

    bool splits() const { return exponents.has_value(); }
};

inline ResidueData make_residue_data(std::optional<Rational> point, QMatrix m) {
    ResidueData r;
    r.point = std::move(point);
    r.char_poly = charpoly(m);
    r.matrix = std::move(m);
    auto roots = rational_roots(r.char_poly);
    if ((long)roots.size() == r.char_poly.degree()) r.exponents = std::move(roots);
    return r;
}

/// Residue at the j-th puncture (1-based): A(p_j) / psi'(p_j).
inline ResidueData residue_at(const FuchsianOperator &op, std::size_t j) {
    if (j < 1 || j > op.n()) throw std::invalid_argument("puncture index out of range");
    const Rational p = op.punctures[j - 1];
    const Rational dpsi = op.psi_prime()(p); // nonzero: punctures are simple roots
    return make_residue_data(p, dpsi.inv() * companion_matrix(op).eval(p));
}

inline ResidueData residue_at_infinity(const FuchsianOperator &op) {
    return make_residue_data(std::nullopt,
                             infinity_residue_matrix(infinity_connection_matrix(op)));
}

namespace detail {
/// Falling factorial mu (mu-1) ... (mu-j+1) as a polynomial in mu.
inline Polynomial falling_factorial(std::size_t j) {
    Polynomial r(1);
    for (std::size_t i = 0; i < j; ++i)
        r *= Polynomial({Rational(-(long)i), Rational(1)});
    return r;
}
/// Same with mu replaced by -mu.
inline Polynomial falling_factorial_neg(std::size_t j) {
    Polynomial r(1);
    for (std::size_t i = 0; i < j; ++i)
        r *= Polynomial({Rational(-(long)i), Rational(-1)});
    return r;
}
} // namespace detail

/// Classical Frobenius indicial polynomial, monic of degree m. At a finite
/// puncture p this is [mu]_m - sum_k G_k(p)/psi'(p)^k [mu]_{m-k}; at infinity
/// substitute w = zeta^mu, which turns [mu]_j into [-mu]_j and picks the
/// top-degree coefficients gamma_k of the G_k.
inline Polynomial indicial_polynomial(const FuchsianOperator &op,
                                      const std::optional<Rational> &point) {
    const std::size_t m = op.m;
    if (point) {
        const Rational p = *point;
        const Rational dpsi = op.psi_prime()(p);
        if (dpsi.is_zero()) throw std::invalid_argument("point is not a simple root of psi");
        Polynomial chi = detail::falling_factorial(m);
        Rational pw(1);
        for (std::size_t k = 1; k <= m; ++k) {
            pw *= dpsi;
            chi -= (op.G[k - 1](p) / pw) * detail::falling_factorial(m - k);
        }
        return chi;
    }
    const long nm1 = (long)op.n() - 1;
    Polynomial chi = detail::falling_factorial_neg(m);
    for (std::size_t k = 1; k <= m; ++k) {
        const Rational gamma = op.G[k - 1].coeff((std::size_t)((long)k * nm1));
        chi -= gamma * detail::falling_factorial_neg(m - k);
    }
    return ((m % 2) ? Rational(-1) : Rational(1)) * chi;
}

struct ExponentTable {
    std::vector<ResidueData> residues;               // p_1..p_n then infinity
    std::vector<std::vector<Rational>> ordering;     // chosen exponent order per point; empty rows when not split

    std::size_t points() const { return residues.size(); }
    const ResidueData &at_infinity() const { return residues.back(); }
    bool all_split() const {
        for (const auto &r : residues)
            if (!r.splits()) return false;
        return true;
    }
    /// Sum over all points of all residue eigenvalues, read off traces.
    Rational exponent_sum() const {
        Rational s(0);
        for (const auto &r : residues) s += r.matrix.trace();
        return s;
    }
};

/// Residues at p_1..p_n and infinity. Default exponent ordering is
/// ascending; an override permutation per point may be applied afterwards.
inline ExponentTable exponent_table(const FuchsianOperator &op) {
    ExponentTable t;
    for (std::size_t j = 1; j <= op.n(); ++j) t.residues.push_back(residue_at(op, j));
    t.residues.push_back(residue_at_infinity(op));
    for (const auto &r : t.residues)
        t.ordering.push_back(r.splits() ? *r.exponents : std::vector<Rational>{});
    return t;
}

/// Applies a permutation (0-based indices into the ascending exponent list)
/// to the chosen ordering at one point; index n means infinity... the caller
/// addresses points by table position 0..n with the last slot = infinity.
inline void apply_ordering(ExponentTable &t, std::size_t point_index,
                           const std::vector<std::size_t> &perm) {
    if (point_index >= t.points()) throw std::invalid_argument("point index out of range");
    auto &ord = t.ordering[point_index];
    const auto &res = t.residues[point_index];
    if (!res.splits()) throw std::invalid_argument("exponents not rational at this point");
    if (perm.size() != res.exponents->size())
        throw std::invalid_argument("permutation arity mismatch");
    std::vector<bool> seen(perm.size(), false);
    std::vector<Rational> next;
    for (auto i : perm) {
        if (i >= perm.size() || seen[i]) throw std::invalid_argument("not a permutation");
        seen[i] = true;
        next.push_back((*res.exponents)[i]);
    }
    ord = std::move(next);
}

struct GlobalChecksReport {
    Rational exponent_sum;       // sum of residue traces over all points
    Rational fuchs_required;     // (n-1) m (m-1) / 2
    long degree;                 // deg E_L
    bool fuchs_relation_holds;
    bool residue_theorem_holds;  // exponent_sum == -degree
};

inline GlobalChecksReport global_checks(const ExponentTable &t, std::size_t m, std::size_t n,
                                        long degree) {
    GlobalChecksReport r;
    r.exponent_sum = t.exponent_sum();
    r.fuchs_required = Rational(((long)n - 1) * (long)m * ((long)m - 1), 2);
    r.degree = degree;
    r.fuchs_relation_holds = (r.exponent_sum == r.fuchs_required);
    r.residue_theorem_holds = (r.exponent_sum == Rational(-degree));
    return r;
}

inline nlohmann::json residue_to_json(const ResidueData &r) {
    nlohmann::json j;
    j["point"] = r.point ? nlohmann::json(r.point->str()) : nlohmann::json("inf");
    nlohmann::json mat = nlohmann::json::array();
    for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < r.matrix.cols(); ++k) row.push_back(r.matrix(i, k).str());
        mat.push_back(row);
    }
    j["matrix"] = mat;
    j["char_poly"] = polynomial_to_json(r.char_poly);
    if (r.splits()) {
        nlohmann::json ex = nlohmann::json::array();
        for (const auto &e : *r.exponents) ex.push_back(e.str());
        j["exponents"] = ex;
    } else {
        j["exponents"] = nullptr;
    }
    return j;
}

inline nlohmann::json exponent_table_to_json(const ExponentTable &t) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < t.residues.size(); ++i) {
        nlohmann::json e = residue_to_json(t.residues[i]);
        nlohmann::json ord = nlohmann::json::array();
        for (const auto &x : t.ordering[i]) ord.push_back(x.str());
        e["ordering"] = ord;
        j.push_back(e);
    }
    return j;
}

} // namespace fuchs
