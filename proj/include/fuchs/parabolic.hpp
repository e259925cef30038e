#pragma once

// Quasi-parabolic structure at the singular points: residue eigenvectors,
// the full flag they span, default generic parabolic weights, and the
// independence of all of this from the choice of the G_k.

#include "fuchs/genericity.hpp"
#include "fuchs/matrix.hpp"
#include "fuchs/spectral.hpp"

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuchs {

struct PointFlag {
    std::optional<Rational> point;           // nullopt = infinity
    std::vector<Rational> exponents;         // chosen ordering mu_1..mu_m
    std::vector<std::vector<Rational>> eigenvectors; // v_k, first nonzero entry = 1
    std::vector<Rational> weights;           // beta_k, generic by construction
};

struct ParabolicData {
    std::vector<PointFlag> flags;            // p_1..p_n then infinity
};

struct UnsupportedModeError : std::runtime_error {
    explicit UnsupportedModeError(const std::string &msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::vector<Rational> normalize_first_nonzero(std::vector<Rational> v) {
    for (const auto &x : v)
        if (!x.is_zero()) {
            const Rational inv = x.inv();
            for (auto &y : v) y *= inv;
            return v;
        }
    throw std::logic_error("zero eigenvector");
}

/// The unique (up to scale) eigenvector of r for the simple eigenvalue mu.
inline std::vector<Rational> eigenvector(const QMatrix &r, const Rational &mu) {
    QMatrix shifted = r;
    for (std::size_t i = 0; i < r.rows(); ++i) shifted(i, i) -= mu;
    const auto basis = shifted.kernel_basis();
    if (basis.size() != 1)
        throw std::invalid_argument("eigenvalue not simple; non-resonance required");
    return normalize_first_nonzero(basis[0]);
}

} // namespace detail

/// Default generic weights beta^j_k = k/(m+1) + j/((m+1)(n+2)): pairwise
/// differences are strictly between -1 and 1 and nonzero, hence never
/// integers.
inline std::vector<Rational> default_weights(std::size_t m, std::size_t n, std::size_t point_index) {
    std::vector<Rational> w;
    for (std::size_t k = 1; k <= m; ++k)
        w.push_back(Rational((long)k, (long)m + 1) +
                    Rational((long)point_index, ((long)m + 1) * ((long)n + 2)));
    return w;
}

/// Validates the "no two weights differ by an integer" requirement across
/// all points.
inline bool weights_generic(const std::vector<std::vector<Rational>> &weights) {
    std::vector<Rational> flat;
    for (const auto &w : weights) flat.insert(flat.end(), w.begin(), w.end());
    for (std::size_t a = 0; a < flat.size(); ++a)
        for (std::size_t b = a + 1; b < flat.size(); ++b)
            if ((flat[a] - flat[b]).is_integer()) return false;
    return true;
}

/// Eigenvector flags at all n+1 points in the ordering recorded in the
/// table. Requires non-resonance and rational exponents; verifies that each
/// residue maps every term of the filtration into itself.
inline ParabolicData flags(const FuchsianOperator &op, const ExponentTable &table) {
    if (!table.all_split())
        throw UnsupportedModeError("flags need rational exponents at every point");
    for (std::size_t pi = 0; pi < table.points(); ++pi) {
        const auto &ex = *table.residues[pi].exponents;
        for (std::size_t a = 0; a < ex.size(); ++a)
            for (std::size_t b = a + 1; b < ex.size(); ++b)
                if ((ex[a] - ex[b]).is_integer())
                    throw UnsupportedModeError("resonant exponents at table point " +
                                               std::to_string(pi));
    }
    ParabolicData out;
    for (std::size_t pi = 0; pi < table.points(); ++pi) {
        const ResidueData &res = table.residues[pi];
        PointFlag f;
        f.point = res.point;
        f.exponents = table.ordering[pi];
        for (const auto &mu : f.exponents)
            f.eigenvectors.push_back(detail::eigenvector(res.matrix, mu));
        f.weights = default_weights(op.m, op.n(), pi);
        // residue-compatibility: R E_k is contained in E_k for every k, where
        // E_k is spanned by the trailing eigenvectors -- immediate for an
        // eigenbasis, re-checked here against the actual matrix
        for (std::size_t k = 0; k < f.eigenvectors.size(); ++k) {
            const auto image = res.matrix.apply(f.eigenvectors[k]);
            for (std::size_t i = 0; i < image.size(); ++i)
                if (image[i] != f.exponents[k] * f.eigenvectors[k][i])
                    throw std::logic_error("residue does not preserve its own eigenspace");
        }
        out.flags.push_back(std::move(f));
    }
    return out;
}

/// Coefficient-independence: two operators with the same punctures and the
/// same exponent tables must induce identical residues, eigenvectors and
/// flags. True iff A_1(p_j) = A_2(p_j) at every puncture and the infinity
/// residues coincide.
inline bool check_independence(const FuchsianOperator &op1, const FuchsianOperator &op2,
                               std::string *witness = nullptr) {
    if (op1.m != op2.m || op1.punctures != op2.punctures)
        throw std::invalid_argument("operators live on different (m, punctures)");
    const PolyMatrix a1 = companion_matrix(op1), a2 = companion_matrix(op2);
    for (std::size_t j = 0; j < op1.n(); ++j) {
        const Rational p = op1.punctures[j];
        if (a1.eval(p) != a2.eval(p)) {
            if (witness) *witness = "residues differ at puncture " + p.str();
            return false;
        }
    }
    const QMatrix r1 = infinity_residue_matrix(infinity_connection_matrix(op1));
    const QMatrix r2 = infinity_residue_matrix(infinity_connection_matrix(op2));
    if (r1 != r2) {
        if (witness) *witness = "residues differ at infinity";
        return false;
    }
    return true;
}

inline nlohmann::json parabolic_to_json(const ParabolicData &d) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &f : d.flags) {
        nlohmann::json e;
        e["point"] = f.point ? nlohmann::json(f.point->str()) : nlohmann::json("inf");
        nlohmann::json ex = nlohmann::json::array(), ev = nlohmann::json::array(),
                       w = nlohmann::json::array();
        for (const auto &x : f.exponents) ex.push_back(x.str());
        for (const auto &v : f.eigenvectors) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto &x : v) row.push_back(x.str());
            ev.push_back(row);
        }
        for (const auto &x : f.weights) w.push_back(x.str());
        e["exponents"] = ex;
        e["eigenvectors"] = ev;
        e["weights"] = w;
        j.push_back(e);
    }
    return j;
}

} // namespace fuchs
