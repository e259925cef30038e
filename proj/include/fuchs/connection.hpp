#pragma once

// The logarithmic connection attached to a Fuchsian operator: the modified
// companion matrix A(z) in the affine chart, the lattice at infinity built
// from zeta^j d^j/dzeta^j, the transition between the two frames, and the
// connection matrix at infinity.
//
// Conventions. The frame functions are w_k = psi^{k-1} w^{(k-1)} in the
// affine chart and wtilde_k = zeta^{k-1} d^{k-1}w/dzeta^{k-1} at infinity.
// Matrices are stored so that d w_k = sum_j M_{jk} w_j, matching the
// modified companion pattern with subdiagonal ones; the honest column-vector
// form of any stored matrix is its transpose. Transport of stored matrices
// between charts therefore conjugates by U = (T^{-1})^t, where wtilde = T w.

#include "fuchs/operator.hpp"
#include "fuchs/polymatrix.hpp"
#include "fuchs/ratfun.hpp"

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fuchs {

/// The m x m modified companion matrix: subdiagonal ones, diagonal entries
/// (k-1) psi' in row k >= 2, last column (G_m, ..., G_2, G_1 + (m-1) psi').
inline PolyMatrix companion_matrix(const FuchsianOperator &op) {
    const std::size_t m = op.m;
    const Polynomial dpsi = op.psi_prime();
    PolyMatrix a(m, m);
    for (std::size_t k = 1; k < m; ++k) {
        a(k, k - 1) = Polynomial(1);
        if (k < m - 1) a(k, k) = Polynomial((long)k) * dpsi;
    }
    for (std::size_t k = 0; k < m; ++k) a(k, m - 1) = op.G[m - 1 - k];
    a(m - 1, m - 1) = op.G[0] + Polynomial((long)(m - 1)) * dpsi;
    return a;
}

/// Integers a_{kappa j} with
///   zeta^j d^j/dzeta^j = sum_{kappa<=j} a_{kappa j} (-z)^kappa d^kappa/dz^kappa,
/// a_{jj} = 1. Computed from the falling-factorial recursion in the Euler
/// operator theta = zeta d/dzeta = -z d/dz. Returned as rows j = 0..m-1 with
/// entries kappa = 0..j.
inline std::vector<std::vector<Integer>> infinity_lattice_coeffs(std::size_t m) {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    std::vector<std::vector<Integer>> a(m);
    a[0] = {Integer(1)};
    for (std::size_t j = 0; j + 1 < m; ++j) {
        a[j + 1].assign(j + 2, Integer(0));
        for (std::size_t kappa = 0; kappa <= j; ++kappa) {
            // theta (-z)^k d^k = (-z)^{k+1} d^{k+1} - k (-z)^k d^k,
            // and the falling factorial appends a factor (theta - j)
            a[j + 1][kappa + 1] += a[j][kappa];
            a[j + 1][kappa] -= Integer((long)(kappa + j)) * a[j][kappa];
        }
    }
    return a;
}

/// Transition wtilde = T w between the affine frame and the infinity frame,
/// as a matrix of rational functions in z. Independent of the G_k.
inline RatMatrix frame_transition(const FuchsianOperator &op) {
    const std::size_t m = op.m;
    const auto a = infinity_lattice_coeffs(m);
    const Polynomial psi = op.psi();
    // wtilde_{k+1} = sum_kappa a_{kappa k} (-z)^kappa w^{(kappa)},
    // w_{kappa+1} = psi^kappa w^{(kappa)}
    RatMatrix t(m, m);
    Polynomial psipow(1);
    std::vector<Polynomial> psipows;
    for (std::size_t k = 0; k < m; ++k) {
        psipows.push_back(psipow);
        psipow *= psi;
    }
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t kappa = 0; kappa <= k; ++kappa) {
            if (a[k][kappa] == 0) continue;
            Polynomial num = Polynomial(Rational(a[k][kappa])) *
                             Polynomial::monomial(kappa, Rational((kappa % 2) ? -1 : 1));
            t(k, kappa) = RationalFunction(num, psipows[kappa]);
        }
    return t;
}

/// U = (T^{-1})^t: stored-convention matrices and endomorphism values
/// transport to the infinity chart by conjugation with U.
inline RatMatrix endo_transition(const FuchsianOperator &op) {
    return frame_transition(op).inverse().transpose();
}

/// -z^2 dM/dz, the derivative with respect to zeta of a matrix given in z.
inline RatMatrix zeta_derivative(const RatMatrix &m) {
    const RationalFunction mz2(Polynomial({Rational(0), Rational(0), Rational(-1)}));
    return mz2 * m.derivative();
}

/// Connection matrix at infinity: d wtilde_k = sum_j Atilde_{jk} wtilde_j dzeta.
/// Entries are rational in z; logarithmicity means pole order <= 1 at zeta=0.
inline RatMatrix infinity_connection_matrix_raw(const FuchsianOperator &op) {
    const RatMatrix u = endo_transition(op);
    const RatMatrix uinv = u.inverse();
    const RationalFunction mz2(Polynomial({Rational(0), Rational(0), Rational(-1)}));
    const RationalFunction inv_psi(Polynomial(1), op.psi());
    const RatMatrix a_over_psi = inv_psi * RatMatrix::from_poly(companion_matrix(op));
    return u * (mz2 * a_over_psi) * uinv - zeta_derivative(u) * uinv;
}

/// Same, with the logarithmicity guarantee checked: a pole of order > 1 at
/// zeta = 0 would contradict Fuchs' criterion and indicates a bug.
inline RatMatrix infinity_connection_matrix(const FuchsianOperator &op) {
    RatMatrix atilde = infinity_connection_matrix_raw(op);
    if (atilde.pole_order_at_infinity() > 1)
        throw std::logic_error("internal error: connection not logarithmic at infinity");
    return atilde;
}

/// Residue of the connection at zeta = 0: value of zeta * Atilde there.
inline QMatrix infinity_residue_matrix(const RatMatrix &atilde) {
    const RationalFunction inv_z(Polynomial(1), Polynomial::x());
    return (inv_z * atilde).value_at_infinity();
}

/// deg E_L = (1-n) m (m-1) / 2.
inline long bundle_degree(std::size_t m, std::size_t n) {
    if (m < 2 || n < 2) throw std::invalid_argument("need m >= 2, n >= 2");
    return (1 - (long)n) * (long)m * ((long)m - 1) / 2;
}

struct ConnectionPresentation {
    PolyMatrix affine_matrix;                     // A(z)
    RatMatrix infinity_matrix;                    // Atilde(z), dzeta-coefficient
    std::vector<std::vector<Integer>> gluing_a;   // the integer triangle
    RatMatrix transition;                         // wtilde = T w
    long degree = 0;
};

inline ConnectionPresentation build_connection(const FuchsianOperator &op) {
    ConnectionPresentation c;
    c.affine_matrix = companion_matrix(op);
    c.infinity_matrix = infinity_connection_matrix(op);
    c.gluing_a = infinity_lattice_coeffs(op.m);
    c.transition = frame_transition(op);
    c.degree = bundle_degree(op.m, op.n());
    return c;
}

inline nlohmann::json polynomial_to_json(const Polynomial &p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline nlohmann::json polymatrix_to_json(const PolyMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(polynomial_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

/// Laurent data at zeta = 0: exact rational form plus a truncated expansion
/// with exactly tracked pole order.
inline nlohmann::json ratfun_to_json(const RationalFunction &f, long truncation_order) {
    nlohmann::json j;
    j["num"] = polynomial_to_json(f.num());
    j["den"] = polynomial_to_json(f.den());
    const long pole = f.is_zero() ? 0 : std::max(0L, f.pole_order_at_infinity());
    j["pole_order"] = pole;
    nlohmann::json coeffs = nlohmann::json::array();
    const auto series = f.laurent_at_infinity(truncation_order);
    for (long k = -pole; k <= truncation_order; ++k) {
        const auto it = series.find(k);
        coeffs.push_back(it == series.end() ? Rational(0).str() : it->second.str());
    }
    j["coefficients"] = coeffs;
    return j;
}

inline nlohmann::json connection_to_json(const FuchsianOperator &op,
                                         const ConnectionPresentation &c) {
    const long trunc = 2 * (long)op.m * ((long)op.n() + 1);
    nlohmann::json j;
    j["affine_matrix"] = polymatrix_to_json(c.affine_matrix);
    nlohmann::json inf = nlohmann::json::array();
    for (std::size_t i = 0; i < c.infinity_matrix.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < c.infinity_matrix.cols(); ++k)
            row.push_back(ratfun_to_json(c.infinity_matrix(i, k), trunc));
        inf.push_back(row);
    }
    j["infinity_matrix"] = inf;
    nlohmann::json tri = nlohmann::json::array();
    for (const auto &row : c.gluing_a) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto &x : row) r.push_back(x.get_str());
        tri.push_back(r);
    }
    j["gluing"]["a_triangle"] = tri;
    nlohmann::json trans = nlohmann::json::array();
    for (std::size_t i = 0; i < c.transition.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < c.transition.cols(); ++k) {
            nlohmann::json e;
            e["num"] = polynomial_to_json(c.transition(i, k).num());
            e["den"] = polynomial_to_json(c.transition(i, k).den());
            row.push_back(e);
        }
        trans.push_back(row);
    }
    j["gluing"]["transition"] = trans;
    j["degree"] = c.degree;
    return j;
}

} // namespace fuchs
