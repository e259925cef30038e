#pragma once

// The isomonodromic deformation space of the equation family: the dimension
// formulas e and c, the tangent space cut out by the linearized exponent
// constraints, and the vanishing wedge-trace pairing.
//
// The conjugacy-class constraint is imposed as "characteristic polynomials
// of all residues unchanged": under non-resonance the residues are regular
// semi-simple, so this is equivalent. At finite punctures the char poly of
// the residue depends only on the values G_k(p_j) (companion determinacy),
// so the finite constraints reduce to delta G_k(p_j) = 0. At infinity the
// residue char-poly coefficients are affine-linear in the G coefficients
// (the infinity chart is again a modified companion frame); the linear part
// is extracted by evaluating the transport pipeline on unit coefficient
// vectors.

#include "fuchs/connection.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/ratfun.hpp"
#include "fuchs/spectral.hpp"

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fuchs {

struct Dims {
    long e;           // dim of the equation deformation space
    long c;           // dim of the moduli of logarithmic connections, c = 2e
    bool rigid;       // c == 0
};

/// c = 2 - 2 m^2 + m (m-1)(n+1), e = c/2.
inline Dims dims(std::size_t m, std::size_t n) {
    if (m < 2 || n < 2) throw std::invalid_argument("need m >= 2, n >= 2");
    const long lm = (long)m, ln = (long)n;
    const long c = 2 - 2 * lm * lm + lm * (lm - 1) * (ln + 1);
    if (c < 0) throw std::logic_error("negative dimension count");
    return {c / 2, c, c == 0};
}

struct TangentVector {
    std::vector<Polynomial> dG; // delta G_1..delta G_m, deg <= k(n-1)
};

struct DeformationBasis {
    std::vector<TangentVector> basis;
    long dimension = 0;
    long expected = 0;          // e from dims(m, n)
    bool matches_expected() const { return dimension == expected; }
};

namespace detail {

/// Layout of the free coefficients of (G_1, ..., G_m): k(n-1)+1 slots for
/// G_k, ascending degree, k ascending.
struct CoeffLayout {
    std::size_t m, n;
    std::vector<std::size_t> offset; // per k (0-based), into the flat vector
    std::size_t total = 0;

    CoeffLayout(std::size_t m_, std::size_t n_) : m(m_), n(n_) {
        for (std::size_t k = 1; k <= m; ++k) {
            offset.push_back(total);
            total += k * (n - 1) + 1;
        }
    }
    std::vector<Polynomial> unflatten(const std::vector<Rational> &v) const {
        std::vector<Polynomial> g;
        for (std::size_t k = 1; k <= m; ++k) {
            const std::size_t len = k * (n - 1) + 1;
            std::vector<Rational> c(v.begin() + (long)offset[k - 1],
                                    v.begin() + (long)(offset[k - 1] + len));
            g.emplace_back(std::move(c));
        }
        return g;
    }
    std::vector<Rational> flatten(const std::vector<Polynomial> &g) const {
        std::vector<Rational> v(total, Rational(0));
        for (std::size_t k = 1; k <= m; ++k) {
            const std::size_t len = k * (n - 1) + 1;
            if (g[k - 1].degree() >= (long)len)
                throw std::invalid_argument("coefficient polynomial exceeds Fuchs degree bound");
            for (std::size_t i = 0; i < len; ++i) v[offset[k - 1] + i] = g[k - 1].coeff(i);
        }
        return v;
    }
};

/// Non-leading coefficients of the char poly of the infinity residue,
/// computed through the indicial polynomial (it equals the residue char
/// poly; the identity is pinned by tests against the transport route, and
/// this form only needs the top-degree coefficients of the G_k).
inline std::vector<Rational> infinity_charpoly_coeffs(const FuchsianOperator &op) {
    const Polynomial chi = indicial_polynomial(op, std::nullopt);
    std::vector<Rational> out;
    for (std::size_t i = 0; i < op.m; ++i) out.push_back(chi.coeff(i));
    return out;
}

/// Rows of the full linearized exponent-constraint matrix: first the values
/// delta G_k(p_j) for every k and puncture, then the linear part of the
/// infinity char-poly coefficients. The rank is discovered by the solver,
/// never hardcoded (one row is redundant by the Fuchs relation).
inline QMatrix exponent_constraint_matrix(const FuchsianOperator &op) {
    const CoeffLayout layout(op.m, op.n());
    const std::size_t rows = op.n() * op.m + op.m;
    QMatrix c(rows, layout.total);
    std::size_t row = 0;
    for (std::size_t k = 1; k <= op.m; ++k)
        for (std::size_t j = 0; j < op.n(); ++j) {
            const Rational p = op.punctures[j];
            Rational pw(1);
            for (std::size_t i = 0; i <= k * (op.n() - 1); ++i) {
                c(row, layout.offset[k - 1] + i) = pw;
                pw *= p;
            }
            ++row;
        }
    const std::vector<Rational> base = infinity_charpoly_coeffs(op);
    for (std::size_t idx = 0; idx < layout.total; ++idx) {
        FuchsianOperator probe = op;
        std::vector<Rational> v = layout.flatten(op.G);
        v[idx] += Rational(1);
        probe.G = layout.unflatten(v);
        const std::vector<Rational> shifted = infinity_charpoly_coeffs(probe);
        for (std::size_t i = 0; i < op.m; ++i) c(row + i, idx) = shifted[i] - base[i];
    }
    return c;
}

} // namespace detail

/// Basis of the kernel of the linearized exponent map. For generic
/// operators the dimension equals e; a mismatch is reported in the result
/// rather than thrown (it indicates non-genericity of the input).
inline DeformationBasis isomonodromic_tangent_basis(const FuchsianOperator &op) {
    const detail::CoeffLayout layout(op.m, op.n());
    const QMatrix constraints = detail::exponent_constraint_matrix(op);
    DeformationBasis out;
    for (const auto &v : constraints.kernel_basis())
        out.basis.push_back({layout.unflatten(v)});
    out.dimension = (long)out.basis.size();
    out.expected = dims(op.m, op.n()).e;
    return out;
}

/// delta A: the tangent direction placed in the companion last column.
inline PolyMatrix tangent_connection_perturbation(const FuchsianOperator &op,
                                                  const TangentVector &v) {
    PolyMatrix da(op.m, op.m);
    for (std::size_t k = 0; k < op.m; ++k) da(k, op.m - 1) = v.dG[op.m - 1 - k];
    return da;
}

/// Endomorphism-valued 1-form written in the affine chart.
struct MatrixOneForm {
    RatMatrix dz_part;
    RatMatrix dzbar_part; // zero for the (1,0)-forms produced here

    static MatrixOneForm holomorphic(RatMatrix p) {
        MatrixOneForm f;
        f.dzbar_part = RatMatrix(p.rows(), p.cols());
        f.dz_part = std::move(p);
        return f;
    }
};

/// Coefficient of dz ^ dzbar in tr(f1 wedge f2); the dz ^ dz and
/// dzbar ^ dzbar components die by antisymmetry of the wedge.
inline RationalFunction wedge_trace(const MatrixOneForm &f1, const MatrixOneForm &f2) {
    const RatMatrix mixed = f1.dz_part * f2.dzbar_part - f1.dzbar_part * f2.dz_part;
    RationalFunction tr;
    for (std::size_t i = 0; i < mixed.rows(); ++i) tr += mixed(i, i);
    return tr;
}

/// The symplectic-pairing integrand tr(phi_1 wedge phi_2) for two equation
/// deformations phi_i = delta A_i / psi dz. Both are of type (1,0), so the
/// symbolically expanded integrand is identically zero; the exact value is
/// returned so callers can assert it.
inline RationalFunction lagrangian_pairing(const TangentVector &v1, const TangentVector &v2,
                                           const FuchsianOperator &op) {
    const RationalFunction inv_psi(Polynomial(1), op.psi());
    const auto phi = [&](const TangentVector &v) {
        return MatrixOneForm::holomorphic(
            inv_psi * RatMatrix::from_poly(tangent_connection_perturbation(op, v)));
    };
    return wedge_trace(phi(v1), phi(v2));
}

inline nlohmann::json tangent_to_json(const DeformationBasis &b) {
    nlohmann::json j;
    j["dimension"] = b.dimension;
    j["expected_e"] = b.expected;
    j["matches_expected"] = b.matches_expected();
    nlohmann::json basis = nlohmann::json::array();
    for (const auto &v : b.basis) {
        nlohmann::json dg = nlohmann::json::array();
        for (const auto &p : v.dG) dg.push_back(polynomial_to_json(p));
        basis.push_back(dg);
    }
    j["basis"] = basis;
    return j;
}

} // namespace fuchs
