#pragma once

// Global-section spaces of the parabolic endomorphism sheaf and of the
// twisted isomonodromic endomorphism sheaf, the map induced by the
// connection between them, and the Euler-characteristic ledger that
// reproduces the moduli dimensions.
//
// Sections are represented by polynomial matrices in the affine frame; iso
// sections carry an implicit factor dz/psi. Point conditions at infinity
// are imposed by transporting through the chart gluing rather than by a
// separate degree table, so the affine pattern plus the recorded linear
// functionals is the entire definition.

#include "fuchs/connection.hpp"
#include "fuchs/deformation.hpp"
#include "fuchs/matrix.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/parabolic.hpp"
#include "fuchs/polymatrix.hpp"
#include "fuchs/ratfun.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fuchs {

enum class SectionKind { para, iso };

struct SectionSpace {
    SectionKind kind;
    std::vector<PolyMatrix> basis;
    std::vector<std::vector<long>> pattern; // degree bound per entry, -1 = zero
    std::size_t pattern_dimension = 0;      // before point conditions
    std::size_t condition_rows = 0;         // functionals imposed (naive count)
    long condition_rank = 0;                // measured rank of those functionals

    long dimension() const { return (long)basis.size(); }
};

namespace detail {

/// Entry degree bounds: para sections occupy the upper triangle with
/// deg <= (j-i)(n-1); iso twists every bound up by n-1, which opens the
/// first subdiagonal (constants) and leaves anything below it zero.
inline std::vector<std::vector<long>> section_pattern(std::size_t m, std::size_t n,
                                                      SectionKind kind) {
    std::vector<std::vector<long>> p(m, std::vector<long>(m, -1));
    const long shift = (kind == SectionKind::iso) ? (long)(n - 1) : 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const long d = ((long)j - (long)i) * (long)(n - 1) + shift;
            if (d >= 0) p[i][j] = d;
        }
    return p;
}

struct SectionLayout {
    std::size_t m;
    std::vector<std::vector<long>> pattern;
    struct Slot { std::size_t i, j, d; };
    std::vector<Slot> slots;

    SectionLayout(std::size_t m_, std::size_t n, SectionKind kind)
        : m(m_), pattern(section_pattern(m_, n, kind)) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
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
    /// Coordinates of a matrix in the pattern; throws if it does not fit.
    std::vector<Rational> flatten(const PolyMatrix &g) const {
        std::vector<Rational> v(slots.size(), Rational(0));
        PolyMatrix residue = g;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            v[s] = g(slots[s].i, slots[s].j).coeff(slots[s].d);
            residue(slots[s].i, slots[s].j) -= Polynomial::monomial(slots[s].d, v[s]);
        }
        if (!residue.is_zero())
            throw std::invalid_argument("matrix does not fit the section pattern");
        return v;
    }
};

/// Eigenbasis V at one flagged point (eigenvectors as columns, table order).
inline QMatrix eigenbasis(const PointFlag &f) {
    const std::size_t m = f.eigenvectors.size();
    QMatrix v(m, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) v(i, k) = f.eigenvectors[k][i];
    return v;
}

/// All point conditions evaluated on one pattern unit matrix, as a column
/// of the conditions system. Finite points contribute triangularity of the
/// conjugated value (para: strictly-upper part of V^-1 F(p) V vanishes;
/// iso: upper including diagonal, for the residue B(p)/psi'(p)). Infinity
/// contributes the singular Laurent coefficients of the transported matrix
/// plus the same triangularity for its value (para) or residue (iso).
struct ConditionEvaluator {
    const FuchsianOperator &op;
    const ParabolicData &par;
    SectionKind kind;
    RatMatrix u, uinv;
    RationalFunction scale; // 1 (para) or -z^2/psi (iso): dzeta-coefficient factor
    std::vector<QMatrix> v, vinv;
    long tail_from = 0;     // Laurent orders [tail_from, tail_to] forced to vanish
    long tail_to = 0;

    ConditionEvaluator(const FuchsianOperator &op_, const ParabolicData &par_, SectionKind k)
        : op(op_), par(par_), kind(k), u(endo_transition(op_)), uinv(u.inverse()) {
        scale = (kind == SectionKind::para)
                    ? RationalFunction(Polynomial(1), Polynomial(1))
                    : RationalFunction(Polynomial({Rational(0), Rational(0), Rational(-1)}),
                                       op.psi());
        for (const auto &f : par.flags) {
            v.push_back(eigenbasis(f));
            vinv.push_back(v.back().inverse());
        }
        tail_to = (kind == SectionKind::para) ? -1 : -2;
    }

    RatMatrix transported(const PolyMatrix &g) const {
        return u * (scale * RatMatrix::from_poly(g)) * uinv;
    }

    /// Laurent data of the transported matrix entry-wise, down to the most
    /// singular order that can occur for this pattern.
    std::map<long, QMatrix> laurent_tail(const RatMatrix &t, long from, long to) const {
        std::map<long, QMatrix> out;
        for (long k = from; k <= to; ++k) out.emplace(k, QMatrix(op.m, op.m));
        for (std::size_t i = 0; i < op.m; ++i)
            for (std::size_t j = 0; j < op.m; ++j) {
                const auto series = t(i, j).laurent_at_infinity(to);
                for (const auto &[k, a] : series)
                    if (k >= from) out.at(k)(i, j) = a;
            }
        return out;
    }

    std::vector<Rational> rows(const PolyMatrix &g) const {
        std::vector<Rational> out;
        const bool strict = (kind == SectionKind::iso);
        for (std::size_t pi = 0; pi < op.n(); ++pi) {
            const Rational p = op.punctures[pi];
            QMatrix val = g.eval(p);
            if (kind == SectionKind::iso) val = op.psi_prime()(p).inv() * val;
            const QMatrix c = vinv[pi] * val * v[pi];
            for (std::size_t i = 0; i < op.m; ++i)
                for (std::size_t j = strict ? i : i + 1; j < op.m; ++j) out.push_back(c(i, j));
        }
        const RatMatrix t = transported(g);
        const auto tail = laurent_tail(t, tail_from, tail_to + 1);
        for (long k = tail_from; k <= tail_to; ++k)
            for (std::size_t i = 0; i < op.m; ++i)
                for (std::size_t j = 0; j < op.m; ++j) out.push_back(tail.at(k)(i, j));
        // order tail_to + 1: value (para) / residue (iso) at zeta = 0
        const QMatrix c = vinv.back() * tail.at(tail_to + 1) * v.back();
        for (std::size_t i = 0; i < op.m; ++i)
            for (std::size_t j = strict ? i : i + 1; j < op.m; ++j) out.push_back(c(i, j));
        return out;
    }
};

inline SectionSpace section_space(const FuchsianOperator &op, const ParabolicData &par,
                                  SectionKind kind) {
    if (par.flags.size() != op.n() + 1)
        throw std::invalid_argument("parabolic data does not match the operator");
    const SectionLayout layout(op.m, op.n(), kind);
    ConditionEvaluator ev(op, par, kind);

    // most singular Laurent order across the pattern, found on unit slots
    std::vector<RatMatrix> transported;
    long lead = 0;
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
        std::vector<Rational> unit(layout.slots.size(), Rational(0));
        unit[s] = Rational(1);
        transported.push_back(ev.transported(layout.unflatten(unit)));
        for (std::size_t i = 0; i < op.m; ++i)
            for (std::size_t j = 0; j < op.m; ++j) {
                const auto &f = transported.back()(i, j);
                if (!f.is_zero()) lead = std::min(lead, -f.pole_order_at_infinity());
            }
    }
    ev.tail_from = std::min(lead, ev.tail_to + 1);

    std::vector<std::vector<Rational>> cols;
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
        std::vector<Rational> unit(layout.slots.size(), Rational(0));
        unit[s] = Rational(1);
        cols.push_back(ev.rows(layout.unflatten(unit)));
    }
    QMatrix sys(cols[0].size(), cols.size());
    for (std::size_t s = 0; s < cols.size(); ++s)
        for (std::size_t r = 0; r < cols[s].size(); ++r) sys(r, s) = cols[s][r];

    SectionSpace out;
    out.kind = kind;
    out.pattern = layout.pattern;
    out.pattern_dimension = layout.slots.size();
    out.condition_rows = sys.rows();
    out.condition_rank = (long)sys.rank();
    for (const auto &vsol : sys.kernel_basis()) out.basis.push_back(layout.unflatten(vsol));
    for (const auto &b : out.basis)
        for (const auto &x : ev.rows(b))
            if (!x.is_zero()) throw std::logic_error("internal error: section fails a point condition");
    return out;
}

} // namespace detail

inline SectionSpace h0_end_para(const FuchsianOperator &op, const ParabolicData &par) {
    return detail::section_space(op, par, SectionKind::para);
}

inline SectionSpace h0_om_end_iso(const FuchsianOperator &op, const ParabolicData &par) {
    return detail::section_space(op, par, SectionKind::iso);
}

/// The connection applied to an endomorphism: F maps to psi F' + [A, F],
/// the affine representative of dF - [A/psi, F] dz up to the shared dz/psi
/// factor carried by iso sections. The sign of the commutator follows the
/// stored matrix convention.
inline PolyMatrix connection_on_endomorphism(const FuchsianOperator &op, const PolyMatrix &f) {
    return op.psi() * f.derivative() + commutator(companion_matrix(op), f);
}

struct InducedMapData {
    long rank = 0;
    long dim_cokernel = 0;
    bool identity_in_kernel = false; // identity lies in the para space and maps to 0
};

namespace detail {
/// Is x in the column span of the given vectors?
inline bool in_span(const std::vector<std::vector<Rational>> &cols,
                    const std::vector<Rational> &x) {
    if (cols.empty()) {
        for (const auto &a : x)
            if (!a.is_zero()) return false;
        return true;
    }
    const std::size_t rows = x.size();
    QMatrix base(rows, cols.size()), aug(rows, cols.size() + 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) base(r, c) = aug(r, c) = cols[c][r];
    for (std::size_t r = 0; r < rows; ++r) aug(r, cols.size()) = x[r];
    return base.rank() == aug.rank();
}
} // namespace detail

/// Rank and cokernel of the induced map from the para sections to the iso
/// sections. Every image is verified to be an iso section.
inline InducedMapData induced_map(const FuchsianOperator &op, const SectionSpace &para,
                                  const SectionSpace &iso) {
    const detail::SectionLayout layout(op.m, op.n(), SectionKind::iso);
    std::vector<std::vector<Rational>> iso_cols, img_cols;
    for (const auto &b : iso.basis) iso_cols.push_back(layout.flatten(b));
    InducedMapData out;
    for (const auto &f : para.basis)
        img_cols.push_back(layout.flatten(connection_on_endomorphism(op, f)));
    {
        const detail::SectionLayout para_layout(op.m, op.n(), SectionKind::para);
        std::vector<std::vector<Rational>> para_cols;
        for (const auto &b : para.basis) para_cols.push_back(para_layout.flatten(b));
        const PolyMatrix id = PolyMatrix::identity(op.m);
        out.identity_in_kernel = detail::in_span(para_cols, para_layout.flatten(id)) &&
                                 connection_on_endomorphism(op, id).is_zero();
    }
    const std::size_t rows = layout.slots.size();
    QMatrix iso_mat(rows, iso_cols.size());
    QMatrix both(rows, iso_cols.size() + img_cols.size());
    for (std::size_t c = 0; c < iso_cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) iso_mat(r, c) = both(r, c) = iso_cols[c][r];
    for (std::size_t c = 0; c < img_cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) both(r, iso_cols.size() + c) = img_cols[c][r];
    if (both.rank() != iso_mat.rank())
        throw std::logic_error("internal error: image is not an iso section");
    QMatrix img_mat(rows, img_cols.size());
    for (std::size_t c = 0; c < img_cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) img_mat(r, c) = img_cols[c][r];
    out.rank = (long)img_mat.rank();
    out.dim_cokernel = iso.dimension() - out.rank;
    return out;
}

struct SequenceLedger {
    long h0_para = 0, h1_para = 0, h0_iso = 0, h1_iso = 0;
    long rank_H0D = 0;
    long dim_C = 0, dim_K = 0, dim_H1 = 0;
    long chi_para = 0, chi_iso = 0, chi_complex = 0;
    long pattern_dim_para = 0, pattern_dim_iso = 0;   // measured, before conditions
    long condition_rank_para = 0, condition_rank_iso = 0;
    std::vector<std::string> diagnostics;             // contradictions, never adjusted away

    bool consistent() const { return diagnostics.empty(); }
};

/// Euler characteristics of the two sheaves, each computed twice: over the
/// line-bundle summands (chi(O(d)) = d + 1 summed over all m^2 entries)
/// minus the naive condition count, and by the closed formula.
inline long chi_para_formula(std::size_t m, std::size_t n) {
    return (long)(m * m) - (long)((n + 1) * m * (m - 1)) / 2;
}
inline long chi_iso_formula(std::size_t m, std::size_t n) {
    return (long)(m * m * n) - (long)((n + 1) * m * (m + 1)) / 2;
}

inline SequenceLedger sequence_ledger(const FuchsianOperator &op, const ParabolicData &par) {
    const std::size_t m = op.m, n = op.n();
    const SectionSpace para = h0_end_para(op, par);
    const SectionSpace iso = h0_om_end_iso(op, par);
    const InducedMapData map = induced_map(op, para, iso);

    SequenceLedger led;
    led.h0_para = para.dimension();
    led.h0_iso = iso.dimension();
    led.rank_H0D = map.rank;
    led.dim_C = map.dim_cokernel;
    led.pattern_dim_para = (long)para.pattern_dimension;
    led.pattern_dim_iso = (long)iso.pattern_dimension;
    led.condition_rank_para = para.condition_rank;
    led.condition_rank_iso = iso.condition_rank;

    // Riemann-Roch over the entries, minus one triangularity count per point
    long rr_para = 0, rr_iso = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            rr_para += ((long)j - (long)i) * (long)(n - 1) + 1;
            rr_iso += ((long)j - (long)i + 1) * (long)(n - 1) + 1;
        }
    rr_para -= (long)((n + 1) * m * (m - 1)) / 2;
    rr_iso -= (long)((n + 1) * m * (m + 1)) / 2;
    led.chi_para = chi_para_formula(m, n);
    led.chi_iso = chi_iso_formula(m, n);
    if (rr_para != led.chi_para || rr_iso != led.chi_iso)
        led.diagnostics.push_back("Euler characteristic mismatch between summand count and formula");

    led.h1_para = led.h0_para - led.chi_para;
    led.h1_iso = led.h0_iso - led.chi_iso;
    led.chi_complex = led.chi_para - led.chi_iso;
    led.dim_H1 = 2 - led.chi_complex;
    led.dim_K = led.dim_H1 - led.dim_C;

    const Dims d = dims(m, n);
    if (led.dim_H1 != d.c)
        led.diagnostics.push_back("dim H1 = " + std::to_string(led.dim_H1) +
                                  " differs from c = " + std::to_string(d.c));
    if (led.dim_K != led.dim_C)
        led.diagnostics.push_back("duality violated: dim K = " + std::to_string(led.dim_K) +
                                  ", dim C = " + std::to_string(led.dim_C));
    if (led.dim_C != d.e)
        led.diagnostics.push_back("dim C = " + std::to_string(led.dim_C) +
                                  " differs from e = " + std::to_string(d.e));
    if (led.h1_para < 0 || led.h1_iso < 0)
        led.diagnostics.push_back("negative h1 in the ledger");
    if (!map.identity_in_kernel)
        led.diagnostics.push_back("identity section is not annihilated by the connection");
    return led;
}

inline nlohmann::json section_space_to_json(const SectionSpace &s) {
    nlohmann::json j;
    j["kind"] = (s.kind == SectionKind::para) ? "para" : "iso";
    j["dimension"] = s.dimension();
    j["pattern_dimension"] = s.pattern_dimension;
    j["condition_rows"] = s.condition_rows;
    j["condition_rank"] = s.condition_rank;
    nlohmann::json pat = nlohmann::json::array();
    for (const auto &row : s.pattern) pat.push_back(row);
    j["pattern"] = pat;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto &b : s.basis) basis.push_back(polymatrix_to_json(b));
    j["basis"] = basis;
    return j;
}

inline nlohmann::json ledger_to_json(const SequenceLedger &l) {
    nlohmann::json j;
    j["h0_para"] = l.h0_para;
    j["h1_para"] = l.h1_para;
    j["h0_iso"] = l.h0_iso;
    j["h1_iso"] = l.h1_iso;
    j["rank_H0D"] = l.rank_H0D;
    j["dim_C"] = l.dim_C;
    j["dim_K"] = l.dim_K;
    j["dim_H1"] = l.dim_H1;
    j["chi_para"] = l.chi_para;
    j["chi_iso"] = l.chi_iso;
    j["chi_complex"] = l.chi_complex;
    j["pattern_dim_para"] = l.pattern_dim_para;
    j["pattern_dim_iso"] = l.pattern_dim_iso;
    j["condition_rank_para"] = l.condition_rank_para;
    j["condition_rank_iso"] = l.condition_rank_iso;
    j["consistent"] = l.consistent();
    j["diagnostics"] = l.diagnostics;
    return j;
}

} // namespace fuchs
