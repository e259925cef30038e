#pragma once

// Shared test utilities: hand-rolled deterministic generators and the
// jet-variable identity used to cross-check the companion construction.

#include "fuchs/connection.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/ratfun.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

using namespace fuchs;

inline Rational random_rational(std::mt19937_64 &rng, long num_range = 6, long den_range = 4) {
    std::uniform_int_distribution<long> num(-num_range, num_range), den(1, den_range);
    return Rational(num(rng), den(rng));
}

inline Polynomial random_polynomial(std::mt19937_64 &rng, long max_degree) {
    std::vector<Rational> c;
    std::uniform_int_distribution<long> deg(0, max_degree);
    const long d = deg(rng);
    for (long i = 0; i <= d; ++i) c.push_back(random_rational(rng));
    return Polynomial(std::move(c));
}

/// A structurally valid operator (degree bounds respected); exponents are
/// whatever they happen to be.
inline FuchsianOperator random_valid_operator(std::size_t m, std::size_t n,
                                              std::mt19937_64 &rng) {
    FuchsianOperator op;
    op.m = m;
    std::uniform_int_distribution<long> pz(-5, 5);
    while (op.punctures.size() < n) {
        const Rational p(pz(rng));
        bool dup = false;
        for (const auto &x : op.punctures) dup = dup || (x == p);
        if (!dup) op.punctures.push_back(p);
    }
    for (std::size_t k = 1; k <= m; ++k)
        op.G.push_back(random_polynomial(rng, (long)(k * (n - 1))));
    return op;
}

// ---- jet-variable identity ---------------------------------------------
//
// Work in the module over Q(z) spanned by the formal jets u_0 = w,
// u_1 = w', ..., u_{m-1} = w^{(m-1)}; the equation replaces u_m by
// sum_k G_k/psi^k u_{m-k}. The frame w_k = psi^{k-1} u_{k-1} must satisfy
// d w_k = sum_j (A_{jk}/psi) w_j with A the modified companion matrix.

using JetVec = std::vector<RationalFunction>; // coefficients of u_0..u_{m-1}

/// d/dz of sum_i c_i(z) u_i, reducing u_m through the equation.
inline JetVec jet_derivative(const FuchsianOperator &op, const JetVec &v) {
    const std::size_t m = op.m;
    JetVec out(m);
    const RationalFunction psi{op.psi(), Polynomial(1)};
    for (std::size_t i = 0; i < m; ++i) {
        out[i] += v[i].derivative();
        if (i + 1 < m) {
            out[i + 1] += v[i];
        } else {
            // u_m = sum_{k=1..m} G_k / psi^k u_{m-k}
            RationalFunction pw{Polynomial(1), Polynomial(1)};
            for (std::size_t k = 1; k <= m; ++k) {
                pw = pw * RationalFunction(Polynomial(1), op.psi());
                out[m - k] += v[i] * (RationalFunction{op.G[k - 1], Polynomial(1)} * pw);
            }
        }
    }
    return out;
}

/// Checks d w_k = sum_j (A_{jk}/psi) w_j for every k.
inline bool companion_intertwines(const FuchsianOperator &op) {
    const std::size_t m = op.m;
    const PolyMatrix a = companion_matrix(op);
    const RationalFunction inv_psi{Polynomial(1), op.psi()};
    std::vector<JetVec> frame;
    {
        RationalFunction pw{Polynomial(1), Polynomial(1)};
        for (std::size_t k = 0; k < m; ++k) {
            JetVec w(m);
            w[k] = pw; // w_{k+1} = psi^k u_k
            frame.push_back(w);
            pw = pw * RationalFunction{op.psi(), Polynomial(1)};
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        const JetVec lhs = jet_derivative(op, frame[k]);
        JetVec rhs(m);
        for (std::size_t j = 0; j < m; ++j) {
            const RationalFunction coeff =
                RationalFunction{a(j, k), Polynomial(1)} * inv_psi;
            for (std::size_t i = 0; i < m; ++i) rhs[i] += coeff * frame[j][i];
        }
        for (std::size_t i = 0; i < m; ++i)
            if (!(lhs[i] - rhs[i]).is_zero()) return false;
    }
    return true;
}

} // namespace testutil
