#pragma once

// Fuchsian operators
//
//   w^(m) - G_1/psi w^(m-1) - ... - G_m/psi^m w = 0
//
// with psi = (z-p_1)...(z-p_n). Fuchs' criterion: deg G_k <= k(n-1).

#include "fuchs/polynomial.hpp"
#include "fuchs/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuchs {

struct FuchsianOperator {
    std::size_t m = 0;                 // order, >= 2
    std::vector<Rational> punctures;   // p_1..p_n, distinct, n >= 2
    std::vector<Polynomial> G;         // G_1..G_m

    std::size_t n() const { return punctures.size(); }

    /// (z-p_1)...(z-p_n), monic of degree n.
    Polynomial psi() const {
        Polynomial p(1);
        for (const auto &pt : punctures) p *= Polynomial::linear_root(pt);
        return p;
    }
    Polynomial psi_prime() const { return psi().derivative(); }
};

struct FuchsViolation {
    std::string what; // human-readable description
};

struct ValidationReport {
    bool accepted = true;
    std::vector<FuchsViolation> violations;

    void reject(std::string msg) {
        accepted = false;
        violations.push_back({std::move(msg)});
    }
};

/// Structural checks plus Fuchs' degree criterion. Violations are reported,
/// not thrown; parse errors are a separate path.
inline ValidationReport validate_fuchs(const FuchsianOperator &op) {
    ValidationReport rep;
    if (op.m < 2) rep.reject("m must be >= 2, got " + std::to_string(op.m));
    if (op.n() < 2) rep.reject("need at least 2 punctures, got " + std::to_string(op.n()));
    for (std::size_t i = 0; i < op.punctures.size(); ++i)
        for (std::size_t j = i + 1; j < op.punctures.size(); ++j)
            if (op.punctures[i] == op.punctures[j])
                rep.reject("duplicate puncture " + op.punctures[i].str());
    if (op.G.size() != op.m) {
        rep.reject("expected " + std::to_string(op.m) + " coefficient polynomials, got " +
                   std::to_string(op.G.size()));
        return rep;
    }
    const long nm1 = (long)op.n() - 1;
    for (std::size_t k = 1; k <= op.G.size(); ++k) {
        const long bound = (long)k * nm1;
        const long deg = op.G[k - 1].degree();
        if (deg > bound)
            rep.reject("deg G_" + std::to_string(k) + " = " + std::to_string(deg) + " > " +
                       std::to_string(bound));
    }
    return rep;
}

/// Reduction of the classical hypergeometric equation
///   z(1-z) w'' + [c - (a+b+1) z] w' - ab w = 0
/// to the normal form with punctures {0, 1}:
///   G_1 = c - (a+b+1) z,  G_2 = ab z (1-z).
/// Exponents: {0, 1-c} at 0, {0, c-a-b} at 1, {a, b} at infinity.
inline FuchsianOperator hypergeometric(const Rational &a, const Rational &b, const Rational &c) {
    FuchsianOperator op;
    op.m = 2;
    op.punctures = {Rational(0), Rational(1)};
    op.G.resize(2);
    op.G[0] = Polynomial({c, -(a + b + Rational(1))});
    const Rational ab = a * b;
    op.G[1] = Polynomial({Rational(0), ab, -ab});
    return op;
}

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

inline nlohmann::json operator_to_json(const FuchsianOperator &op) {
    nlohmann::json j;
    j["m"] = op.m;
    j["punctures"] = nlohmann::json::array();
    for (const auto &p : op.punctures) j["punctures"].push_back(p.str());
    j["G"] = nlohmann::json::array();
    for (const auto &g : op.G) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto &c : g.coeffs()) coeffs.push_back(c.str());
        j["G"].push_back(coeffs);
    }
    return j;
}

/// Bit-exact operator schema:
///   {"m": int, "punctures": ["a" | "a/b", ...], "G": [[coeff, ...], ...]}
/// with coefficients ascending in degree. Throws ParseError with a location
/// string on malformed input; Fuchs-criterion violations go through
/// validate_fuchs instead.
inline FuchsianOperator operator_from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw ParseError("top level: expected an object");
    if (!j.contains("m") || !j["m"].is_number_integer())
        throw ParseError("field 'm': expected an integer");
    const long m = j["m"].get<long>();
    if (m < 2) throw ParseError("field 'm': m must be >= 2");
    FuchsianOperator op;
    op.m = (std::size_t)m;
    if (!j.contains("punctures") || !j["punctures"].is_array())
        throw ParseError("field 'punctures': expected an array");
    for (std::size_t i = 0; i < j["punctures"].size(); ++i) {
        const auto &e = j["punctures"][i];
        if (!e.is_string())
            throw ParseError("punctures[" + std::to_string(i) + "]: expected a rational string");
        const auto r = Rational::parse(e.get<std::string>());
        if (!r)
            throw ParseError("punctures[" + std::to_string(i) + "]: bad rational literal '" +
                             e.get<std::string>() + "'");
        op.punctures.push_back(*r);
    }
    if (!j.contains("G") || !j["G"].is_array())
        throw ParseError("field 'G': expected an array of coefficient arrays");
    if (j["G"].size() != op.m)
        throw ParseError("field 'G': expected " + std::to_string(op.m) + " entries, got " +
                         std::to_string(j["G"].size()));
    for (std::size_t k = 0; k < j["G"].size(); ++k) {
        const auto &arr = j["G"][k];
        if (!arr.is_array())
            throw ParseError("G[" + std::to_string(k) + "]: expected a coefficient array");
        std::vector<Rational> coeffs;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_string())
                throw ParseError("G[" + std::to_string(k) + "][" + std::to_string(i) +
                                 "]: expected a rational string");
            const auto r = Rational::parse(arr[i].get<std::string>());
            if (!r)
                throw ParseError("G[" + std::to_string(k) + "][" + std::to_string(i) +
                                 "]: bad rational literal '" + arr[i].get<std::string>() + "'");
            coeffs.push_back(*r);
        }
        op.G.emplace_back(std::move(coeffs));
    }
    return op;
}

inline FuchsianOperator parse_operator(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
    return operator_from_json(j);
}

inline std::string serialize_operator(const FuchsianOperator &op) {
    return operator_to_json(op).dump();
}

} // namespace fuchs
