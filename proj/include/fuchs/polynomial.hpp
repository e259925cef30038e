#pragma once

// Dense univariate polynomials over Rational, ascending coefficient order.
// The zero polynomial is the empty coefficient sequence.

#include "fuchs/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fuchs {

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational &c) { if (!c.is_zero()) c_.push_back(c); }
    Polynomial(long c) : Polynomial(Rational(c)) {}
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim_(); }

    static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }
    /// z - a
    static Polynomial linear_root(const Rational &a) { return Polynomial({-a, Rational(1)}); }
    static Polynomial monomial(std::size_t k, const Rational &c = Rational(1)) {
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /// degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational> &coeffs() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational lead() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == Rational(1); }

    Polynomial operator-() const {
        std::vector<Rational> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Rational &s, const Polynomial &p) {
        return Polynomial(s) * p;
    }
    Polynomial &operator+=(const Polynomial &o) { return *this = *this + o; }
    Polynomial &operator-=(const Polynomial &o) { return *this = *this - o; }
    Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }

    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

    Rational operator()(const Rational &z) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rational((long)i) * c_[i];
        return Polynomial(std::move(r));
    }

    /// p(x + a)
    Polynomial shift(const Rational &a) const {
        Polynomial r, pw(Rational(1)), xa({a, Rational(1)});
        for (std::size_t i = 0; i < c_.size(); ++i) {
            r += Polynomial(c_[i]) * pw;
            pw *= xa;
        }
        return r;
    }

    /// Euclidean division; requires divisor nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        Polynomial rem = a, quot;
        const long db = b.degree();
        const Rational lb = b.lead();
        while (!rem.is_zero() && rem.degree() >= db) {
            const long k = rem.degree() - db;
            const Rational c = rem.lead() / lb;
            Polynomial t = monomial((std::size_t)k, c);
            quot += t;
            rem -= t * b;
        }
        return {quot, rem};
    }
    friend Polynomial operator/(const Polynomial &a, const Polynomial &b) { return divmod(a, b).first; }
    friend Polynomial operator%(const Polynomial &a, const Polynomial &b) { return divmod(a, b).second; }

    bool divides(const Polynomial &a) const { return (a % *this).is_zero(); }

    Polynomial monic() const {
        if (is_zero()) return {};
        return Rational(1) / lead() * *this;
    }

    /// Monic gcd by the Euclidean algorithm.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string str(const std::string &var = "z") const;

private:
    void trim_() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline std::string Polynomial::str(const std::string &var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        Rational c = c_[i];
        if (!out.empty()) {
            out += (c.sign() < 0) ? " - " : " + ";
            c = c.abs();
        } else if (c.sign() < 0) {
            out += "-";
            c = c.abs();
        }
        const bool unit = (c == Rational(1)) && i > 0;
        if (!unit) out += c.str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace detail {

/// Sturm chain root counting for a square-free polynomial.
class RootCounter {
public:
    explicit RootCounter(const Polynomial &p) {
        chain_.push_back(p);
        chain_.push_back(p.derivative());
        while (!chain_.back().is_zero() && chain_.back().degree() > 0)
            chain_.push_back(-(chain_[chain_.size() - 2] % chain_.back()));
        if (chain_.back().is_zero()) chain_.pop_back();
    }
    int sign_changes(const Rational &x) const {
        int changes = 0, prev = 0;
        for (const auto &q : chain_) {
            const int s = q(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }
    /// Number of roots in (a, b].
    long roots_in(const Rational &a, const Rational &b) const {
        return sign_changes(a) - sign_changes(b);
    }

private:
    std::vector<Polynomial> chain_;
};

/// The rational with the smallest denominator in the closed interval
/// [lo, hi], by the continued-fraction (Stern-Brocot) construction.
inline Rational simplest_in(const Rational &lo, const Rational &hi) {
    if (hi < lo) return simplest_in(hi, lo);
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return -simplest_in(-hi, -lo);
    // 0 < lo <= hi
    const Rational f(lo.floor());
    if (lo == f) return lo; // integer endpoint
    if (f + Rational(1) <= hi) return f + Rational(1);
    // same integer part; recurse on the reciprocal of the fractional parts
    return f + simplest_in((hi - f).inv(), (lo - f).inv()).inv();
}

} // namespace detail

/// All rational roots of p with multiplicity; empty when none. The product
/// of the corresponding linear factors divides p exactly.
///
/// Method: real roots of the square-free part are isolated with a Sturm
/// chain; each isolating interval is narrowed below 1/(2 B^2), where B is
/// the leading coefficient of the primitive integer form (every rational
/// root has denominator dividing B, so distinct admissible rationals are at
/// least 1/B^2 apart). The smallest-denominator rational in the interval is
/// then the only possible root and is tested by substitution, so no
/// divisor enumeration and no factoring is ever needed.
inline std::vector<Rational> rational_roots(const Polynomial &p) {
    if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
    std::vector<Rational> roots;
    Polynomial q = p;
    // factors of x
    while (q.coeff(0).is_zero() && q.degree() > 0) {
        roots.push_back(Rational(0));
        std::vector<Rational> shifted(q.coeffs().begin() + 1, q.coeffs().end());
        q = Polynomial(shifted);
    }
    if (q.degree() <= 0) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    // square-free part, as a primitive integer polynomial
    Polynomial s = (q / Polynomial::gcd(q, q.derivative())).monic();
    Integer den = 1;
    for (const auto &c : s.coeffs()) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
        den = den / g * c.den();
    }
    std::vector<Rational> ic;
    Integer content = 0;
    for (const auto &c : s.coeffs()) {
        const Integer v = c.num() * (den / c.den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        ic.push_back(Rational(v));
    }
    for (auto &c : ic) c = Rational(Integer(c.num() / content));
    s = Polynomial(ic);

    const Integer lead = abs(s.lead().num());
    // distinct rationals with denominator dividing `lead` differ by >= 1/lead^2
    const Rational separation = Rational(Integer(1), Integer(2) * lead * lead);
    Rational bound(1);
    for (long i = 0; i < s.degree(); ++i) {
        const Rational c = s.coeff((std::size_t)i).abs() / s.lead().abs();
        if (c + Rational(1) > bound) bound = c + Rational(1);
    }

    const detail::RootCounter sturm(s);
    std::vector<Rational> found;
    std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        const long count = sturm.roots_in(lo, hi);
        if (count == 0) continue;
        if (count == 1 && hi - lo < separation) {
            const Rational cand = detail::simplest_in(lo, hi);
            if (s(cand).is_zero()) found.push_back(cand);
            continue;
        }
        const Rational mid = (lo + hi) / Rational(2);
        if (s(mid).is_zero()) {
            found.push_back(mid);
            // exclude a neighborhood holding only this root, then recurse
            Rational eps = (hi - lo) / Rational(4);
            while (sturm.roots_in(mid - eps, mid + eps) != 1) eps /= Rational(2);
            work.push_back({lo, mid - eps});
            work.push_back({mid + eps, hi});
            continue;
        }
        work.push_back({lo, mid});
        work.push_back({mid, hi});
    }

    // restore multiplicities against the original polynomial
    for (const auto &r : found)
        while (!q.is_zero() && q.degree() > 0 && q(r).is_zero()) {
            roots.push_back(r);
            q = q / Polynomial::linear_root(r);
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace fuchs
