#pragma once

// Exact rational scalars on top of GMP. Everything downstream of this
// header is exact: no floating point enters the primary pipeline.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuchs {

using Integer = mpz_class;

/// Arbitrary-precision rational in canonical form (denominator > 0,
/// gcd(|num|, den) = 1). mpq_class already maintains this invariant as
/// long as values are canonicalized on construction.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const Integer &n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) { canon_(); }
    Rational(const Integer &n, const Integer &d) : v_(n, d) { canon_(); }
    explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }

    const mpq_class &raw() const { return v_; }
    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.v_ >= b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    Rational inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    /// Largest integer <= value.
    Integer floor() const {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }
    Integer ceil() const {
        Integer q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    /// Serializes as "a" for integers, "a/b" otherwise.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Parses "a" or "a/b" with b > 0 after canonicalization.
    static std::optional<Rational> parse(const std::string &s) {
        if (s.empty()) return std::nullopt;
        auto valid = [](const std::string &t) {
            if (t.empty()) return false;
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                if (!valid(s)) return std::nullopt;
                return Rational(Integer(s));
            }
            std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
            if (!valid(ns) || !valid(ds)) return std::nullopt;
            Integer n(ns), d(ds);
            if (sgn(d) <= 0) return std::nullopt;
            return Rational(n, d);
        } catch (const std::invalid_argument &) {
            return std::nullopt;
        }
    }

private:
    void canon_() {
        if (v_.get_den() == 0) throw std::domain_error("zero denominator");
        v_.canonicalize();
    }
    mpq_class v_;
};

inline Rational abs(const Rational &x) { return x.abs(); }

} // namespace fuchs
