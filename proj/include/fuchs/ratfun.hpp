#pragma once

// Rational functions in z and matrices thereof. The chart at infinity uses
// zeta = 1/z; pole orders and Laurent data at zeta = 0 are computed exactly
// from the degrees and reversed-coefficient power series.

#include "fuchs/polymatrix.hpp"
#include "fuchs/polynomial.hpp"

#include <climits>
#include <cstddef>
#include <map>
#include <utility>
#include <stdexcept>
#include <vector>

namespace fuchs {

/// num/den with gcd removed and den monic; zero is 0/1.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial(1)) {}
    RationalFunction(const Polynomial &p) : num_(p), den_(Polynomial(1)) {}
    RationalFunction(const Rational &c) : num_(Polynomial(c)), den_(Polynomial(1)) {}
    RationalFunction(const Polynomial &num, const Polynomial &den) : num_(num), den_(den) {
        normalize_();
    }

    const Polynomial &num() const { return num_; }
    const Polynomial &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, no_normalize{}); }
    friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b) {
        if (b.is_zero()) throw std::domain_error("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction &operator+=(const RationalFunction &o) { return *this = *this + o; }
    RationalFunction &operator-=(const RationalFunction &o) { return *this = *this - o; }
    RationalFunction &operator*=(const RationalFunction &o) { return *this = *this * o; }

    friend bool operator==(const RationalFunction &a, const RationalFunction &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction &a, const RationalFunction &b) {
        return !(a == b);
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Defined whenever den(z) != 0.
    Rational eval(const Rational &z) const {
        const Rational d = den_(z);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return num_(z) / d;
    }

    /// Order of pole at zeta = 0 (positive = pole, negative = zero of that
    /// order, 0 = finite nonzero limit). Zero function reports large zero order.
    long pole_order_at_infinity() const {
        if (is_zero()) return LONG_MIN / 2;
        return num_.degree() - den_.degree();
    }

    /// Value at zeta = 0, requires pole_order_at_infinity() <= 0.
    Rational value_at_infinity() const {
        if (is_zero()) return Rational(0);
        const long o = pole_order_at_infinity();
        if (o > 0) throw std::domain_error("pole at infinity");
        if (o < 0) return Rational(0);
        return num_.lead() / den_.lead();
    }

    /// Laurent coefficients a_k of sum a_k zeta^k for k in [k_min, k_max],
    /// expanding around zeta = 0.
    std::map<long, Rational> laurent_at_infinity(long k_max) const {
        std::map<long, Rational> out;
        if (is_zero()) return out;
        const long dp = num_.degree(), dq = den_.degree();
        const long lead_ord = dq - dp; // R = zeta^{dq-dp} * Prev/Qrev
        if (k_max < lead_ord) return out;
        const std::size_t terms = (std::size_t)(k_max - lead_ord) + 1;
        // reversed-coefficient series
        auto rev = [](const Polynomial &p) {
            std::vector<Rational> c(p.coeffs().rbegin(), p.coeffs().rend());
            return c;
        };
        const std::vector<Rational> pr = rev(num_), qr = rev(den_);
        std::vector<Rational> s(terms, Rational(0));
        const Rational q0inv = qr[0].inv();
        for (std::size_t k = 0; k < terms; ++k) {
            Rational acc = k < pr.size() ? pr[k] : Rational(0);
            for (std::size_t j = 1; j <= k; ++j)
                if (j < qr.size()) acc -= qr[j] * s[k - j];
            s[k] = acc * q0inv;
        }
        for (std::size_t k = 0; k < terms; ++k)
            if (!s[k].is_zero()) out[lead_ord + (long)k] = s[k];
        return out;
    }

private:
    struct no_normalize {};
    RationalFunction(Polynomial n, Polynomial d, no_normalize) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize_() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        const Polynomial g = Polynomial::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        const Rational lc = den_.lead();
        num_ = lc.inv() * num_;
        den_ = lc.inv() * den_;
    }

    Polynomial num_, den_;
};

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = RationalFunction(Polynomial(1));
        return m;
    }
    static RatMatrix from_poly(const PolyMatrix &p) {
        RatMatrix m(p.rows(), p.cols());
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                m(i, j) = RationalFunction(p(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RationalFunction &operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const RationalFunction &operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend RatMatrix operator+(const RatMatrix &a, const RatMatrix &b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        RatMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend RatMatrix operator-(const RatMatrix &a, const RatMatrix &b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        RatMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }
    friend RatMatrix operator*(const RatMatrix &a, const RatMatrix &b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        RatMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend RatMatrix operator*(const RationalFunction &s, const RatMatrix &m) {
        RatMatrix r = m;
        for (auto &x : r.e_) x *= s;
        return r;
    }

    friend bool operator==(const RatMatrix &a, const RatMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMatrix &a, const RatMatrix &b) { return !(a == b); }

    RatMatrix transpose() const {
        RatMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    RatMatrix derivative() const {
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = (*this)(i, j).derivative();
        return r;
    }

    /// Gauss-Jordan over the function field.
    RatMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        RatMatrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = RationalFunction(Polynomial(1));
        }
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t sel = col;
            while (sel < rows_ && aug(sel, col).is_zero()) ++sel;
            if (sel == rows_) throw std::domain_error("singular rational matrix");
            if (sel != col)
                for (std::size_t j = 0; j < 2 * cols_; ++j)
                    std::swap(aug(sel, j), aug(col, j));
            const RationalFunction inv = RationalFunction(Polynomial(1)) / aug(col, col);
            for (std::size_t j = 0; j < 2 * cols_; ++j) aug(col, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == col || aug(i, col).is_zero()) continue;
                const RationalFunction f = aug(i, col);
                for (std::size_t j = 0; j < 2 * cols_; ++j)
                    aug(i, j) -= f * aug(col, j);
            }
        }
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = aug(i, cols_ + j);
        return r;
    }

    bool is_zero() const {
        for (const auto &x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Max pole order over entries at zeta = 0.
    long pole_order_at_infinity() const {
        long o = LONG_MIN / 2;
        for (const auto &x : e_)
            if (!x.is_zero()) o = std::max(o, x.pole_order_at_infinity());
        return o;
    }

    /// Entry-wise value at zeta = 0; requires no entry to have a pole there.
    QMatrix value_at_infinity() const {
        QMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = (*this)(i, j).value_at_infinity();
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<RationalFunction> e_;
};

inline RatMatrix commutator(const RatMatrix &a, const RatMatrix &b) {
    return a * b - b * a;
}

} // namespace fuchs
