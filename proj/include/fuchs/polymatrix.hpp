#pragma once

// Rectangular matrices with polynomial entries (connection matrices in the
// affine chart, gauge transformations, section representatives).

#include "fuchs/matrix.hpp"
#include "fuchs/polynomial.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fuchs {

class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static PolyMatrix identity(std::size_t n) {
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial(1);
        return m;
    }
    static PolyMatrix from_scalar(const QMatrix &q) {
        PolyMatrix m(q.rows(), q.cols());
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j)
                m(i, j) = Polynomial(q(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Polynomial &operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Polynomial &operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend bool operator==(const PolyMatrix &a, const PolyMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const PolyMatrix &a, const PolyMatrix &b) { return !(a == b); }

    friend PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b) {
        a.check_same_shape_(b);
        PolyMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b) {
        a.check_same_shape_(b);
        PolyMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }
    friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        PolyMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend PolyMatrix operator*(const Polynomial &s, const PolyMatrix &m) {
        PolyMatrix r = m;
        for (auto &x : r.e_) x *= s;
        return r;
    }

    PolyMatrix transpose() const {
        PolyMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    PolyMatrix derivative() const {
        PolyMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = (*this)(i, j).derivative();
        return r;
    }

    QMatrix eval(const Rational &z) const {
        QMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = (*this)(i, j)(z);
        return r;
    }

    bool is_zero() const {
        for (const auto &p : e_)
            if (!p.is_zero()) return false;
        return true;
    }

    long max_degree() const {
        long d = -1;
        for (const auto &p : e_) d = std::max(d, p.degree());
        return d;
    }

    Polynomial trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
        Polynomial t;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

private:
    void check_same_shape_(const PolyMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Polynomial> e_;
};

/// Commutator A*B - B*A.
inline PolyMatrix commutator(const PolyMatrix &a, const PolyMatrix &b) {
    return a * b - b * a;
}

} // namespace fuchs
