#pragma once

// Dense exact linear algebra over Rational: Gaussian elimination, kernels,
// characteristic polynomials. Dimensions here stay in the low hundreds, so
// plain fraction arithmetic is adequate.

#include "fuchs/polynomial.hpp"
#include "fuchs/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fuchs {

class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}
    QMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto &row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto &x : row) e_.push_back(x);
        }
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational &operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational &operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend bool operator==(const QMatrix &a, const QMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const QMatrix &a, const QMatrix &b) { return !(a == b); }

    friend QMatrix operator+(const QMatrix &a, const QMatrix &b) {
        a.check_same_shape_(b);
        QMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend QMatrix operator-(const QMatrix &a, const QMatrix &b) {
        a.check_same_shape_(b);
        QMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }
    friend QMatrix operator*(const QMatrix &a, const QMatrix &b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        QMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend QMatrix operator*(const Rational &s, const QMatrix &m) {
        QMatrix r = m;
        for (auto &x : r.e_) x *= s;
        return r;
    }

    QMatrix transpose() const {
        QMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    Rational trace() const {
        if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
        Rational t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    std::vector<Rational> apply(const std::vector<Rational> &v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<Rational> r(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r[i] += (*this)(i, j) * v[j];
        return r;
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && (*this)(sel, col).is_zero()) ++sel;
            if (sel == rows_) continue;
            swap_rows_(sel, row);
            const Rational inv = (*this)(row, col).inv();
            for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || (*this)(i, col).is_zero()) continue;
                const Rational f = (*this)(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        QMatrix t = *this;
        return t.rref().size();
    }

    /// Basis of the right kernel; rank + basis size = cols.
    std::vector<std::vector<Rational>> kernel_basis() const {
        QMatrix t = *this;
        const auto pivots = t.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<Rational> v(cols_, Rational(0));
            v[free_col] = Rational(1);
            for (std::size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -t(r, free_col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// One solution of M x = b, or nullopt when inconsistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational> &b) const {
        if (b.size() != rows_) throw std::invalid_argument("rhs size mismatch");
        QMatrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        const auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<Rational> x(cols_, Rational(0));
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
        return x;
    }

    QMatrix inverse() const {
        if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
        QMatrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = Rational(1);
        }
        const auto pivots = aug.rref();
        if (pivots.size() < rows_ || pivots[rows_ - 1] != rows_ - 1)
            throw std::domain_error("singular matrix");
        QMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = aug(i, cols_ + j);
        return r;
    }

    Rational det() const {
        if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
        QMatrix t = *this;
        Rational d(1);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t sel = col;
            while (sel < rows_ && t(sel, col).is_zero()) ++sel;
            if (sel == rows_) return Rational(0);
            if (sel != col) {
                t.swap_rows_(sel, col);
                d = -d;
            }
            d *= t(col, col);
            const Rational inv = t(col, col).inv();
            for (std::size_t i = col + 1; i < rows_; ++i) {
                if (t(i, col).is_zero()) continue;
                const Rational f = t(i, col) * inv;
                for (std::size_t j = col; j < cols_; ++j) t(i, j) -= f * t(col, j);
            }
        }
        return d;
    }

private:
    void check_same_shape_(const QMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }
    void swap_rows_(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

/// det(lambda*I - M), monic, by the Faddeev-LeVerrier recurrence.
inline Polynomial charpoly(const QMatrix &m) {
    if (!m.is_square()) throw std::invalid_argument("charpoly of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = Rational(1);
    QMatrix mk = QMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        const Rational ck = Rational(-1, (long)k) * mk.trace();
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
    }
    return Polynomial(c);
}

} // namespace fuchs
