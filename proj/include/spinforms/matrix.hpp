#pragma once

#include <vector>

#include "spinforms/scalar.hpp"

namespace spinforms {

/// Small dense matrix over the exact Scalar field.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ScalarMatrix identity(std::size_t n) {
        ScalarMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
        ScalarMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
        return out;
    }
    friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
        ScalarMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
        return out;
    }
    friend ScalarMatrix operator*(const Scalar& c, const ScalarMatrix& a) {
        ScalarMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = c * a.data_[i];
        return out;
    }
    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
        ScalarMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(r, k).is_zero()) continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    out.at(r, c) += a.at(r, k) * b.at(k, c);
            }
        return out;
    }
    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const ScalarMatrix& a, const ScalarMatrix& b) { return !(a == b); }

    ScalarMatrix conj_transpose() const {
        ScalarMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c).conj();
        return out;
    }

    bool is_zero() const {
        for (const auto& s : data_)
            if (!s.is_zero()) return false;
        return true;
    }

    /// In-place reduced row echelon form; returns the rank.
    std::size_t rref() {
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t pivot = rank;
            while (pivot < rows_ && at(pivot, col).is_zero()) ++pivot;
            if (pivot == rows_) continue;
            if (pivot != rank)
                for (std::size_t c = 0; c < cols_; ++c) std::swap(at(pivot, c), at(rank, c));
            Scalar inv = Scalar(1) / at(rank, col);
            for (std::size_t c = 0; c < cols_; ++c) at(rank, c) = inv * at(rank, c);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank || at(r, col).is_zero()) continue;
                Scalar f = at(r, col);
                for (std::size_t c = 0; c < cols_; ++c) at(r, c) = at(r, c) - f * at(rank, c);
            }
            ++rank;
        }
        return rank;
    }

    /// Exact inverse via Gauss-Jordan; throws on singular input.
    ScalarMatrix inverse() const {
        if (rows_ != cols_) throw ScalarError("inverse of non-square matrix");
        ScalarMatrix aug(rows_, 2 * cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_ + r) = Scalar(1);
        }
        if (aug.rref() != rows_) throw ScalarError("singular matrix");
        ScalarMatrix out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = aug.at(r, cols_ + c);
        return out;
    }

    /// Solves A x = rhs exactly; returns false if inconsistent.
    static bool solve(const ScalarMatrix& A, const std::vector<Scalar>& rhs, std::vector<Scalar>& x) {
        ScalarMatrix aug(A.rows_, A.cols_ + 1);
        for (std::size_t r = 0; r < A.rows_; ++r) {
            for (std::size_t c = 0; c < A.cols_; ++c) aug.at(r, c) = A.at(r, c);
            aug.at(r, A.cols_) = rhs[r];
        }
        aug.rref();
        x.assign(A.cols_, Scalar());
        std::vector<bool> pivot_col(A.cols_, false);
        for (std::size_t r = 0; r < A.rows_; ++r) {
            std::size_t lead = A.cols_ + 1;
            for (std::size_t c = 0; c <= A.cols_; ++c) {
                if (!aug.at(r, c).is_zero()) {
                    lead = c;
                    break;
                }
            }
            if (lead == A.cols_) return false;  // 0 = nonzero
            if (lead > A.cols_) continue;       // zero row
            pivot_col[lead] = true;
            x[lead] = aug.at(r, A.cols_);
        }
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

}  // namespace spinforms
