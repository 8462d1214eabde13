#pragma once

#include "coho/numeric.hpp"

#include <vector>

namespace coho {

/// Dense matrix over the unbounded integers, row-major.
class IMat {
public:
    IMat() = default;
    IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IMat identity(int n) {
        IMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    IMat operator*(const IMat& o) const {
        IMat out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    if (o.at(k, j) != 0) out.at(i, j) += v * o.at(k, j);
            }
        return out;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        std::vector<Int> out(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) out[i] += at(i, j) * x[j];
        return out;
    }

    bool operator==(const IMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    /// Horizontal concatenation [this | o].
    IMat hcat(const IMat& o) const {
        IMat out(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
        }
        return out;
    }

    /// Vertical concatenation [this; o].
    IMat vcat(const IMat& o) const {
        IMat out(rows_ + o.rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = o.at(i, j);
        return out;
    }

    IMat column(int c) const {
        IMat out(rows_, 1);
        for (int i = 0; i < rows_; ++i) out.at(i, 0) = at(i, c);
        return out;
    }

    std::vector<Int> column_vec(int c) const {
        std::vector<Int> out(rows_);
        for (int i = 0; i < rows_; ++i) out[i] = at(i, c);
        return out;
    }

    static IMat diagonal(const std::vector<i64>& d) {
        IMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.rows(); ++i) m.at(i, i) = d[i];
        return m;
    }

    static IMat from_columns(int rows, const std::vector<std::vector<Int>>& cols) {
        IMat m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

} // namespace coho
