#pragma once

#include "coho/matrix.hpp"

#include <optional>

namespace coho {

/// Smith normal form u*a*v = d with d diagonal, nonnegative, and each
/// diagonal entry dividing the next. u, v are unimodular; ui, vi their
/// inverses, tracked during elimination.
struct SmithDecomposition {
    IMat d;
    IMat u, ui;
    IMat v, vi;
    int rank = 0;

    Int diag(int i) const {
        if (i < d.rows() && i < d.cols()) return d.at(i, i);
        return 0;
    }
};

namespace detail {

inline void swap_rows(IMat& m, int i, int j) {
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}
inline void swap_cols(IMat& m, int i, int j) {
    for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
}
// row_i -= q * row_j
inline void row_axpy(IMat& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols(); ++c)
        if (m.at(j, c) != 0) m.at(i, c) -= q * m.at(j, c);
}
// col_i -= q * col_j
inline void col_axpy(IMat& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < m.rows(); ++r)
        if (m.at(r, j) != 0) m.at(r, i) -= q * m.at(r, j);
}
inline void negate_row(IMat& m, int i) {
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}
inline void negate_col(IMat& m, int j) {
    for (int r = 0; r < m.rows(); ++r) m.at(r, j) = -m.at(r, j);
}

} // namespace detail

/// track_rows=false skips accumulating u/ui (they come back empty); the
/// diagonal, rank, and column transforms stay valid. Kernel computations on
/// wide matrices use this to avoid a rows x rows transform.
inline SmithDecomposition smith(const IMat& a, bool track_rows = true) {
    using namespace detail;
    SmithDecomposition s;
    s.d = a;
    s.u = IMat::identity(track_rows ? a.rows() : 0);
    s.ui = IMat::identity(track_rows ? a.rows() : 0);
    s.v = IMat::identity(a.cols());
    s.vi = IMat::identity(a.cols());
    IMat& d = s.d;

    const int n = std::min(a.rows(), a.cols());
    int t = 0;
    while (t < n) {
        // Smallest nonzero entry of the trailing submatrix becomes the pivot.
        int pi = -1, pj = -1;
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj))) { pi = i; pj = j; }
            }
        if (pi < 0) break; // trailing block is zero

        if (pi != t) {
            swap_rows(d, pi, t);
            if (track_rows) { swap_rows(s.u, pi, t); swap_cols(s.ui, pi, t); }
        }
        if (pj != t) { swap_cols(d, pj, t); swap_cols(s.v, pj, t); swap_rows(s.vi, pj, t); }

        bool dirty = false;
        for (int i = t + 1; i < d.rows() && !dirty; ++i) {
            if (d.at(i, t) == 0) continue;
            Int q = d.at(i, t) / d.at(t, t);
            row_axpy(d, i, t, q);
            if (track_rows) { row_axpy(s.u, i, t, q); col_axpy(s.ui, t, i, -q); }
            if (d.at(i, t) != 0) dirty = true; // smaller remainder, re-pick pivot
        }
        if (dirty) continue;
        for (int j = t + 1; j < d.cols() && !dirty; ++j) {
            if (d.at(t, j) == 0) continue;
            Int q = d.at(t, j) / d.at(t, t);
            col_axpy(d, j, t, q); col_axpy(s.v, j, t, q); row_axpy(s.vi, t, j, -q);
            if (d.at(t, j) != 0) dirty = true;
        }
        if (dirty) continue;

        // Enforce the divisibility chain: pull in any entry the pivot misses.
        for (int i = t + 1; i < d.rows() && !dirty; ++i)
            for (int j = t + 1; j < d.cols() && !dirty; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    row_axpy(d, t, i, Int(-1));
                    if (track_rows) { row_axpy(s.u, t, i, Int(-1)); col_axpy(s.ui, i, t, Int(1)); }
                    dirty = true;
                }
        if (dirty) continue;

        if (d.at(t, t) < 0) {
            negate_row(d, t);
            if (track_rows) { negate_row(s.u, t); negate_col(s.ui, t); }
        }
        ++t;
    }
    s.rank = t;
    return s;
}

/// Solves a*x = b over the integers. Empty result when no solution exists.
inline std::optional<std::vector<Int>> solve_integer(const SmithDecomposition& s,
                                                     const std::vector<Int>& b) {
    std::vector<Int> c = s.u.apply(b);
    std::vector<Int> y(s.d.cols());
    for (int i = 0; i < s.d.rows(); ++i) {
        Int di = s.diag(i);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % di != 0) return std::nullopt;
            y[i] = c[i] / di;
        }
    }
    return s.v.apply(y);
}

inline std::optional<std::vector<Int>> solve_integer(const IMat& a, const std::vector<Int>& b) {
    return solve_integer(smith(a), b);
}

/// Basis of {x : a*x = 0} as matrix columns.
inline IMat kernel_basis(const IMat& a) {
    SmithDecomposition s = smith(a, /*track_rows=*/false);
    IMat out(a.cols(), a.cols() - s.rank);
    for (int j = s.rank; j < a.cols(); ++j)
        for (int i = 0; i < a.cols(); ++i) out.at(i, j - s.rank) = s.v.at(i, j);
    return out;
}

/// Column-style Hermite normal form of the column lattice of a: the unique
/// canonical basis with positive pivots on strictly increasing rows and the
/// entries left of each pivot reduced to [0, pivot). Zero columns dropped.
inline IMat hermite_basis(const IMat& a) {
    using namespace detail;
    IMat m = a;
    int r = 0;
    for (int i = 0; i < m.rows() && r < m.cols(); ++i) {
        // gcd the row-i entries of columns >= r into column r
        while (true) {
            int best = -1;
            for (int j = r; j < m.cols(); ++j)
                if (m.at(i, j) != 0 && (best < 0 || abs(m.at(i, j)) < abs(m.at(i, best)))) best = j;
            if (best < 0) break;
            if (best != r) swap_cols(m, best, r);
            bool clear = true;
            for (int j = r + 1; j < m.cols(); ++j) {
                if (m.at(i, j) == 0) continue;
                Int q = m.at(i, j) / m.at(i, r);
                col_axpy(m, j, r, q);
                if (m.at(i, j) != 0) clear = false;
            }
            if (clear) break;
        }
        if (m.at(i, r) == 0) continue;
        if (m.at(i, r) < 0) negate_col(m, r);
        for (int j = 0; j < r; ++j) {
            // floor division keeps residues in [0, pivot)
            Int q = m.at(i, j) / m.at(i, r);
            if (m.at(i, j) - q * m.at(i, r) < 0) q -= 1;
            col_axpy(m, j, r, q);
        }
        ++r;
    }
    IMat out(m.rows(), r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m.rows(); ++i) out.at(i, j) = m.at(i, j);
    return out;
}

/// Repeated exact solves against a fixed matrix.
class IntSolver {
public:
    explicit IntSolver(const IMat& a) : sd_(smith(a)) {}
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
        return solve_integer(sd_, b);
    }
    const SmithDecomposition& decomposition() const { return sd_; }

private:
    SmithDecomposition sd_;
};

} // namespace coho
