#pragma once

#include "coho/numeric.hpp"

#include <vector>

namespace coho {

/// Result of max c^T x subject to A x <= b, x >= 0 over exact rationals.
struct SimplexResult {
    Rat objective;
    std::vector<Rat> solution; // one per variable
    std::vector<Rat> duals;    // one per constraint (shadow prices, >= 0)
};

/// Dense-tableau primal simplex with Bland's rule (smallest index enters;
/// ties in the ratio test break toward the smallest basic variable), exact
/// rational arithmetic throughout. Requires b >= 0 so the slack basis is
/// feasible. Problem sizes here are tiny, so no effort is spent on sparsity.
inline SimplexResult simplex_max(const std::vector<std::vector<Rat>>& a,
                                 const std::vector<Rat>& b, const std::vector<Rat>& c) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw Error("internal", "simplex constraint row of the wrong width");
    if (static_cast<int>(b.size()) != m)
        throw Error("internal", "simplex right-hand side of the wrong height");
    for (const Rat& v : b)
        if (v < 0) throw Error("internal", "simplex requires a nonnegative right-hand side");

    // Columns: n structural variables, m slacks, then the right-hand side.
    const int rhs = n + m;
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n + m + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][rhs] = b[i];
    }
    // Objective row holds z_j - c_j; its RHS cell is the current objective.
    std::vector<Rat> obj(n + m + 1, Rat(0));
    for (int j = 0; j < n; ++j) obj[j] = -c[j];
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    while (true) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;

        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][rhs] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw Error("internal", "simplex objective is unbounded");

        Rat pivot = t[leave][enter];
        for (Rat& v : t[leave]) v /= pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat factor = t[i][enter];
            for (int j = 0; j <= rhs; ++j)
                if (t[leave][j] != 0) t[i][j] -= factor * t[leave][j];
        }
        if (obj[enter] != 0) {
            Rat factor = obj[enter];
            for (int j = 0; j <= rhs; ++j)
                if (t[leave][j] != 0) obj[j] -= factor * t[leave][j];
        }
        basis[leave] = enter;
    }

    SimplexResult out;
    out.objective = obj[rhs];
    out.solution.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) out.solution[basis[i]] = t[i][rhs];
    out.duals.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) out.duals[i] = obj[n + i];
    return out;
}

} // namespace coho
