#pragma once

#include "coho/numeric.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace coho {

using RMat = std::vector<std::vector<Rat>>; // dense, row major

inline constexpr int kLieDimCap = 12;

namespace rational_linalg {

/// Gauss–Jordan elimination; returns the pivot columns of the reduced form.
inline std::vector<int> rref(RMat& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Rat inv = a[r][c];
        for (Rat& v : a[r]) v /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RMat a) { return static_cast<int>(rref(a).size()); }

/// Basis of the right kernel, one vector per non-pivot column.
inline std::vector<std::vector<Rat>> kernel(RMat a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> out;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace rational_linalg

/// Finite-dimensional Lie algebra over the rationals, presented by structure
/// constants [e_i, e_j] = sum_k c_{ij}^k e_k.
struct LieAlgebra {
    int dim = 0;
    std::vector<std::vector<std::vector<Rat>>> c; // c[i][j] is the vector of the bracket

    const std::vector<Rat>& bracket(int i, int j) const { return c[i][j]; }
};

/// Validates antisymmetry and the Jacobi identity, reporting a witness pair
/// or triple on failure.
inline LieAlgebra build_lie_algebra(int dim,
                                    std::vector<std::vector<std::vector<Rat>>> constants) {
    if (dim < 0 || dim > kLieDimCap)
        throw SizeError("Lie algebra dimension " + std::to_string(dim) +
                        " outside the supported range 0.." + std::to_string(kLieDimCap));
    if (static_cast<int>(constants.size()) != dim)
        throw ValidationError("bad-structure", "one row of brackets per basis element required");
    for (const auto& row : constants) {
        if (static_cast<int>(row.size()) != dim)
            throw ValidationError("bad-structure", "bracket table must be square");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != dim)
                throw ValidationError("bad-structure",
                                      "each bracket needs one coefficient per basis element");
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (constants[i][j][k] != -constants[j][i][k])
                    throw ValidationError("not-antisymmetric",
                                          "antisymmetry fails at the pair (" +
                                              std::to_string(i) + ", " + std::to_string(j) +
                                              ")");
    LieAlgebra l{dim, std::move(constants)};
    // Jacobi: [x, [y, z]] + [y, [z, x]] + [z, [x, y]] = 0 on basis triples.
    auto bracket_vec = [&](int x, const std::vector<Rat>& v) {
        std::vector<Rat> out(l.dim, Rat(0));
        for (int j = 0; j < l.dim; ++j) {
            if (v[j] == 0) continue;
            for (int k = 0; k < l.dim; ++k) out[k] += v[j] * l.c[x][j][k];
        }
        return out;
    };
    for (int x = 0; x < dim; ++x)
        for (int y = x + 1; y < dim; ++y)
            for (int z = y + 1; z < dim; ++z) {
                std::vector<Rat> s = bracket_vec(x, l.c[y][z]);
                std::vector<Rat> t = bracket_vec(y, l.c[z][x]);
                std::vector<Rat> u = bracket_vec(z, l.c[x][y]);
                for (int k = 0; k < dim; ++k)
                    if (s[k] + t[k] + u[k] != 0)
                        throw ValidationError("jacobi-failure",
                                              "the Jacobi identity fails at the triple (" +
                                                  std::to_string(x) + ", " + std::to_string(y) +
                                                  ", " + std::to_string(z) + ")");
            }
    return l;
}

/// Convenience builder from the upper triangle: brackets[(i, j)] with i < j;
/// the mirror image is filled in by antisymmetry.
inline LieAlgebra
lie_algebra_from_table(int dim,
                       const std::vector<std::pair<std::pair<int, int>, std::vector<Rat>>>& entries) {
    std::vector constants(dim, std::vector(dim, std::vector<Rat>(dim, Rat(0))));
    for (const auto& [ij, v] : entries) {
        auto [i, j] = ij;
        if (i < 0 || i >= dim || j < 0 || j >= dim || static_cast<int>(v.size()) != dim)
            throw ValidationError("bad-structure", "bracket entry out of range");
        for (int k = 0; k < dim; ++k) {
            constants[i][j][k] = v[k];
            constants[j][i][k] = -v[k];
        }
    }
    return build_lie_algebra(dim, std::move(constants));
}

/// Module over a Lie algebra: one representing matrix per basis element,
/// with rho([x, y]) = rho(x) rho(y) - rho(y) rho(x) validated on basis pairs.
struct LieModule {
    const LieAlgebra* l = nullptr;
    int dim = 0;
    std::vector<RMat> rep;

    const LieAlgebra& algebra() const { return *l; }
};

inline LieModule build_lie_module(const LieAlgebra& l, int dim, std::vector<RMat> rep) {
    if (dim < 0 || dim > kLieDimCap)
        throw SizeError("module dimension outside the supported range");
    if (static_cast<int>(rep.size()) != l.dim)
        throw ValidationError("bad-module", "one matrix per Lie algebra basis element required");
    for (const RMat& m : rep) {
        if (static_cast<int>(m.size()) != dim)
            throw ValidationError("bad-module", "representing matrix of the wrong size");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != dim)
                throw ValidationError("bad-module", "representing matrix of the wrong size");
    }
    auto mul = [dim](const RMat& a, const RMat& b) {
        RMat out(dim, std::vector<Rat>(dim, Rat(0)));
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) {
                if (a[i][k] == 0) continue;
                for (int j = 0; j < dim; ++j) out[i][j] += a[i][k] * b[k][j];
            }
        return out;
    };
    for (int x = 0; x < l.dim; ++x)
        for (int y = 0; y < l.dim; ++y) {
            RMat lhs = mul(rep[x], rep[y]);
            RMat sub = mul(rep[y], rep[x]);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    Rat want = 0;
                    for (int k = 0; k < l.dim; ++k)
                        if (l.c[x][y][k] != 0) want += l.c[x][y][k] * rep[k][i][j];
                    if (lhs[i][j] - sub[i][j] != want)
                        throw ValidationError(
                            "not-a-representation",
                            "the bracket relation fails on the basis pair (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
                }
        }
    return LieModule{&l, dim, std::move(rep)};
}

inline LieModule trivial_lie_module(const LieAlgebra& l, int dim) {
    return build_lie_module(l, dim, std::vector<RMat>(l.dim, RMat(dim, std::vector<Rat>(dim, Rat(0)))));
}

namespace detail {

/// All size-n index combinations of {0..dim-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int dim, int n) {
    std::vector<std::vector<int>> out;
    if (n < 0 || n > dim) return out;
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == dim - n + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

} // namespace detail

/// The alternating-cochain space C^n = Lambda^n L* (x) V with basis indexed
/// by (combination, module coordinate), combinations lexicographic and the
/// module coordinate fastest.
struct CEBasis {
    std::vector<std::vector<int>> combos;
    int module_dim = 0;

    int size() const { return static_cast<int>(combos.size()) * module_dim; }
    int index_of(const std::vector<int>& combo, int a) const {
        auto it = std::lower_bound(combos.begin(), combos.end(), combo);
        if (it == combos.end() || *it != combo)
            throw Error("internal", "unknown basis combination");
        return static_cast<int>(it - combos.begin()) * module_dim + a;
    }
};

inline CEBasis ce_basis(const LieAlgebra& l, const LieModule& v, int n) {
    return CEBasis{detail::combinations(l.dim, n), v.dim};
}

/// Matrix of the Chevalley–Eilenberg differential d^n : C^n -> C^{n+1}.
/// Convention (the single sign-fixing point of this header):
///   (d w)(x_0, ..., x_n) = sum_i (-1)^i rho(x_i) w(..., x_i omitted, ...)
///     + sum_{i<j} (-1)^{i+j} w([x_i, x_j], ..., x_i and x_j omitted, ...),
/// evaluated on ascending basis tuples; reordering [x_i, x_j] into an
/// ascending tuple contributes the sign of the needed transposition count.
inline RMat ce_differential(const LieAlgebra& l, const LieModule& v, int n) {
    if (v.l != &l)
        throw ValidationError("mismatched-algebra", "module was built over a different algebra");
    if (n < 0 || n > l.dim)
        throw ValidationError("bad-degree",
                              "degree must lie between 0 and the algebra dimension");
    CEBasis src = ce_basis(l, v, n);
    CEBasis dst = ce_basis(l, v, n + 1);
    RMat d(dst.size(), std::vector<Rat>(src.size(), Rat(0)));
    if (n == l.dim) return d; // C^{n+1} = 0

    const int m = v.dim;
    for (size_t ti = 0; ti < dst.combos.size(); ++ti) {
        const std::vector<int>& t = dst.combos[ti];
        // Action terms: drop x_i, apply rho(x_i).
        for (int i = 0; i <= n; ++i) {
            std::vector<int> rest;
            for (int j = 0; j <= n; ++j)
                if (j != i) rest.push_back(t[j]);
            int sign = (i % 2) ? -1 : 1;
            const RMat& rho = v.rep[t[i]];
            for (int b = 0; b < m; ++b)
                for (int a = 0; a < m; ++a)
                    if (rho[b][a] != 0)
                        d[ti * m + b][src.index_of(rest, a)] += sign * rho[b][a];
        }
        // Bracket terms: replace the pair (x_i, x_j) by [x_i, x_j].
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                std::vector<int> rest;
                for (int p = 0; p <= n; ++p)
                    if (p != i && p != j) rest.push_back(t[p]);
                const std::vector<Rat>& br = l.bracket(t[i], t[j]);
                int base_sign = ((i + j) % 2) ? -1 : 1;
                for (int k = 0; k < l.dim; ++k) {
                    if (br[k] == 0) continue;
                    if (std::find(rest.begin(), rest.end(), k) != rest.end())
                        continue; // repeated slot kills the term
                    std::vector<int> combo = rest;
                    auto pos = std::lower_bound(combo.begin(), combo.end(), k);
                    int shifts = static_cast<int>(pos - combo.begin());
                    combo.insert(pos, k);
                    Rat coeff = br[k] * base_sign * ((shifts % 2) ? -1 : 1);
                    for (int a = 0; a < m; ++a) d[ti * m + a][src.index_of(combo, a)] += coeff;
                }
            }
    }
    return d;
}

/// H^n(L, V): dimension and representative cocycles (coordinate vectors
/// against the C^n basis), computed by exact rational rank arithmetic.
struct CECohomology {
    int degree = 0;
    int dim = 0;
    CEBasis basis;
    std::vector<std::vector<Rat>> representatives;
};

inline CECohomology ce_cohomology(const LieAlgebra& l, const LieModule& v, int n) {
    if (v.l != &l)
        throw ValidationError("mismatched-algebra", "module was built over a different algebra");
    if (n < 0 || n > l.dim)
        throw ValidationError("bad-degree",
                              "degree must lie between 0 and the algebra dimension");
    CECohomology h;
    h.degree = n;
    h.basis = ce_basis(l, v, n);

    std::vector<std::vector<Rat>> cocycles;
    if (h.basis.size() > 0) {
        RMat dn = ce_differential(l, v, n);
        if (dn.empty()) {
            // C^{n+1} = 0: everything is a cocycle.
            for (int i = 0; i < h.basis.size(); ++i) {
                std::vector<Rat> e(h.basis.size(), Rat(0));
                e[i] = 1;
                cocycles.push_back(std::move(e));
            }
        } else {
            cocycles = rational_linalg::kernel(dn);
        }
    }

    // Row space of the previous differential's image, built up as we add
    // boundary vectors and then extended by the kernel vectors that remain
    // independent: those are the representatives.
    RMat span;
    auto reduce_against = [&](std::vector<Rat> vec) {
        for (const auto& row : span) {
            int lead = -1;
            for (size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) {
                    lead = static_cast<int>(j);
                    break;
                }
            if (lead >= 0 && vec[lead] != 0) {
                Rat f = vec[lead] / row[lead];
                for (size_t j = 0; j < row.size(); ++j) vec[j] -= f * row[j];
            }
        }
        return vec;
    };
    auto insert_row = [&](std::vector<Rat> vec) {
        // Keep rows in echelon shape: eliminate, then place by leading index.
        vec = reduce_against(vec);
        int lead = -1;
        for (size_t j = 0; j < vec.size(); ++j)
            if (vec[j] != 0) {
                lead = static_cast<int>(j);
                break;
            }
        if (lead < 0) return false;
        span.push_back(std::move(vec));
        std::sort(span.begin(), span.end(), [](const auto& x, const auto& y) {
            auto leading = [](const std::vector<Rat>& r) {
                for (size_t j = 0; j < r.size(); ++j)
                    if (r[j] != 0) return j;
                return r.size();
            };
            return leading(x) < leading(y);
        });
        return true;
    };

    if (n > 0 && h.basis.size() > 0) {
        RMat prev = ce_differential(l, v, n - 1);
        const int pcols = prev.empty() ? 0 : static_cast<int>(prev[0].size());
        for (int j = 0; j < pcols; ++j) {
            std::vector<Rat> col(h.basis.size());
            for (int i = 0; i < h.basis.size(); ++i) col[i] = prev[i][j];
            insert_row(std::move(col));
        }
    }
    for (const auto& z : cocycles)
        if (insert_row(z)) h.representatives.push_back(z);
    h.dim = static_cast<int>(h.representatives.size());
    return h;
}

} // namespace coho
