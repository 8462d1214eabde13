#pragma once

#include "coho/snf.hpp"

#include <string>
#include <vector>

namespace coho {

/// Element of a presented finite abelian group: one residue per coordinate.
using Elem = std::vector<i64>;

/// Finite abelian group presented as Z^k / (m_0 Z x ... x m_{k-1} Z).
/// Every modulus is >= 1; modulus-1 coordinates are legal and carry nothing.
struct FiniteAbelianGroup {
    std::vector<i64> moduli;

    int rank() const { return static_cast<int>(moduli.size()); }

    i64 order() const {
        Int p = 1;
        for (i64 m : moduli) p *= m;
        return to_i64(p);
    }

    Elem zero() const { return Elem(moduli.size(), 0); }

    Elem reduce(Elem a) const {
        for (size_t i = 0; i < a.size(); ++i) a[i] = mod_reduce(a[i], moduli[i]);
        return a;
    }

    Elem reduce(const std::vector<Int>& v) const {
        Elem a(moduli.size());
        for (size_t i = 0; i < a.size(); ++i) {
            Int r = v[i] % moduli[i];
            if (r < 0) r += moduli[i];
            a[i] = static_cast<i64>(r);
        }
        return a;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem c(moduli.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(a[i] + b[i], moduli[i]);
        return c;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem c(moduli.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(a[i] - b[i], moduli[i]);
        return c;
    }

    Elem neg(const Elem& a) const { return sub(zero(), a); }

    Elem smul(i64 k, const Elem& a) const {
        Elem c(moduli.size());
        for (size_t i = 0; i < c.size(); ++i) {
            Int v = Int(k) * a[i];
            Int r = v % moduli[i];
            if (r < 0) r += moduli[i];
            c[i] = static_cast<i64>(r);
        }
        return c;
    }

    bool is_zero(const Elem& a) const {
        for (size_t i = 0; i < a.size(); ++i)
            if (mod_reduce(a[i], moduli[i]) != 0) return false;
        return true;
    }

    /// Mixed-radix index with the first coordinate most significant.
    i64 index_of(const Elem& a) const {
        i64 idx = 0;
        for (size_t i = 0; i < a.size(); ++i) idx = idx * moduli[i] + mod_reduce(a[i], moduli[i]);
        return idx;
    }

    Elem element(i64 idx) const {
        Elem a(moduli.size());
        for (size_t i = a.size(); i-- > 0;) {
            a[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        return a;
    }

    /// Additive order of a single element.
    i64 element_order(const Elem& a) const {
        Elem x = reduce(a);
        i64 n = 1;
        while (!is_zero(x)) {
            x = add(x, reduce(a));
            ++n;
        }
        return n;
    }

    std::string describe() const {
        if (moduli.empty()) return "0";
        std::string s;
        bool all_one = true;
        for (i64 m : moduli) {
            if (m == 1) continue;
            all_one = false;
            if (!s.empty()) s += " x ";
            s += "Z/" + std::to_string(m);
        }
        return all_one ? "0" : s;
    }

    bool operator==(const FiniteAbelianGroup&) const = default;
};

inline FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    FiniteAbelianGroup s = a;
    s.moduli.insert(s.moduli.end(), b.moduli.begin(), b.moduli.end());
    return s;
}

inline FiniteAbelianGroup direct_power(const FiniteAbelianGroup& a, int n) {
    FiniteAbelianGroup s;
    for (int i = 0; i < n; ++i) s = direct_sum(s, a);
    return s;
}

/// Homomorphism of presented abelian groups, stored as a coefficient matrix
/// with entries reduced modulo the target moduli.
struct LinMap {
    FiniteAbelianGroup src, dst;
    std::vector<std::vector<i64>> m; // dst.rank() rows, src.rank() cols

    static LinMap zero(const FiniteAbelianGroup& s, const FiniteAbelianGroup& d) {
        return {s, d, std::vector<std::vector<i64>>(d.rank(), std::vector<i64>(s.rank(), 0))};
    }

    static LinMap identity(const FiniteAbelianGroup& a) {
        LinMap t = zero(a, a);
        for (int i = 0; i < a.rank(); ++i) t.m[i][i] = mod_reduce(1, a.moduli[i]);
        return t;
    }

    Elem apply(const Elem& x) const {
        Elem out(dst.rank());
        for (int r = 0; r < dst.rank(); ++r) {
            Int acc = 0;
            for (int c = 0; c < src.rank(); ++c)
                if (m[r][c] != 0 && x[c] != 0) acc += Int(m[r][c]) * x[c];
            Int v = acc % dst.moduli[r];
            if (v < 0) v += dst.moduli[r];
            out[r] = static_cast<i64>(v);
        }
        return out;
    }

    /// this after inner.
    LinMap compose(const LinMap& inner) const {
        LinMap t = zero(inner.src, dst);
        for (int r = 0; r < dst.rank(); ++r)
            for (int c = 0; c < inner.src.rank(); ++c) {
                Int acc = 0;
                for (int k = 0; k < src.rank(); ++k) acc += Int(m[r][k]) * inner.m[k][c];
                Int v = acc % dst.moduli[r];
                if (v < 0) v += dst.moduli[r];
                t.m[r][c] = static_cast<i64>(v);
            }
        return t;
    }

    /// A coefficient matrix descends to the quotients exactly when each
    /// source relation maps into the target relations.
    bool well_defined() const {
        for (int c = 0; c < src.rank(); ++c)
            for (int r = 0; r < dst.rank(); ++r)
                if ((Int(src.moduli[c]) * m[r][c]) % dst.moduli[r] != 0) return false;
        return true;
    }

    IMat matrix() const {
        IMat out(dst.rank(), src.rank());
        for (int r = 0; r < dst.rank(); ++r)
            for (int c = 0; c < src.rank(); ++c) out.at(r, c) = m[r][c];
        return out;
    }

    static LinMap from_matrix(const FiniteAbelianGroup& s, const FiniteAbelianGroup& d,
                              const IMat& mm) {
        LinMap t = zero(s, d);
        for (int r = 0; r < d.rank(); ++r)
            for (int c = 0; c < s.rank(); ++c) {
                Int v = mm.at(r, c) % d.moduli[r];
                if (v < 0) v += d.moduli[r];
                t.m[r][c] = static_cast<i64>(v);
            }
        return t;
    }

    bool operator==(const LinMap&) const = default;
};

/// Generators (as integer columns, relations included) of {x : t(x) = 0},
/// viewed as a sublattice of Z^src.rank containing the source relations.
inline IMat kernel_lattice(const LinMap& t) {
    IMat m = t.matrix();
    IMat k = kernel_basis(m.hcat(IMat::diagonal(t.dst.moduli)));
    IMat top(t.src.rank(), k.cols());
    for (int i = 0; i < top.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j) top.at(i, j) = k.at(i, j);
    return hermite_basis(top.hcat(IMat::diagonal(t.src.moduli)));
}

/// Sublattice of Z^dst.rank spanned by the image of t, relations included.
inline IMat image_lattice(const LinMap& t) {
    return hermite_basis(t.matrix().hcat(IMat::diagonal(t.dst.moduli)));
}

/// Subgroup of an ambient presented group, itself in invariant-factor form.
struct Subgroup {
    FiniteAbelianGroup group; // moduli all >= 2 (empty when trivial)
    LinMap embed;             // group -> ambient
    IMat lattice;             // hermite basis of the defining sublattice of Z^k

    bool contains(const Elem& x) const {
        std::vector<Int> b(x.begin(), x.end());
        return solve_integer(lattice, b).has_value();
    }
};

/// Subgroup presented by a sublattice of Z^k (relations of the ambient group
/// are appended automatically, so plain generator columns are accepted).
inline Subgroup subgroup_from_lattice(const FiniteAbelianGroup& a, const IMat& gens) {
    const int k = a.rank();
    IMat basis = hermite_basis(gens.hcat(IMat::diagonal(a.moduli)));
    // basis is k x k and full rank because the relations already are.
    IntSolver bs(basis);
    IMat rel(k, k);
    for (int j = 0; j < k; ++j) {
        std::vector<Int> col(k);
        col[j] = a.moduli[j];
        auto c = bs.solve(col);
        if (!c) throw Error("internal", "ambient relation escaped its enclosing lattice");
        for (int i = 0; i < k; ++i) rel.at(i, j) = (*c)[i];
    }
    SmithDecomposition s = smith(rel);

    Subgroup out;
    IMat gen_cols = basis * s.ui;
    for (int i = 0; i < k; ++i) {
        Int d = s.diag(i);
        if (d <= 1) continue;
        out.group.moduli.push_back(to_i64(d));
    }
    out.embed = LinMap::zero(out.group, a);
    int col = 0;
    for (int i = 0; i < k; ++i) {
        if (s.diag(i) <= 1) continue;
        Elem g = a.reduce(gen_cols.column_vec(i));
        for (int r = 0; r < k; ++r) out.embed.m[r][col] = g[r];
        ++col;
    }
    out.lattice = basis;
    return out;
}

/// Quotient of an ambient presented group by a sublattice, with the natural
/// projection and a set-theoretic section (a right inverse of the projection,
/// not a homomorphism in general).
struct Quotient {
    FiniteAbelianGroup group;
    LinMap proj;                            // ambient -> group
    std::vector<std::vector<i64>> section_cols; // one ambient column per group coordinate

    Elem lift(const Elem& w) const {
        Elem out(proj.src.rank(), 0);
        for (size_t j = 0; j < section_cols.size(); ++j)
            for (int i = 0; i < proj.src.rank(); ++i) {
                Int v = Int(out[i]) + Int(w[j]) * section_cols[j][i];
                Int r = v % proj.src.moduli[i];
                if (r < 0) r += proj.src.moduli[i];
                out[i] = static_cast<i64>(r);
            }
        return out;
    }
};

inline Quotient quotient_by_lattice(const FiniteAbelianGroup& a, const IMat& gens) {
    const int k = a.rank();
    IMat basis = hermite_basis(gens.hcat(IMat::diagonal(a.moduli)));
    SmithDecomposition s = smith(basis);

    Quotient q;
    std::vector<int> kept;
    for (int i = 0; i < k; ++i)
        if (s.diag(i) > 1) {
            q.group.moduli.push_back(to_i64(s.diag(i)));
            kept.push_back(i);
        }
    q.proj = LinMap::zero(a, q.group);
    for (size_t r = 0; r < kept.size(); ++r)
        for (int c = 0; c < k; ++c) {
            Int v = s.u.at(kept[r], c) % q.group.moduli[r];
            if (v < 0) v += q.group.moduli[r];
            q.proj.m[r][c] = static_cast<i64>(v);
        }
    for (int i : kept) q.section_cols.push_back(a.reduce(s.ui.column_vec(i)));
    return q;
}

} // namespace coho
