#pragma once

#include "coho/gmodule.hpp"

namespace coho {

/// |G|^n with overflow protection.
inline i64 tuple_count(i64 gorder, int n) {
    Int p = 1;
    for (int i = 0; i < n; ++i) p *= gorder;
    return to_i64(p);
}

/// Mixed-radix index of an n-tuple of group elements, first entry most
/// significant.
inline i64 tuple_index(i64 gorder, const std::vector<int>& t) {
    i64 idx = 0;
    for (int s : t) idx = idx * gorder + s;
    return idx;
}

inline std::vector<int> tuple_decode(i64 gorder, int n, i64 idx) {
    std::vector<int> t(n);
    for (int i = n; i-- > 0;) {
        t[i] = static_cast<int>(idx % gorder);
        idx /= gorder;
    }
    return t;
}

/// Bar cochain: a total function from n-tuples of group elements to the
/// carrier. Degree 0 is a single carrier element. The module is referenced,
/// not owned.
struct Cochain {
    int degree = 0;
    const GModule* mod = nullptr;
    std::vector<Elem> values;

    const GModule& module() const { return *mod; }

    const Elem& at(i64 tuple_idx) const { return values[tuple_idx]; }
    Elem& at(i64 tuple_idx) { return values[tuple_idx]; }

    const Elem& operator()(const std::vector<int>& tuple) const {
        return values[tuple_index(mod->group().order(), tuple)];
    }

    bool is_zero() const {
        for (const Elem& v : values)
            if (!mod->carrier.is_zero(v)) return false;
        return true;
    }

    std::vector<i64> flatten() const {
        std::vector<i64> out;
        out.reserve(values.size() * mod->carrier.rank());
        for (const Elem& v : values) out.insert(out.end(), v.begin(), v.end());
        return out;
    }

    bool operator==(const Cochain& o) const {
        return degree == o.degree && values == o.values;
    }
};

inline Cochain zero_cochain(const GModule& m, int degree) {
    Cochain c;
    c.degree = degree;
    c.mod = &m;
    c.values.assign(tuple_count(m.group().order(), degree), m.carrier.zero());
    return c;
}

inline Cochain cochain_from_flat(const GModule& m, int degree, const std::vector<i64>& flat) {
    Cochain c = zero_cochain(m, degree);
    const int k = m.carrier.rank();
    for (size_t t = 0; t < c.values.size(); ++t)
        for (int j = 0; j < k; ++j)
            c.values[t][j] = mod_reduce(flat[t * k + j], m.carrier.moduli[j]);
    return c;
}

/// The bar coboundary
///   (d f)(s_1,...,s_{n+1}) = s_1 . f(s_2,...,s_{n+1})
///     + sum_{i=1..n} (-1)^i f(s_1,...,s_i s_{i+1},...,s_{n+1})
///     + (-1)^{n+1} f(s_1,...,s_n).
inline Cochain coboundary(const Cochain& f) {
    const GModule& m = f.module();
    const FiniteGroup& g = m.group();
    const i64 go = g.order();
    const int n = f.degree;
    Cochain out = zero_cochain(m, n + 1);

    std::vector<int> s(n + 1), t(n > 0 ? n : 0);
    const i64 total = tuple_count(go, n + 1);
    for (i64 idx = 0; idx < total; ++idx) {
        s = tuple_decode(go, n + 1, idx);
        // s_1 . f(s_2,...,s_{n+1})
        i64 head = 0;
        for (int i = 1; i <= n; ++i) head = head * go + s[i];
        Elem acc = m.act_on(s[0], f.values[head]);
        // middle alternating terms
        for (int i = 1; i <= n; ++i) {
            for (int j = 0, p = 0; j <= n; ++j) {
                if (j == i) continue;
                t[p++] = (j == i - 1) ? g.mul(s[i - 1], s[i]) : s[j];
            }
            const Elem& v = f.values[tuple_index(go, t)];
            acc = (i % 2) ? m.carrier.sub(acc, v) : m.carrier.add(acc, v);
        }
        // (-1)^{n+1} f(s_1,...,s_n)
        i64 tail = 0;
        for (int i = 0; i < n; ++i) tail = tail * go + s[i];
        const Elem& v = f.values[tail];
        acc = ((n + 1) % 2) ? m.carrier.sub(acc, v) : m.carrier.add(acc, v);
        out.values[idx] = std::move(acc);
    }
    return out;
}

/// Pointwise sum/scalar combination helpers.
inline Cochain cochain_add(const Cochain& a, const Cochain& b) {
    Cochain out = a;
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a.mod->carrier.add(a.values[i], b.values[i]);
    return out;
}

inline Cochain cochain_sub(const Cochain& a, const Cochain& b) {
    Cochain out = a;
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a.mod->carrier.sub(a.values[i], b.values[i]);
    return out;
}

inline Cochain cochain_smul(i64 k, const Cochain& a) {
    Cochain out = a;
    for (auto& v : out.values) v = a.mod->carrier.smul(k, v);
    return out;
}

} // namespace coho
