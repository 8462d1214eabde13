#pragma once

// Brute-force oracles used only by tests: cohomology by exhaustive function
// enumeration, independent of the linear-algebra path in the library.

#include "coho/gmodule.hpp"

#include <set>

namespace oracle {

using coho::Elem;
using coho::GModule;
using coho::i64;

// A cochain table maps tuple indices to carrier-element indices.
using Table = std::vector<i64>;

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline std::vector<int> decode_tuple(i64 go, int n, i64 idx) {
    std::vector<int> t(n);
    for (int i = n; i-- > 0; idx /= go) t[i] = static_cast<int>(idx % go);
    return t;
}

// Coboundary of a table, evaluated straight from the alternating-sum
// definition (no shared code with the library's matrix machinery).
inline Table coboundary_table(const GModule& m, int n, const Table& f) {
    const coho::FiniteGroup& g = m.group();
    const i64 go = g.order();
    Table out(ipow(go, n + 1));
    for (i64 idx = 0; idx < static_cast<i64>(out.size()); ++idx) {
        std::vector<int> s = decode_tuple(go, n + 1, idx);
        i64 head = 0;
        for (int i = 1; i <= n; ++i) head = head * go + s[i];
        Elem acc = m.act_on(s[0], m.carrier.element(f[head]));
        for (int i = 1; i <= n; ++i) {
            i64 merged = 0;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                merged = merged * go + ((j == i - 1) ? g.mul(s[i - 1], s[i]) : s[j]);
            }
            Elem v = m.carrier.element(f[merged]);
            acc = (i % 2) ? m.carrier.sub(acc, v) : m.carrier.add(acc, v);
        }
        i64 tail = 0;
        for (int i = 0; i < n; ++i) tail = tail * go + s[i];
        Elem v = m.carrier.element(f[tail]);
        acc = ((n + 1) % 2) ? m.carrier.sub(acc, v) : m.carrier.add(acc, v);
        out[idx] = m.carrier.index_of(acc);
    }
    return out;
}

inline bool is_zero_table(const Table& t) {
    for (i64 v : t)
        if (v != 0) return false;
    return true;
}

inline Table add_tables(const GModule& m, const Table& a, const Table& b) {
    Table out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        out[i] = m.carrier.index_of(
            m.carrier.add(m.carrier.element(a[i]), m.carrier.element(b[i])));
    return out;
}

// All |A|^domain tables; the caller keeps sizes sane.
inline std::vector<Table> all_tables(i64 domain, i64 aorder) {
    std::vector<Table> out;
    Table cur(domain, 0);
    while (true) {
        out.push_back(cur);
        int i = static_cast<int>(domain) - 1;
        while (i >= 0 && ++cur[i] == aorder) cur[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

inline std::vector<Table> all_cocycle_tables(const GModule& m, int n) {
    std::vector<Table> out;
    for (const Table& f : all_tables(ipow(m.group().order(), n), m.carrier.order()))
        if (is_zero_table(coboundary_table(m, n, f))) out.push_back(f);
    return out;
}

inline std::vector<Table> all_coboundary_tables(const GModule& m, int n) {
    std::set<Table> seen;
    if (n == 0) {
        seen.insert(Table(1, 0));
    } else {
        for (const Table& g : all_tables(ipow(m.group().order(), n - 1), m.carrier.order()))
            seen.insert(coboundary_table(m, n - 1, g));
    }
    return {seen.begin(), seen.end()};
}

// Invariant factors of H^n by exhaustive enumeration: quotient the cocycle
// set by the coboundary subgroup, then peel off maximal-order elements.
inline std::vector<i64> invariant_factors(const GModule& m, int n) {
    std::vector<Table> z = all_cocycle_tables(m, n);
    std::vector<Table> b0 = all_coboundary_tables(m, n);

    // killed: the subgroup we are quotienting by, grown as factors are peeled.
    std::set<Table> killed(b0.begin(), b0.end());
    auto canonical = [&](const Table& t) {
        Table best = add_tables(m, t, *killed.begin());
        for (const Table& d : killed) best = std::min(best, add_tables(m, t, d));
        return best;
    };
    auto grow_killed = [&](const Table& h) {
        std::vector<Table> frontier{h};
        while (!frontier.empty()) {
            std::vector<Table> next;
            for (const Table& x : frontier)
                for (const Table& y : std::vector<Table>(killed.begin(), killed.end())) {
                    Table s = add_tables(m, x, y);
                    if (killed.insert(s).second) next.push_back(s);
                }
            frontier = std::move(next);
        }
    };

    std::vector<i64> factors;
    while (true) {
        std::set<Table> quotient;
        for (const Table& t : z) quotient.insert(canonical(t));
        if (quotient.size() <= 1) break;
        i64 best_order = 0;
        Table best;
        for (const Table& t : quotient) {
            i64 o = 1;
            Table x = t;
            while (!killed.count(x)) {
                x = add_tables(m, x, t);
                ++o;
            }
            if (o > best_order) {
                best_order = o;
                best = t;
            }
        }
        factors.push_back(best_order);
        grow_killed(best);
    }
    std::reverse(factors.begin(), factors.end()); // ascending divisibility
    return factors;
}

} // namespace oracle
