#pragma once

#include "coho/numeric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace coho {

inline constexpr int kDefaultGroupCap = 128;

/// Finite group as a labelled multiplication table. Element i is
/// elements[i]; table[s][t] is the index of s*t.
struct FiniteGroup {
    std::vector<std::string> elements;
    std::vector<std::vector<int>> table;
    int identity = 0;
    std::vector<int> inverse;

    int order() const { return static_cast<int>(elements.size()); }
    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const { return inverse[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

    int pow(int a, i64 k) const {
        int r = identity;
        if (k < 0) { a = inv(a); k = -k; }
        for (; k > 0; --k) r = mul(r, a);
        return r;
    }

    i64 element_order(int a) const {
        i64 n = 1;
        for (int x = a; x != identity; x = mul(x, a)) ++n;
        return n;
    }

    bool is_abelian() const {
        for (int a = 0; a < order(); ++a)
            for (int b = a + 1; b < order(); ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    bool operator==(const FiniteGroup&) const = default;
};

/// One violated group axiom with a concrete witness (element indices).
struct GroupDefect {
    std::string axiom;
    std::string detail;
    std::vector<int> witness;
};

/// Checks every group axiom against the raw table and reports each violated
/// axiom with a witness. An empty report means the table is a group.
inline std::vector<GroupDefect> validate_group_table(const std::vector<std::string>& elements,
                                                     const std::vector<std::vector<int>>& table) {
    std::vector<GroupDefect> out;
    const int n = static_cast<int>(elements.size());

    if (static_cast<int>(table.size()) != n) {
        out.push_back({"shape",
                       "table has " + std::to_string(table.size()) + " rows for " +
                           std::to_string(n) + " elements",
                       {}});
        return out;
    }
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(table[i].size()) != n) {
            out.push_back({"shape", "row " + std::to_string(i) + " has " +
                                        std::to_string(table[i].size()) + " entries",
                           {i}});
            return out;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n) {
                out.push_back({"closure", "table entry at (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ") is out of range",
                               {i, j}});
                return out;
            }

    {
        std::map<std::string, int> seen;
        for (int i = 0; i < n; ++i) {
            auto [it, fresh] = seen.emplace(elements[i], i);
            if (!fresh) {
                out.push_back({"labels", "elements " + std::to_string(it->second) + " and " +
                                             std::to_string(i) + " share the label '" +
                                             elements[i] + "'",
                               {it->second, i}});
            }
        }
    }

    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
        if (ok) e = c;
    }
    if (e < 0 && n > 0) out.push_back({"identity", "no two-sided identity element", {}});

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    out.push_back({"associativity",
                                   "(" + elements[a] + " " + elements[b] + ") " + elements[c] +
                                       " differs from " + elements[a] + " (" + elements[b] + " " +
                                       elements[c] + ")",
                                   {a, b, c}});
                    goto assoc_done;
                }
assoc_done:

    if (e >= 0)
        for (int a = 0; a < n; ++a) {
            bool has = false;
            for (int b = 0; b < n && !has; ++b) has = table[a][b] == e && table[b][a] == e;
            if (!has) {
                out.push_back({"inverses", "element " + elements[a] + " has no two-sided inverse",
                               {a}});
                break;
            }
        }
    return out;
}

inline FiniteGroup group_from_table(std::vector<std::string> elements,
                                    std::vector<std::vector<int>> table,
                                    int cap = kDefaultGroupCap) {
    if (static_cast<int>(elements.size()) > cap)
        throw SizeError("group order " + std::to_string(elements.size()) +
                        " exceeds the cap of " + std::to_string(cap));
    if (elements.empty()) throw ValidationError("invalid-group", "a group needs an element");
    auto defects = validate_group_table(elements, table);
    if (!defects.empty()) {
        std::string msg = "not a group:";
        for (const auto& d : defects) msg += " [" + d.axiom + "] " + d.detail + ";";
        throw ValidationError("invalid-group", msg);
    }
    FiniteGroup g;
    g.elements = std::move(elements);
    g.table = std::move(table);
    const int n = g.order();
    for (int c = 0; c < n; ++c) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = g.table[c][x] == x && g.table[x][c] == x;
        if (ok) { g.identity = c; break; }
    }
    g.inverse.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.table[a][b] == g.identity) { g.inverse[a] = b; break; }
    return g;
}

/// Builds a group from abstract elements and a multiplication rule; the
/// resulting table is validated like any other.
template <class T, class MulFn, class LabelFn>
FiniteGroup group_from_elements(const std::vector<T>& elems, MulFn&& mul, LabelFn&& label,
                                int cap = kDefaultGroupCap) {
    std::map<T, int> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int>(i));
    if (index.size() != elems.size())
        throw ValidationError("invalid-group", "duplicate elements in group description");
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = label(elems[i]);
        for (int j = 0; j < n; ++j) {
            auto it = index.find(mul(elems[i], elems[j]));
            if (it == index.end())
                throw ValidationError("invalid-group", "product escapes the element list");
            table[i][j] = it->second;
        }
    }
    return group_from_table(std::move(labels), std::move(table), cap);
}

inline FiniteGroup cyclic_group(i64 n, int cap = kDefaultGroupCap) {
    if (n < 1) throw ValidationError("invalid-group", "cyclic group order must be positive");
    if (n > cap)
        throw SizeError("group order " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(cap));
    FiniteGroup g;
    for (i64 i = 0; i < n; ++i) g.elements.push_back(std::to_string(i));
    g.table.assign(n, std::vector<int>(n));
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) g.table[i][j] = static_cast<int>((i + j) % n);
    g.identity = 0;
    for (i64 i = 0; i < n; ++i) g.inverse.push_back(static_cast<int>((n - i) % n));
    return g;
}

/// Direct product of cyclic groups; elements ordered with the first factor
/// most significant, labelled as coordinate tuples.
inline FiniteGroup product_group(const std::vector<i64>& moduli, int cap = kDefaultGroupCap) {
    if (moduli.empty())
        throw ValidationError("invalid-group", "product group needs at least one factor");
    Int ord = 1;
    for (i64 m : moduli) {
        if (m < 1) throw ValidationError("invalid-group", "factors must be positive");
        ord *= m;
    }
    if (ord > cap)
        throw SizeError("group order " + ord.str() + " exceeds the cap of " + std::to_string(cap));
    if (moduli.size() == 1) return cyclic_group(moduli[0], cap);

    const int n = to_i64(ord);
    auto decode = [&](i64 idx) {
        std::vector<i64> t(moduli.size());
        for (size_t i = moduli.size(); i-- > 0;) {
            t[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        return t;
    };
    auto encode = [&](const std::vector<i64>& t) {
        i64 idx = 0;
        for (size_t i = 0; i < t.size(); ++i) idx = idx * moduli[i] + t[i];
        return idx;
    };
    FiniteGroup g;
    for (int i = 0; i < n; ++i) {
        auto t = decode(i);
        std::string s = "(";
        for (size_t j = 0; j < t.size(); ++j) s += (j ? "," : "") + std::to_string(t[j]);
        g.elements.push_back(s + ")");
    }
    g.table.assign(n, std::vector<int>(n));
    g.inverse.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        auto a = decode(i);
        std::vector<i64> ninv(moduli.size());
        for (size_t k = 0; k < moduli.size(); ++k) ninv[k] = (moduli[k] - a[k]) % moduli[k];
        g.inverse[i] = static_cast<int>(encode(ninv));
        for (int j = 0; j < n; ++j) {
            auto b = decode(j);
            std::vector<i64> c(moduli.size());
            for (size_t k = 0; k < moduli.size(); ++k) c[k] = (a[k] + b[k]) % moduli[k];
            g.table[i][j] = static_cast<int>(encode(c));
        }
    }
    g.identity = 0;
    return g;
}

/// Group homomorphism as an index map; groups are referenced, not owned.
struct GroupHom {
    const FiniteGroup* src = nullptr;
    const FiniteGroup* dst = nullptr;
    std::vector<int> map;

    int apply(int s) const { return map[s]; }

    /// First pair (a, b) with map(a*b) != map(a)*map(b), if any.
    std::optional<std::pair<int, int>> defect() const {
        for (int a = 0; a < src->order(); ++a)
            for (int b = 0; b < src->order(); ++b)
                if (map[src->mul(a, b)] != dst->mul(map[a], map[b])) return std::make_pair(a, b);
        return std::nullopt;
    }

    bool is_valid() const { return !defect().has_value(); }
};

inline std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> gens) {
    std::set<int> seen(gens.begin(), gens.end());
    seen.insert(g.identity);
    std::vector<int> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int y : std::vector<int>(seen.begin(), seen.end())) {
                for (int z : {g.mul(x, y), g.mul(y, x)})
                    if (seen.insert(z).second) next.push_back(z);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// Small generating set found greedily (largest element order first).
inline std::vector<int> small_generating_set(const FiniteGroup& g) {
    std::vector<int> gens;
    std::vector<int> closed = subgroup_closure(g, {});
    while (static_cast<int>(closed.size()) < g.order()) {
        std::set<int> have(closed.begin(), closed.end());
        int best = -1;
        i64 best_ord = 0;
        for (int x = 0; x < g.order(); ++x)
            if (!have.count(x) && g.element_order(x) > best_ord) {
                best = x;
                best_ord = g.element_order(x);
            }
        gens.push_back(best);
        closed = subgroup_closure(g, gens);
    }
    return gens;
}

} // namespace coho
