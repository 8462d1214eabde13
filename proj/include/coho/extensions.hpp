#pragma once

#include "coho/cohomology.hpp"

#include <numeric>

namespace coho {

inline constexpr int kExtensionCap = 64; // |E| bound for exhaustive searches
inline constexpr int kLabelCap = 32;     // |E| bound for abstract labelling

inline std::string elem_label(const FiniteAbelianGroup& a, const Elem& x) {
    if (a.rank() == 1) return std::to_string(x[0]);
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

/// Extension 1 -> A -> E -> G -> 1 realized on the set A x G. The module is
/// referenced, not owned; incl/proj/section are index maps.
struct Extension {
    FiniteGroup e;
    const GModule* mod = nullptr;
    std::vector<int> incl;    // A element index -> E index
    std::vector<int> proj;    // E index -> G index
    std::vector<int> section; // G index -> E index
};

/// First defect of the extension data, if any: incl/proj must be
/// homomorphisms, incl injective with image = ker proj, proj surjective,
/// the section a right inverse of proj, and conjugation through incl must
/// realize the module action.
inline std::optional<std::string> extension_defect(const Extension& x) {
    const GModule& m = *x.mod;
    const FiniteGroup& g = m.group();
    const FiniteAbelianGroup& a = m.carrier;
    const i64 ao = a.order();

    if (x.e.order() != ao * g.order()) return "order of E differs from |A||G|";
    if (static_cast<i64>(x.incl.size()) != ao || x.proj.size() != x.e.elements.size() ||
        static_cast<int>(x.section.size()) != g.order())
        return "index maps have the wrong sizes";

    for (i64 i = 0; i < ao; ++i)
        for (i64 j = 0; j < ao; ++j) {
            int lhs = x.incl[a.index_of(a.add(a.element(i), a.element(j)))];
            if (lhs != x.e.mul(x.incl[i], x.incl[j]))
                return "incl is not a homomorphism at (" + elem_label(a, a.element(i)) + ", " +
                       elem_label(a, a.element(j)) + ")";
        }
    std::set<int> image(x.incl.begin(), x.incl.end());
    if (static_cast<i64>(image.size()) != ao) return "incl is not injective";

    for (int p = 0; p < x.e.order(); ++p)
        for (int q = 0; q < x.e.order(); ++q)
            if (x.proj[x.e.mul(p, q)] != g.mul(x.proj[p], x.proj[q]))
                return "proj is not a homomorphism at (" + x.e.elements[p] + ", " +
                       x.e.elements[q] + ")";
    std::set<int> hit(x.proj.begin(), x.proj.end());
    if (static_cast<int>(hit.size()) != g.order()) return "proj is not surjective";

    for (int p = 0; p < x.e.order(); ++p) {
        bool in_kernel = x.proj[p] == g.identity;
        if (in_kernel != (image.count(p) > 0)) return "image of incl differs from ker proj";
    }
    for (int s = 0; s < g.order(); ++s)
        if (x.proj[x.section[s]] != s) return "section is not a right inverse of proj";

    for (int s = 0; s < g.order(); ++s)
        for (i64 i = 0; i < ao; ++i) {
            int conj = x.e.conj(x.section[s], x.incl[i]);
            if (conj != x.incl[a.index_of(m.act_on(s, a.element(i)))])
                return "conjugation by the section of " + g.elements[s] +
                       " does not realize the module action at " +
                       elem_label(a, a.element(i));
        }
    return std::nullopt;
}

/// The twisted product E = A x_F G with multiplication
///   (a1, s1)(a2, s2) = (a1 + s1.a2 + F(s1, s2), s1 s2).
/// Rejects tables that are not 2-cocycles, with a witness triple.
inline Extension build_extension(const Cochain& f) {
    const GModule& m = f.module();
    const FiniteGroup& g = m.group();
    const FiniteAbelianGroup& a = m.carrier;
    if (f.degree != 2) throw ValidationError("bad-degree", "an extension needs a 2-cochain");

    Cochain df = coboundary(f);
    if (!df.is_zero()) {
        for (size_t t = 0; t < df.values.size(); ++t)
            if (!a.is_zero(df.values[t])) {
                std::vector<int> tup = tuple_decode(g.order(), 3, static_cast<i64>(t));
                throw ValidationError(
                    "not-a-cocycle", "the cocycle identity fails at the triple (" +
                                         g.elements[tup[0]] + ", " + g.elements[tup[1]] + ", " +
                                         g.elements[tup[2]] + ")");
            }
    }

    const i64 ao = a.order();
    const int go = g.order();
    auto enc = [&](i64 ai, int s) { return static_cast<int>(ai) * go + s; };

    std::vector<std::string> labels;
    std::vector<std::vector<int>> table(ao * go, std::vector<int>(ao * go));
    for (i64 ai = 0; ai < ao; ++ai)
        for (int s = 0; s < go; ++s)
            labels.push_back("(" + elem_label(a, a.element(ai)) + "|" + g.elements[s] + ")");
    for (i64 a1 = 0; a1 < ao; ++a1)
        for (int s1 = 0; s1 < go; ++s1)
            for (i64 a2 = 0; a2 < ao; ++a2)
                for (int s2 = 0; s2 < go; ++s2) {
                    Elem sum = a.add(a.add(a.element(a1), m.act_on(s1, a.element(a2))),
                                     f({s1, s2}));
                    table[enc(a1, s1)][enc(a2, s2)] = enc(a.index_of(sum), g.mul(s1, s2));
                }

    Extension x;
    x.e = group_from_table(std::move(labels), std::move(table));
    x.mod = &m;
    const Elem fee = f({g.identity, g.identity});
    for (i64 ai = 0; ai < ao; ++ai)
        x.incl.push_back(enc(a.index_of(a.sub(a.element(ai), fee)), g.identity));
    for (i64 ai = 0; ai < ao; ++ai)
        for (int s = 0; s < go; ++s) x.proj.push_back(s);
    for (int s = 0; s < go; ++s) x.section.push_back(enc(0, s));
    return x;
}

/// Reads a 2-cocycle back off an extension: F(s, t) = incl^{-1}(sec(s) sec(t)
/// sec(st)^{-1}). Any right-inverse section of proj is accepted.
inline Cochain cocycle_from_section(const Extension& x, const std::vector<int>& section) {
    const GModule& m = *x.mod;
    const FiniteGroup& g = m.group();
    if (static_cast<int>(section.size()) != g.order())
        throw ValidationError("bad-section", "one section value per group element required");
    for (int s = 0; s < g.order(); ++s)
        if (x.proj[section[s]] != s)
            throw ValidationError("bad-section", "section is not a right inverse of proj at " +
                                                     g.elements[s]);
    std::vector<i64> incl_inv(x.e.order(), -1);
    for (i64 i = 0; i < static_cast<i64>(x.incl.size()); ++i) incl_inv[x.incl[i]] = i;

    Cochain f = zero_cochain(m, 2);
    for (int s = 0; s < g.order(); ++s)
        for (int t = 0; t < g.order(); ++t) {
            int v = x.e.mul(x.e.mul(section[s], section[t]), x.e.inv(section[g.mul(s, t)]));
            if (incl_inv[v] < 0)
                throw ValidationError("bad-section",
                                      "section defect escapes the embedded subgroup");
            f.values[tuple_index(g.order(), {s, t})] = m.carrier.element(incl_inv[v]);
        }
    return f;
}

inline Cochain cocycle_from_section(const Extension& x) {
    return cocycle_from_section(x, x.section);
}

/// Strict equivalence: an isomorphism E1 -> E2 commuting with both incl and
/// proj. The search is exhaustive over the possible correction maps g: G -> A
/// (free choices only at group generators; every candidate is then verified
/// on all pairs). Returns the witness isomorphism as an index map.
inline std::optional<std::vector<int>> equivalent(const Extension& x1, const Extension& x2) {
    const GModule& m = *x1.mod;
    const FiniteGroup& g = m.group();
    const FiniteAbelianGroup& a = m.carrier;
    if (x2.mod != x1.mod && !(same_group(*x1.mod, *x2.mod) && x1.mod->carrier == x2.mod->carrier &&
                              x1.mod->act == x2.mod->act))
        throw ValidationError("mismatched-extensions",
                              "equivalence needs extensions of the same module");
    if (x1.e.order() > kExtensionCap)
        throw SizeError("extension order " + std::to_string(x1.e.order()) +
                        " exceeds the exhaustive-search cap of " + std::to_string(kExtensionCap));

    Cochain f1 = cocycle_from_section(x1);
    Cochain f2 = cocycle_from_section(x2);
    Cochain delta = cochain_sub(f1, f2);

    // Decompose x in E as incl(a) * sec(s): a = incl^{-1}(x * sec(proj x)^{-1}).
    auto decompose = [&](const Extension& x) {
        std::vector<i64> incl_inv(x.e.order(), -1);
        for (i64 i = 0; i < static_cast<i64>(x.incl.size()); ++i) incl_inv[x.incl[i]] = i;
        std::vector<std::pair<i64, int>> parts(x.e.order());
        for (int p = 0; p < x.e.order(); ++p) {
            int s = x.proj[p];
            i64 ai = incl_inv[x.e.mul(p, x.e.inv(x.section[s]))];
            if (ai < 0) throw Error("internal", "extension decomposition failed");
            parts[p] = {ai, s};
        }
        return parts;
    };
    auto parts1 = decompose(x1);

    std::vector<int> gens = small_generating_set(g);
    const i64 ao = a.order();

    // Assign g on the generators, propagate with
    //   g(s t0) = s.g(t0) + g(s) - delta(s, t0),
    // then verify d g = delta everywhere.
    std::vector<Elem> gv(g.order());
    std::vector<bool> known(g.order(), false);

    std::vector<i64> choice(gens.size(), 0);
    while (true) {
        std::fill(known.begin(), known.end(), false);
        gv[g.identity] = delta({g.identity, g.identity});
        known[g.identity] = true;
        bool consistent = true;
        for (size_t i = 0; i < gens.size() && consistent; ++i) {
            Elem val = a.element(choice[i]);
            if (known[gens[i]])
                consistent = gv[gens[i]] == val;
            else {
                gv[gens[i]] = val;
                known[gens[i]] = true;
            }
            // closure under right multiplication by generators
            bool grew = true;
            while (grew && consistent) {
                grew = false;
                for (int s = 0; s < g.order(); ++s) {
                    if (!known[s]) continue;
                    for (size_t j = 0; j <= i; ++j) {
                        int t0 = gens[j];
                        if (!known[t0]) continue;
                        int st = g.mul(s, t0);
                        Elem val2 = a.sub(a.add(m.act_on(s, gv[t0]), gv[s]), delta({s, t0}));
                        if (!known[st]) {
                            gv[st] = val2;
                            known[st] = true;
                            grew = true;
                        } else if (gv[st] != val2) {
                            consistent = false;
                            break;
                        }
                    }
                    if (!consistent) break;
                }
            }
        }
        if (consistent)
            for (int s = 0; s < g.order() && consistent; ++s) consistent = known[s];
        if (consistent) {
            for (int s = 0; s < g.order() && consistent; ++s)
                for (int t = 0; t < g.order() && consistent; ++t) {
                    Elem dg = a.add(a.sub(m.act_on(s, gv[t]), gv[g.mul(s, t)]), gv[s]);
                    consistent = dg == delta({s, t});
                }
        }
        if (consistent) {
            // phi(incl1(a) sec1(s)) = incl2(a + g(s)) sec2(s)
            std::vector<int> phi(x1.e.order());
            for (int p = 0; p < x1.e.order(); ++p) {
                auto [ai, s] = parts1[p];
                i64 bi = a.index_of(a.add(a.element(ai), gv[s]));
                phi[p] = x2.e.mul(x2.incl[bi], x2.section[s]);
            }
            bool ok = true;
            for (int p = 0; p < x1.e.order() && ok; ++p)
                for (int q = 0; q < x1.e.order() && ok; ++q)
                    ok = phi[x1.e.mul(p, q)] == x2.e.mul(phi[p], phi[q]);
            for (i64 i = 0; i < ao && ok; ++i) ok = phi[x1.incl[i]] == x2.incl[i];
            for (int p = 0; p < x1.e.order() && ok; ++p) ok = x2.proj[phi[p]] == x1.proj[p];
            std::set<int> img(phi.begin(), phi.end());
            ok = ok && static_cast<int>(img.size()) == x1.e.order();
            if (ok) return phi;
        }
        // next assignment
        size_t i = 0;
        while (i < choice.size() && ++choice[i] == ao) choice[i++] = 0;
        if (i == choice.size() && !choice.empty()) break;
        if (choice.empty()) break;
    }
    return std::nullopt;
}

// ---- abstract labels -------------------------------------------------------

inline FiniteGroup dihedral_group(int n) {
    std::vector<std::pair<int, int>> elems;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < n; ++i) elems.push_back({i, j});
    return group_from_elements(
        elems,
        [n](std::pair<int, int> x, std::pair<int, int> y) {
            int i = x.second == 0 ? (x.first + y.first) % n : ((x.first - y.first) % n + n) % n;
            return std::make_pair(i, (x.second + y.second) % 2);
        },
        [](std::pair<int, int> x) {
            return "r" + std::to_string(x.first) + (x.second ? "s" : "");
        });
}

inline FiniteGroup dicyclic_group(int n) {
    std::vector<std::pair<int, int>> elems;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2 * n; ++i) elems.push_back({i, j});
    return group_from_elements(
        elems,
        [n](std::pair<int, int> x, std::pair<int, int> y) {
            int m = 2 * n;
            if (x.second == 0) return std::make_pair((x.first + y.first) % m, y.second);
            int i = ((x.first - y.first) % m + m) % m;
            if (y.second == 1) return std::make_pair((i + n) % m, 0);
            return std::make_pair(i, 1);
        },
        [](std::pair<int, int> x) {
            return "a" + std::to_string(x.first) + (x.second ? "b" : "");
        });
}

inline FiniteGroup semidirect_group(int mm, int nn, int t) {
    std::vector<std::pair<int, int>> elems;
    for (int b = 0; b < nn; ++b)
        for (int a = 0; a < mm; ++a) elems.push_back({a, b});
    auto tpow = [mm, t](int e) {
        i64 r = 1;
        for (int i = 0; i < e; ++i) r = r * t % mm;
        return static_cast<int>(r);
    };
    return group_from_elements(
        elems,
        [mm, nn, tpow](std::pair<int, int> x, std::pair<int, int> y) {
            return std::make_pair(static_cast<int>((x.first + static_cast<i64>(tpow(x.second)) * y.first) % mm),
                                  (x.second + y.second) % nn);
        },
        [](std::pair<int, int> x) {
            return std::to_string(x.first) + ";" + std::to_string(x.second);
        });
}

inline FiniteGroup alternating4_group() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
        if (inv % 2 == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return group_from_elements(
        perms,
        [](const std::vector<int>& x, const std::vector<int>& y) {
            std::vector<int> r(4);
            for (int i = 0; i < 4; ++i) r[i] = x[y[i]];
            return r;
        },
        [](const std::vector<int>& x) {
            std::string s;
            for (int v : x) s += std::to_string(v);
            return s;
        });
}

/// Invariant factors of an abelian group given by its table (peeling
/// maximal-order elements), ascending divisibility.
inline std::vector<i64> abelian_type(const FiniteGroup& g) {
    std::vector<i64> factors;
    std::vector<int> killed_gens;
    std::vector<int> trivial = subgroup_closure(g, {});
    std::set<int> killed(trivial.begin(), trivial.end());
    while (static_cast<int>(killed.size()) < g.order()) {
        int best = -1;
        i64 best_ord = 0;
        for (int x = 0; x < g.order(); ++x) {
            if (killed.count(x)) continue;
            i64 o = 1;
            int p = x;
            while (!killed.count(p)) {
                p = g.mul(p, x);
                ++o;
            }
            if (o > best_ord) {
                best_ord = o;
                best = x;
            }
        }
        factors.push_back(best_ord);
        killed_gens.push_back(best);
        auto c = subgroup_closure(g, killed_gens);
        killed = std::set<int>(c.begin(), c.end());
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

/// Isomorphism search by backtracking over generator images.
inline std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a,
                                                        const FiniteGroup& b) {
    if (a.order() != b.order()) return std::nullopt;
    std::multiset<i64> oa, ob;
    for (int x = 0; x < a.order(); ++x) oa.insert(a.element_order(x));
    for (int x = 0; x < b.order(); ++x) ob.insert(b.element_order(x));
    if (oa != ob) return std::nullopt;

    std::vector<int> gens = small_generating_set(a);
    std::vector<int> images(gens.size(), 0);

    // Extends the partial generator assignment to a full map by closure;
    // returns the full map if it is a bijective homomorphism.
    auto try_images = [&]() -> std::optional<std::vector<int>> {
        std::vector<int> map(a.order(), -1);
        map[a.identity] = b.identity;
        std::vector<int> frontier{a.identity};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int s : frontier)
                for (size_t i = 0; i < gens.size(); ++i) {
                    int t = a.mul(s, gens[i]);
                    int v = b.mul(map[s], images[i]);
                    if (map[t] < 0) {
                        map[t] = v;
                        next.push_back(t);
                    } else if (map[t] != v)
                        return std::nullopt;
                }
            frontier = std::move(next);
        }
        for (int x = 0; x < a.order(); ++x)
            if (map[x] < 0) return std::nullopt;
        for (int x = 0; x < a.order(); ++x)
            for (int y = 0; y < a.order(); ++y)
                if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return std::nullopt;
        std::set<int> img(map.begin(), map.end());
        if (static_cast<int>(img.size()) != a.order()) return std::nullopt;
        return map;
    };

    // Enumerate candidate images (same element order) per generator.
    std::vector<std::vector<int>> candidates(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        i64 o = a.element_order(gens[i]);
        for (int y = 0; y < b.order(); ++y)
            if (b.element_order(y) == o) candidates[i].push_back(y);
    }
    std::vector<size_t> pick(gens.size(), 0);
    while (true) {
        for (size_t i = 0; i < gens.size(); ++i) images[i] = candidates[i][pick[i]];
        if (auto map = try_images()) return map;
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return std::nullopt;
}

/// Best-effort abstract name for a group of order <= 32: complete for
/// abelian groups; nonabelian groups are matched against dihedral, dicyclic,
/// cyclic-by-cyclic semidirect products, and A4.
inline std::string abstract_label(const FiniteGroup& g) {
    const int n = g.order();
    if (n > kLabelCap) return "unidentified (order " + std::to_string(n) + ")";
    if (g.is_abelian()) {
        std::vector<i64> t = abelian_type(g);
        if (t.empty()) return "Z/1";
        std::string s;
        for (size_t i = 0; i < t.size(); ++i)
            s += (i ? " x " : "") + std::string("Z/") + std::to_string(t[i]);
        return s;
    }
    if (n % 2 == 0 && n >= 6 && find_isomorphism(g, dihedral_group(n / 2)))
        return "Dih" + std::to_string(n / 2);
    if (n % 4 == 0 && n >= 8 && find_isomorphism(g, dicyclic_group(n / 4)))
        return n == 8 ? "Q8" : "Dic" + std::to_string(n / 4);
    if (n == 12 && find_isomorphism(g, alternating4_group())) return "A4";
    for (int m = 2; m < n; ++m) {
        if (n % m) continue;
        int q = n / m;
        if (q < 2) continue;
        for (int t = 2; t < m; ++t) {
            if (std::gcd(t, m) != 1) continue;
            i64 tp = 1;
            for (int i = 0; i < q; ++i) tp = tp * t % m;
            if (tp != 1) continue;
            if (find_isomorphism(g, semidirect_group(m, q, t)))
                return "Z/" + std::to_string(m) + " : Z/" + std::to_string(q) +
                       " (t=" + std::to_string(t) + ")";
        }
    }
    return "unidentified (order " + std::to_string(n) + ")";
}

/// One extension per H^2 class, with pairwise inequivalence verified when
/// the order cap allows and abstract labels attached when |E| <= 32.
struct ClassifiedExtension {
    std::vector<i64> coords;
    Cochain cocycle;
    Extension ext;
    std::string label;
};

struct ExtensionCatalog {
    CohomologyGroup h2;
    std::vector<ClassifiedExtension> items;
    bool pairwise_inequivalent = false; // verified only when |E| <= cap
};

inline ExtensionCatalog classify_extensions(const GModule& m,
                                            const CohomologyCaps& caps = CohomologyCaps{}) {
    ExtensionCatalog cat;
    cat.h2 = cohomology(m, 2, caps);
    const i64 count = cat.h2.order();
    if (count > 256)
        throw SizeError("H^2 has " + std::to_string(count) +
                        " classes, beyond the catalogue cap of 256");
    for (i64 i = 0; i < count; ++i) {
        ClassifiedExtension item;
        item.coords = cat.h2.group.element(i);
        item.cocycle = cat.h2.canonical_representative(cat.h2.combination(item.coords));
        item.ext = build_extension(item.cocycle);
        if (item.ext.e.order() <= kLabelCap) item.label = abstract_label(item.ext.e);
        cat.items.push_back(std::move(item));
    }
    if (m.carrier.order() * m.group().order() <= kExtensionCap) {
        cat.pairwise_inequivalent = true;
        for (size_t i = 0; i < cat.items.size() && cat.pairwise_inequivalent; ++i)
            for (size_t j = i + 1; j < cat.items.size() && cat.pairwise_inequivalent; ++j)
                if (equivalent(cat.items[i].ext, cat.items[j].ext))
                    cat.pairwise_inequivalent = false;
    }
    return cat;
}

} // namespace coho
