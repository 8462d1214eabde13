#pragma once

#include "coho/group.hpp"
#include "coho/simplex.hpp"

#include <algorithm>
#include <set>

namespace coho {

/// Nonnegative rational function on a finite group (the finite stand-in for
/// a nonnegative compactly supported function).
struct GroupFunction {
    const FiniteGroup* g = nullptr;
    std::vector<Rat> values; // one per element index

    const FiniteGroup& group() const { return *g; }
    bool nonzero() const {
        for (const Rat& v : values)
            if (v != 0) return true;
        return false;
    }
    Rat sum() const {
        Rat s = 0;
        for (const Rat& v : values) s += v;
        return s;
    }
    std::vector<int> support() const {
        std::vector<int> out;
        for (int x = 0; x < static_cast<int>(values.size()); ++x)
            if (values[x] != 0) out.push_back(x);
        return out;
    }
};

inline GroupFunction group_function(const FiniteGroup& g, std::vector<Rat> values) {
    if (static_cast<int>(values.size()) != g.order())
        throw ValidationError("bad-function", "one value per group element required");
    for (int x = 0; x < g.order(); ++x)
        if (values[x] < 0)
            throw ValidationError("bad-function",
                                  "negative value at element " + g.elements[x]);
    return GroupFunction{&g, std::move(values)};
}

inline GroupFunction constant_function(const FiniteGroup& g, const Rat& c) {
    return group_function(g, std::vector<Rat>(g.order(), c));
}

inline GroupFunction indicator_function(const FiniteGroup& g, const std::vector<int>& support) {
    std::vector<Rat> v(g.order(), Rat(0));
    for (int x : support) {
        if (x < 0 || x >= g.order())
            throw ValidationError("bad-function", "support index out of range");
        v[x] = 1;
    }
    return GroupFunction{&g, std::move(v)};
}

inline GroupFunction point_mass(const FiniteGroup& g) {
    return indicator_function(g, {g.identity});
}

/// Left translation f_u(x) = f(u x), following the convention f_u(x)=f(ux).
inline GroupFunction translate(const GroupFunction& f, int u) {
    GroupFunction out{f.g, std::vector<Rat>(f.values.size())};
    for (int x = 0; x < f.group().order(); ++x) out.values[x] = f.values[f.group().mul(u, x)];
    return out;
}

inline GroupFunction function_add(const GroupFunction& a, const GroupFunction& b) {
    if (a.g != b.g && !(*a.g == *b.g))
        throw ValidationError("mismatched-groups", "functions live on different groups");
    GroupFunction out{a.g, a.values};
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

inline GroupFunction function_scale(const Rat& c, const GroupFunction& f) {
    if (c < 0) throw ValidationError("bad-function", "scaling must keep the function nonnegative");
    GroupFunction out{f.g, f.values};
    for (Rat& v : out.values) v *= c;
    return out;
}

/// Optimal covering of f by left translates of g, with both sides of the
/// duality certificate retained.
struct HaarReport {
    Rat value;                     // (f; g)
    std::vector<Rat> coefficients; // c_u per translate, >= 0
    std::vector<Rat> dual;         // y_x with sum f y = value
    bool feasible = false;         // sum_u c_u g(ux) >= f(x) for all x
    bool certified = false;        // strong duality seen exactly
};

/// (f; g) = min sum_u c_u subject to sum_u c_u g(ux) >= f(x), c_u >= 0.
/// Solved through its dual max f^T y, G y <= 1, y >= 0 (the zero vector is a
/// basic feasible start); the covering coefficients are the shadow prices.
inline HaarReport approx_integral(const GroupFunction& f, const GroupFunction& g) {
    if (f.g != g.g && !(*f.g == *g.g))
        throw ValidationError("mismatched-groups", "functions live on different groups");
    if (!g.nonzero())
        throw Error("undefined-relative-integral",
                    "the approximate integral relative to the zero function is undefined");
    const FiniteGroup& grp = f.group();
    const int n = grp.order();

    std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n));
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) rows[u][x] = g.values[grp.mul(u, x)];
    SimplexResult s = simplex_max(rows, std::vector<Rat>(n, Rat(1)), f.values);

    HaarReport rep;
    rep.value = s.objective;
    rep.coefficients = s.duals;
    rep.dual = s.solution;

    // Re-verify both sides of the certificate independently of the solver.
    rep.feasible = true;
    for (int x = 0; x < n; ++x) {
        Rat cover = 0;
        for (int u = 0; u < n; ++u) cover += rep.coefficients[u] * g.values[grp.mul(u, x)];
        rep.feasible = rep.feasible && cover >= f.values[x];
    }
    Rat primal = 0;
    for (const Rat& c : rep.coefficients) {
        rep.feasible = rep.feasible && c >= 0;
        primal += c;
    }
    Rat dual_obj = 0;
    bool dual_ok = true;
    for (int x = 0; x < n; ++x) {
        dual_ok = dual_ok && rep.dual[x] >= 0;
        dual_obj += f.values[x] * rep.dual[x];
    }
    for (int u = 0; u < n; ++u) {
        Rat used = 0;
        for (int x = 0; x < n; ++x) used += g.values[grp.mul(u, x)] * rep.dual[x];
        dual_ok = dual_ok && used <= 1;
    }
    rep.certified = dual_ok && primal == rep.value && dual_obj == rep.value;
    if (!rep.feasible || !rep.certified)
        throw Error("internal", "covering optimum failed its own certificate");
    return rep;
}

/// I_phi(f) = (f; phi) / (g_ref; phi) with the exact property suite of the
/// relative integral verified on this instance: bounds against (f; g_ref)
/// and (g_ref; f) when f is nonzero, invariance under every left translate,
/// and positive homogeneity.
struct RelativeIntegralReport {
    Rat value;
    Rat f_phi;    // (f; phi)
    Rat gref_phi; // (g_ref; phi)
    bool f_nonzero = false;
    bool bounds_ok = false;              // (g_ref; f)^{-1} <= value <= (f; g_ref)
    bool translation_invariant = false;  // I_phi(f_x) = I_phi(f) for all x
    bool homogeneous = false;            // I_phi(c f) = c I_phi(f), c in {2, 7/3}
};

inline Rat relative_integral_value(const GroupFunction& f, const GroupFunction& phi,
                                   const GroupFunction& g_ref) {
    return approx_integral(f, phi).value / approx_integral(g_ref, phi).value;
}

inline RelativeIntegralReport relative_integral(const GroupFunction& f,
                                                const GroupFunction& phi,
                                                const GroupFunction& g_ref) {
    if (!g_ref.nonzero())
        throw Error("undefined-relative-integral", "the reference function must be nonzero");
    RelativeIntegralReport rep;
    rep.f_phi = approx_integral(f, phi).value;
    rep.gref_phi = approx_integral(g_ref, phi).value;
    rep.value = rep.f_phi / rep.gref_phi;
    rep.f_nonzero = f.nonzero();

    if (rep.f_nonzero) {
        Rat upper = approx_integral(f, g_ref).value;
        Rat lower = Rat(1) / approx_integral(g_ref, f).value;
        rep.bounds_ok = lower <= rep.value && rep.value <= upper;
    } else {
        rep.bounds_ok = rep.value == 0;
    }

    rep.translation_invariant = true;
    for (int x = 0; x < f.group().order(); ++x) {
        GroupFunction fx = translate(f, x);
        // (f_x; phi) depends only on the value vector, so translates that
        // coincide with f (x = e, or any period of f) reuse the solved value.
        Rat fx_phi = (fx.values == f.values) ? rep.f_phi : approx_integral(fx, phi).value;
        rep.translation_invariant = rep.translation_invariant && fx_phi / rep.gref_phi == rep.value;
    }

    rep.homogeneous = true;
    for (const Rat& c : {Rat(2), Rat(7) / 3}) {
        Rat scaled = approx_integral(function_scale(c, f), phi).value / rep.gref_phi;
        rep.homogeneous = rep.homogeneous && scaled == c * rep.value;
    }
    return rep;
}

/// Signed additivity surplus I_phi(f1) + I_phi(f2) - I_phi(f1 + f2); it is
/// nonnegative by subadditivity and its absolute value is the near-additivity
/// gap. Zero at phi = point mass.
inline Rat near_additivity_gap(const GroupFunction& f1, const GroupFunction& f2,
                               const GroupFunction& phi, const GroupFunction& g_ref) {
    Rat denom = approx_integral(g_ref, phi).value; // shared by all three integrals
    Rat a = approx_integral(f1, phi).value / denom;
    Rat b = approx_integral(f2, phi).value / denom;
    Rat both = approx_integral(function_add(f1, f2), phi).value / denom;
    return a + b - both;
}

/// Gaps along a family of indicator test functions with shrinking supports
/// (the finite shadow of the net over neighbourhoods of the identity).
inline std::vector<Rat> near_additivity_study(const GroupFunction& f1, const GroupFunction& f2,
                                              const GroupFunction& g_ref,
                                              const std::vector<std::vector<int>>& supports) {
    std::vector<Rat> gaps;
    for (const auto& s : supports) {
        GroupFunction phi = indicator_function(f1.group(), s);
        gaps.push_back(near_additivity_gap(f1, f2, phi, g_ref));
    }
    return gaps;
}

/// The invariant integral attained at phi = point mass: f -> sum f / sum
/// g_ref. The certificate checks the four functional properties exactly on
/// the indicator basis (every function is a nonnegative combination of
/// indicators and the functional is linear, so the basis checks decide the
/// general case).
struct InvariantIntegral {
    const FiniteGroup* g = nullptr;
    Rat denom; // sum of g_ref

    Rat apply(const GroupFunction& f) const {
        if (f.g != g && !(*f.g == *g))
            throw ValidationError("mismatched-groups", "function lives on a different group");
        return f.sum() / denom;
    }
};

struct InvariantIntegralReport {
    InvariantIntegral functional;
    bool positive = false;       // nonzero f gives a positive value
    bool left_invariant = false; // I(f_x) = I(f), exhaustive on indicators
    bool additive = false;
    bool homogeneous = false;
    bool nonzero = false; // I(indicator of G) > 0
};

inline InvariantIntegralReport invariant_integral(const FiniteGroup& g,
                                                  const GroupFunction& g_ref) {
    if (!g_ref.nonzero())
        throw Error("undefined-relative-integral", "the reference function must be nonzero");
    InvariantIntegralReport rep;
    rep.functional = InvariantIntegral{&g, g_ref.sum()};
    const auto& inv = rep.functional;

    rep.positive = true;
    rep.left_invariant = true;
    rep.additive = true;
    rep.homogeneous = true;
    for (int y = 0; y < g.order(); ++y) {
        GroupFunction dy = indicator_function(g, {y});
        rep.positive = rep.positive && inv.apply(dy) > 0;
        for (int x = 0; x < g.order(); ++x)
            rep.left_invariant =
                rep.left_invariant && inv.apply(translate(dy, x)) == inv.apply(dy);
        for (int z = 0; z < g.order(); ++z) {
            GroupFunction dz = indicator_function(g, {z});
            rep.additive = rep.additive &&
                           inv.apply(function_add(dy, dz)) == inv.apply(dy) + inv.apply(dz);
        }
        rep.homogeneous =
            rep.homogeneous && inv.apply(function_scale(Rat(5) / 2, dy)) ==
                                   Rat(5) / 2 * inv.apply(dy);
    }
    rep.nonzero = inv.apply(constant_function(g, 1)) > 0;
    return rep;
}

/// Symmetric subset of a finite group: contains the identity and is closed
/// under inversion.
struct SymmetricSet {
    const FiniteGroup* g = nullptr;
    std::vector<int> members; // sorted element indices

    const FiniteGroup& group() const { return *g; }
};

inline SymmetricSet symmetric_set(const FiniteGroup& g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::set<int> have(members.begin(), members.end());
    for (int x : members)
        if (x < 0 || x >= g.order())
            throw ValidationError("bad-set", "member index out of range");
    if (!have.count(g.identity))
        throw ValidationError("not-symmetric", "the set must contain the identity");
    for (int x : members)
        if (!have.count(g.inv(x)))
            throw ValidationError("not-symmetric",
                                  "member " + g.elements[x] + " lacks its inverse");
    return SymmetricSet{&g, std::move(members)};
}

/// Overlap with the own translates: u(x) = |M intersect xM| under counting
/// measure.
inline GroupFunction overlap_function(const SymmetricSet& m) {
    const FiniteGroup& g = m.group();
    std::set<int> in(m.members.begin(), m.members.end());
    std::vector<Rat> u(g.order(), Rat(0));
    for (int x = 0; x < g.order(); ++x) {
        int count = 0;
        for (int y : m.members)
            if (in.count(g.mul(x, y))) ++count;
        u[x] = count;
    }
    return GroupFunction{&g, std::move(u)};
}

/// Finite shadow of the product-set statement: the support of the overlap
/// function sits inside MM, which contains the identity, and u(e) = |M|.
struct ProductSetReport {
    std::vector<int> product_set; // MM, sorted
    std::vector<int> support;     // supp(u), sorted
    i64 overlap_at_identity = 0;  // u(e) = |M|
    bool support_in_product = false;
    bool identity_in_product = false;
};

inline ProductSetReport product_set_check(const SymmetricSet& m) {
    const FiniteGroup& g = m.group();
    GroupFunction u = overlap_function(m);
    std::set<int> mm;
    for (int a : m.members)
        for (int b : m.members) mm.insert(g.mul(a, b));

    ProductSetReport rep;
    rep.product_set.assign(mm.begin(), mm.end());
    rep.support = u.support();
    rep.overlap_at_identity = static_cast<i64>(m.members.size());
    if (u.values[g.identity] != rep.overlap_at_identity)
        throw Error("internal", "overlap at the identity must count the whole set");
    rep.identity_in_product = mm.count(g.identity) > 0;
    rep.support_in_product = true;
    for (int x : rep.support)
        rep.support_in_product = rep.support_in_product && mm.count(x) > 0;
    return rep;
}

/// Every symmetric subset (identity included, inverse-closed) of a small
/// group, enumerated over inverse-pair orbits.
inline std::vector<SymmetricSet> all_symmetric_sets(const FiniteGroup& g, i64 cap = 4096) {
    std::vector<std::vector<int>> orbits; // {x} or {x, x^{-1}}, identity excluded
    std::set<int> seen{g.identity};
    for (int x = 0; x < g.order(); ++x) {
        if (seen.count(x)) continue;
        int ix = g.inv(x);
        seen.insert(x);
        seen.insert(ix);
        if (ix == x)
            orbits.push_back({x});
        else
            orbits.push_back({x, ix});
    }
    if (orbits.size() >= 63 || (i64(1) << orbits.size()) > cap)
        throw SizeError("the group has too many symmetric subsets to enumerate");
    std::vector<SymmetricSet> out;
    for (i64 mask = 0; mask < (i64(1) << orbits.size()); ++mask) {
        std::vector<int> members{g.identity};
        for (size_t i = 0; i < orbits.size(); ++i)
            if (mask & (i64(1) << i))
                members.insert(members.end(), orbits[i].begin(), orbits[i].end());
        out.push_back(symmetric_set(g, std::move(members)));
    }
    return out;
}

} // namespace coho
