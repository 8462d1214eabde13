#pragma once

#include "coho/abelian.hpp"
#include "coho/group.hpp"

#include <map>

namespace coho {

inline constexpr i64 kModulusCap = 1'000'000;
inline constexpr int kRankCap = 64;

using ActionMatrix = std::vector<std::vector<i64>>; // rank x rank, reduced mod moduli

/// G-module: an abelian carrier with one action matrix per group element.
/// The group is referenced, not owned, and must outlive the module.
struct GModule {
    const FiniteGroup* g = nullptr;
    FiniteAbelianGroup carrier;
    std::vector<ActionMatrix> act;
    bool trivial = false; // every matrix is the identity

    const FiniteGroup& group() const { return *g; }

    Elem act_on(int s, const Elem& x) const {
        if (trivial) return x;
        const ActionMatrix& m = act[s];
        const int k = carrier.rank();
        Elem out(k);
        for (int r = 0; r < k; ++r) {
            i64 acc = 0; // bounded: rank <= 64, entries < 10^6
            for (int c = 0; c < k; ++c) acc += m[r][c] * x[c];
            out[r] = mod_reduce(acc, carrier.moduli[r]);
        }
        return out;
    }

    LinMap action_map(int s) const {
        return {carrier, carrier, act[s]};
    }
};

inline bool same_group(const GModule& a, const GModule& b) {
    return a.g == b.g || *a.g == *b.g;
}

namespace detail {

inline ActionMatrix identity_action(const FiniteAbelianGroup& a) {
    ActionMatrix m(a.rank(), std::vector<i64>(a.rank(), 0));
    for (int i = 0; i < a.rank(); ++i) m[i][i] = mod_reduce(1, a.moduli[i]);
    return m;
}

inline ActionMatrix reduce_action(const FiniteAbelianGroup& a, const ActionMatrix& m) {
    ActionMatrix out = m;
    for (int r = 0; r < a.rank(); ++r)
        for (int c = 0; c < a.rank(); ++c) out[r][c] = mod_reduce(out[r][c], a.moduli[r]);
    return out;
}

inline ActionMatrix mul_action(const FiniteAbelianGroup& a, const ActionMatrix& x,
                               const ActionMatrix& y) {
    const int k = a.rank();
    ActionMatrix out(k, std::vector<i64>(k, 0));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            Int acc = 0;
            for (int t = 0; t < k; ++t) acc += Int(x[r][t]) * y[t][c];
            Int v = acc % a.moduli[r];
            if (v < 0) v += a.moduli[r];
            out[r][c] = static_cast<i64>(v);
        }
    return out;
}

} // namespace detail

inline void check_carrier_caps(const FiniteAbelianGroup& a) {
    if (a.rank() > kRankCap)
        throw SizeError("carrier rank " + std::to_string(a.rank()) + " exceeds the cap of " +
                        std::to_string(kRankCap));
    for (i64 m : a.moduli) {
        if (m < 1) throw ValidationError("invalid-module", "moduli must be positive");
        if (m > kModulusCap)
            throw SizeError("modulus " + std::to_string(m) + " exceeds the cap of " +
                            std::to_string(kModulusCap));
    }
}

/// Full validation of a module candidate: matrix shapes, well-definedness
/// against the carrier relations, identity, and the composition law.
/// Throws with a witness on the first failure.
inline void validate_module(const GModule& m) {
    const FiniteGroup& g = m.group();
    const int k = m.carrier.rank();
    if (static_cast<int>(m.act.size()) != g.order())
        throw ValidationError("invalid-module", "one action matrix per group element required");
    for (int s = 0; s < g.order(); ++s) {
        if (static_cast<int>(m.act[s].size()) != k)
            throw ValidationError("invalid-module",
                                  "action of " + g.elements[s] + " has the wrong shape");
        for (const auto& row : m.act[s])
            if (static_cast<int>(row.size()) != k)
                throw ValidationError("invalid-module",
                                      "action of " + g.elements[s] + " has the wrong shape");
        LinMap t{m.carrier, m.carrier, m.act[s]};
        if (!t.well_defined())
            throw ValidationError("invalid-module", "action of " + g.elements[s] +
                                                        " does not respect the carrier relations");
    }
    if (m.act[g.identity] != detail::identity_action(m.carrier))
        throw ValidationError("invalid-module", "identity must act as the identity matrix");
    for (int s = 0; s < g.order(); ++s)
        for (int t = 0; t < g.order(); ++t)
            if (detail::mul_action(m.carrier, m.act[s], m.act[t]) != m.act[g.mul(s, t)])
                throw ValidationError("invalid-module",
                                      "action is not multiplicative at the pair (" +
                                          g.elements[s] + ", " + g.elements[t] + ")");
}

inline GModule trivial_module(const FiniteGroup& g, FiniteAbelianGroup a) {
    check_carrier_caps(a);
    GModule m;
    m.g = &g;
    m.carrier = std::move(a);
    m.act.assign(g.order(), detail::identity_action(m.carrier));
    m.trivial = true;
    return m;
}

inline GModule module_from_matrices(const FiniteGroup& g, FiniteAbelianGroup a,
                                    std::vector<ActionMatrix> per_element) {
    check_carrier_caps(a);
    GModule m;
    m.g = &g;
    m.carrier = std::move(a);
    m.act.resize(per_element.size());
    for (size_t s = 0; s < per_element.size(); ++s) {
        for (const auto& row : per_element[s])
            if (static_cast<int>(row.size()) != m.carrier.rank() ||
                static_cast<int>(per_element[s].size()) != m.carrier.rank())
                throw ValidationError("invalid-module", "action matrix has the wrong shape");
        m.act[s] = detail::reduce_action(m.carrier, per_element[s]);
    }
    validate_module(m);
    m.trivial = true;
    const ActionMatrix id = detail::identity_action(m.carrier);
    for (const auto& mat : m.act)
        if (mat != id) { m.trivial = false; break; }
    return m;
}

/// Builds a module from matrices for a generating set, closing under the
/// group multiplication by breadth-first search from the identity. Rejects
/// inconsistent images and generator sets that do not generate.
inline GModule module_from_generators(const FiniteGroup& g, FiniteAbelianGroup a,
                                      const std::map<std::string, ActionMatrix>& gen_images) {
    check_carrier_caps(a);
    std::vector<std::pair<int, ActionMatrix>> gens;
    for (const auto& [label, mat] : gen_images) {
        auto it = std::find(g.elements.begin(), g.elements.end(), label);
        if (it == g.elements.end())
            throw ValidationError("invalid-module", "generator label '" + label +
                                                        "' is not a group element");
        for (const auto& row : mat)
            if (static_cast<int>(row.size()) != a.rank() ||
                static_cast<int>(mat.size()) != a.rank())
                throw ValidationError("invalid-module", "action matrix has the wrong shape");
        gens.emplace_back(static_cast<int>(it - g.elements.begin()),
                          detail::reduce_action(a, mat));
    }

    std::vector<ActionMatrix> act(g.order());
    std::vector<bool> known(g.order(), false);
    act[g.identity] = detail::identity_action(a);
    known[g.identity] = true;
    std::vector<int> frontier{g.identity};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int s : frontier)
            for (const auto& [gen, mat] : gens) {
                int t = g.mul(gen, s);
                ActionMatrix prod = detail::mul_action(a, mat, act[s]);
                if (!known[t]) {
                    act[t] = std::move(prod);
                    known[t] = true;
                    next.push_back(t);
                } else if (act[t] != prod) {
                    throw ValidationError("invalid-module",
                                          "generator images are inconsistent at element " +
                                              g.elements[t]);
                }
            }
        frontier = std::move(next);
    }
    for (int s = 0; s < g.order(); ++s)
        if (!known[s])
            throw ValidationError("invalid-module", "the given generators do not generate: " +
                                                        g.elements[s] + " was never reached");
    return module_from_matrices(g, std::move(a), std::move(act));
}

/// Fixed-point subgroup A^G = {a : s.a = a for all s}, with its own
/// invariant factors and the embedding into the carrier.
inline Subgroup fixed_points(const GModule& m) {
    const FiniteGroup& g = m.group();
    const int k = m.carrier.rank();
    LinMap t = LinMap::zero(m.carrier, direct_power(m.carrier, g.order()));
    for (int s = 0; s < g.order(); ++s)
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) {
                i64 v = m.act[s][r][c] - (r == c ? 1 : 0);
                t.m[s * k + r][c] = mod_reduce(v, m.carrier.moduli[r]);
            }
    return subgroup_from_lattice(m.carrier, kernel_lattice(t));
}

} // namespace coho
