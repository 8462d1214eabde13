#pragma once

#include "coho/cohomology.hpp"

#include <functional>

namespace coho {

/// Short exact sequence of modules over one group,
///   0 -> A' -> A -> A'' -> 0,
/// with a set-theoretic section of proj stored as an integer matrix (one
/// carrier column per quotient coordinate; not a homomorphism in general).
struct ModuleSES {
    const GModule* sub = nullptr;  // A'
    const GModule* mid = nullptr;  // A
    const GModule* quot = nullptr; // A''
    LinMap incl;                   // A'  -> A
    LinMap proj;                   // A   -> A''
    IMat section;                  // mid.rank x quot.rank

    Elem lift(const Elem& x) const {
        std::vector<Int> v(x.begin(), x.end());
        return mid->carrier.reduce(section.apply(v));
    }
};

namespace detail {

inline void require_equivariant(const GModule& src, const GModule& dst, const LinMap& f,
                                const std::string& name) {
    for (int s = 0; s < src.group().order(); ++s)
        if (!(f.compose(src.action_map(s)) == dst.action_map(s).compose(f)))
            throw ValidationError("not-equivariant",
                                  name + " does not commute with the action of " +
                                      src.group().elements[s]);
}

} // namespace detail

/// Validates the maps (module maps, injective/surjective, exact in the
/// middle) and computes a section of proj by integer solves.
inline ModuleSES make_ses(const GModule& sub, const GModule& mid, const GModule& quot,
                          const LinMap& incl, const LinMap& proj) {
    if (!same_group(sub, mid) || !same_group(mid, quot))
        throw ValidationError("mismatched-modules",
                              "all three modules must live over the same group");
    if (!(incl.src == sub.carrier) || !(incl.dst == mid.carrier) ||
        !(proj.src == mid.carrier) || !(proj.dst == quot.carrier))
        throw ValidationError("mismatched-modules", "map endpoints do not match the carriers");
    if (!incl.well_defined() || !proj.well_defined())
        throw ValidationError("invalid-map", "incl or proj is not well defined on the carriers");
    detail::require_equivariant(sub, mid, incl, "incl");
    detail::require_equivariant(mid, quot, proj, "proj");

    if (!(kernel_lattice(incl) == hermite_basis(IMat::diagonal(sub.carrier.moduli))))
        throw ValidationError("not-injective", "incl has a nonzero kernel");
    if (!(image_lattice(incl) == kernel_lattice(proj)))
        throw ValidationError("not-exact", "the image of incl differs from the kernel of proj");

    // Section of proj, one column per quotient coordinate; failure of any
    // solve means proj misses that generator.
    IMat aug = proj.matrix().hcat(IMat::diagonal(quot.carrier.moduli));
    IntSolver solver(aug);
    IMat section(mid.carrier.rank(), quot.carrier.rank());
    for (int j = 0; j < quot.carrier.rank(); ++j) {
        std::vector<Int> e(quot.carrier.rank(), 0);
        e[j] = 1;
        auto x = solver.solve(e);
        if (!x)
            throw ValidationError("not-surjective",
                                  "proj misses quotient coordinate " + std::to_string(j));
        for (int i = 0; i < mid.carrier.rank(); ++i) section.at(i, j) = (*x)[i];
    }

    ModuleSES s;
    s.sub = &sub;
    s.mid = &mid;
    s.quot = &quot;
    s.incl = incl;
    s.proj = proj;
    s.section = std::move(section);
    return s;
}

/// Applies a carrier map pointwise to a cochain's value table.
inline Cochain map_cochain(const LinMap& f, const GModule& dst, const Cochain& z) {
    Cochain out = zero_cochain(dst, z.degree);
    for (size_t t = 0; t < z.values.size(); ++t) out.values[t] = f.apply(z.values[t]);
    return out;
}

/// Connecting construction on cocycles: lift a cocycle over A'' pointwise
/// through the section, take its coboundary (which lands in the image of
/// incl), and pull back through incl. An alternate section may be supplied;
/// the resulting cocycle changes only by a coboundary.
inline Cochain connecting_cochain(const ModuleSES& s, const Cochain& z, const IMat& section) {
    if (!(coboundary(z).is_zero()))
        throw ValidationError("not-a-cocycle", "the connecting map is defined on cocycles only");
    if (section.rows() != s.mid->carrier.rank() || section.cols() != s.quot->carrier.rank())
        throw ValidationError("bad-section", "section matrix has the wrong shape");
    for (int j = 0; j < section.cols(); ++j) {
        std::vector<Int> col = section.column_vec(j);
        Elem image = s.proj.apply(s.mid->carrier.reduce(col));
        Elem unit(s.quot->carrier.rank(), 0);
        unit[j] = 1;
        if (image != s.quot->carrier.reduce(unit))
            throw ValidationError("bad-section",
                                  "section column " + std::to_string(j) +
                                      " is not a preimage of its coordinate");
    }

    Cochain lifted = zero_cochain(*s.mid, z.degree);
    for (size_t t = 0; t < z.values.size(); ++t) {
        std::vector<Int> v(z.values[t].begin(), z.values[t].end());
        lifted.values[t] = s.mid->carrier.reduce(section.apply(v));
    }
    Cochain dl = coboundary(lifted);

    IMat aug = s.incl.matrix().hcat(IMat::diagonal(s.mid->carrier.moduli));
    IntSolver solver(aug);
    Cochain out = zero_cochain(*s.sub, z.degree + 1);
    for (size_t t = 0; t < dl.values.size(); ++t) {
        std::vector<Int> b(dl.values[t].begin(), dl.values[t].end());
        auto w = solver.solve(b);
        if (!w) throw Error("internal", "coboundary of the lift escaped the embedded submodule");
        Elem e(s.sub->carrier.rank(), 0);
        for (int i = 0; i < s.sub->carrier.rank(); ++i) {
            i64 mod = s.sub->carrier.moduli[i];
            Int r = (*w)[i] % mod;
            if (r < 0) r += mod;
            e[i] = static_cast<i64>(r);
        }
        out.values[t] = e;
    }
    return out;
}

inline Cochain connecting_cochain(const ModuleSES& s, const Cochain& z) {
    return connecting_cochain(s, z, s.section);
}

/// Map between cohomology coordinate groups induced by a cocycle-level map:
/// each source generator's representative is pushed through and re-expressed
/// in target coordinates.
inline LinMap induced_map(const CohomologyGroup& src, const CohomologyGroup& dst,
                          const std::function<Cochain(const Cochain&)>& push) {
    LinMap f = LinMap::zero(src.group, dst.group);
    for (int i = 0; i < src.group.rank(); ++i) {
        auto c = dst.coords(push(src.representatives[i]));
        if (!c) throw Error("internal", "an induced map left the cocycle space");
        for (int r = 0; r < dst.group.rank(); ++r) f.m[r][i] = (*c)[r];
    }
    if (!f.well_defined()) throw Error("internal", "an induced map is not well defined");
    return f;
}

struct ExactnessCheck {
    std::string node; // e.g. "H^1(A)"
    bool exact = false;
};

/// The long exact cohomology sequence
///   0 -> H^0(A') -> H^0(A) -> H^0(A'') -> H^1(A') -> ...
/// through degree `cap`, with exactness verified at every node (the final
/// node uses the connecting map into degree cap+1).
struct LongExactSequence {
    int cap = 0;
    std::vector<CohomologyGroup> sub, mid, quot; // sub has one extra degree
    std::vector<LinMap> incl_star;               // H^n(A')  -> H^n(A)
    std::vector<LinMap> proj_star;               // H^n(A)   -> H^n(A'')
    std::vector<LinMap> connect;                 // H^n(A'') -> H^{n+1}(A')
    std::vector<ExactnessCheck> checks;
    bool exact = true;
};

inline LongExactSequence long_exact_sequence(const ModuleSES& s, int cap = 2,
                                             const CohomologyCaps& caps = CohomologyCaps{}) {
    if (cap < 0) throw ValidationError("bad-degree", "the degree cap must be nonnegative");
    if (cap + 1 > caps.max_degree)
        throw SizeError("the sequence through degree " + std::to_string(cap) +
                        " needs cohomology in degree " + std::to_string(cap + 1) +
                        ", beyond the cap of " + std::to_string(caps.max_degree));

    LongExactSequence les;
    les.cap = cap;
    for (int n = 0; n <= cap + 1; ++n) les.sub.push_back(cohomology(*s.sub, n, caps));
    for (int n = 0; n <= cap; ++n) {
        les.mid.push_back(cohomology(*s.mid, n, caps));
        les.quot.push_back(cohomology(*s.quot, n, caps));
    }
    for (int n = 0; n <= cap; ++n) {
        les.incl_star.push_back(induced_map(les.sub[n], les.mid[n], [&](const Cochain& z) {
            return map_cochain(s.incl, *s.mid, z);
        }));
        les.proj_star.push_back(induced_map(les.mid[n], les.quot[n], [&](const Cochain& z) {
            return map_cochain(s.proj, *s.quot, z);
        }));
        les.connect.push_back(induced_map(les.quot[n], les.sub[n + 1], [&](const Cochain& z) {
            return connecting_cochain(s, z);
        }));
    }

    auto note = [&](const std::string& node, bool ok) {
        les.checks.push_back({node, ok});
        les.exact = les.exact && ok;
    };
    // Injectivity at the head: the sequence starts from 0.
    note("H^0(A')", kernel_lattice(les.incl_star[0]) ==
                        hermite_basis(IMat::diagonal(les.sub[0].group.moduli)));
    for (int n = 0; n <= cap; ++n) {
        note("H^" + std::to_string(n) + "(A)",
             kernel_lattice(les.proj_star[n]) == image_lattice(les.incl_star[n]));
        note("H^" + std::to_string(n) + "(A'')",
             kernel_lattice(les.connect[n]) == image_lattice(les.proj_star[n]));
        if (n < cap)
            note("H^" + std::to_string(n + 1) + "(A')",
                 kernel_lattice(les.incl_star[n + 1]) == image_lattice(les.connect[n]));
    }
    return les;
}

/// Degree-shift isomorphism H^2(G, A) = H^1(G, U(A)) through the sequence
///   0 -> A -> I(A) -> U(A) -> 0
/// with I(A) induced (hence without higher cohomology). The connecting map
/// realizes the isomorphism; the report records it on generators.
struct DimensionShiftReport {
    std::vector<i64> h2_factors;      // invariant factors of H^2(G, A)
    std::vector<i64> shifted_factors; // invariant factors of H^1(G, U(A))
    bool induced_acyclic = false;     // H^1(I(A)) = H^2(I(A)) = 0
    bool bijective = false;           // connecting map is injective and surjective
    std::vector<std::pair<std::vector<i64>, std::vector<i64>>> generator_images;
};

inline DimensionShiftReport dimension_shift_check(const GModule& m,
                                                  const CohomologyCaps& caps = CohomologyCaps{}) {
    InducedModule ind = induced_module(m);
    ModuleSES s = make_ses(m, ind.induced, ind.quotient, ind.embed, ind.q.proj);

    CohomologyGroup h2 = cohomology(m, 2, caps);
    CohomologyGroup h1u = cohomology(ind.quotient, 1, caps);
    CohomologyGroup h1i = cohomology(ind.induced, 1, caps);
    CohomologyGroup h2i = cohomology(ind.induced, 2, caps);

    LinMap delta = induced_map(h1u, h2, [&](const Cochain& z) {
        return connecting_cochain(s, z);
    });

    DimensionShiftReport rep;
    rep.h2_factors = h2.group.moduli;
    rep.shifted_factors = h1u.group.moduli;
    rep.induced_acyclic = h1i.order() == 1 && h2i.order() == 1;
    bool injective =
        kernel_lattice(delta) == hermite_basis(IMat::diagonal(h1u.group.moduli));
    bool surjective = image_lattice(delta) == hermite_basis(IMat::identity(h2.group.rank()));
    rep.bijective = injective && surjective;
    for (int i = 0; i < h1u.group.rank(); ++i) {
        std::vector<i64> e(h1u.group.rank(), 0);
        e[i] = 1;
        rep.generator_images.push_back({e, delta.apply(e)});
    }
    return rep;
}

} // namespace coho
