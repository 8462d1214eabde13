#pragma once

#include "coho/cochain.hpp"

#include <memory>

namespace coho {

struct CohomologyCaps {
    int max_degree = 3;
    i64 max_tuples = 20736; // bound on |G|^n
};

/// C^n(G, A) as a presented abelian group: one carrier block per n-tuple.
inline FiniteAbelianGroup cochain_space(const GModule& m, int n) {
    return direct_power(m.carrier, static_cast<int>(tuple_count(m.group().order(), n)));
}

/// The coboundary d^n : C^n -> C^{n+1} as an explicit integer matrix map.
inline LinMap coboundary_map(const GModule& m, int n) {
    const FiniteGroup& g = m.group();
    const i64 go = g.order();
    const int k = m.carrier.rank();
    const i64 dst_tuples = tuple_count(go, n + 1);
    LinMap d = LinMap::zero(cochain_space(m, n), cochain_space(m, n + 1));

    std::vector<int> t(n > 0 ? n : 0);
    for (i64 idx = 0; idx < dst_tuples; ++idx) {
        std::vector<int> s = tuple_decode(go, n + 1, idx);
        auto add_block = [&](i64 col_tuple, int sign, const ActionMatrix* mat) {
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    i64 v = mat ? (*mat)[r][c] : (r == c ? 1 : 0);
                    if (v == 0) continue;
                    i64& cell = d.m[idx * k + r][col_tuple * k + c];
                    cell = mod_reduce(cell + sign * v, m.carrier.moduli[r]);
                }
        };
        i64 head = 0;
        for (int i = 1; i <= n; ++i) head = head * go + s[i];
        add_block(head, 1, &m.act[s[0]]);
        for (int i = 1; i <= n; ++i) {
            for (int j = 0, p = 0; j <= n; ++j) {
                if (j == i) continue;
                t[p++] = (j == i - 1) ? g.mul(s[i - 1], s[i]) : s[j];
            }
            add_block(tuple_index(go, t), (i % 2) ? -1 : 1, nullptr);
        }
        i64 tail = 0;
        for (int i = 0; i < n; ++i) tail = tail * go + s[i];
        add_block(tail, ((n + 1) % 2) ? -1 : 1, nullptr);
    }
    return d;
}

/// H^n(G, A) in invariant-factor form together with the data needed to test
/// membership and read off class coordinates: a canonical basis of the
/// cocycle lattice Z^n, the boundary lattice B^n, and the transform taking
/// cocycle coordinates to invariant-factor coordinates.
struct CohomologyGroup {
    int degree = 0;
    const GModule* mod = nullptr;
    FiniteAbelianGroup group; // invariant factors, each >= 2
    std::vector<Cochain> representatives;

    IMat cocycle_lattice;  // hermite basis K of {integer tables of cocycles}
    IMat boundary_lattice; // hermite basis of {integer tables of coboundaries}
    std::shared_ptr<const IntSolver> ker_solver;      // solves K y = x
    std::shared_ptr<const IntSolver> preimage_solver; // solves [D_{n-1} | rel] w = x
    IMat u;                // invariant-factor transform on K-coordinates
    std::vector<int> kept; // rows of u carrying factors > 1

    i64 order() const { return group.order(); }

    /// Coordinates of a cocycle's class against the invariant factors.
    /// Empty result if the table is not a cocycle.
    std::optional<std::vector<i64>> coords(const Cochain& f) const {
        std::vector<i64> flat = f.flatten();
        auto y = ker_solver->solve(std::vector<Int>(flat.begin(), flat.end()));
        if (!y) return std::nullopt;
        std::vector<Int> w = u.apply(*y);
        std::vector<i64> out(kept.size());
        for (size_t i = 0; i < kept.size(); ++i) {
            Int r = w[kept[i]] % group.moduli[i];
            if (r < 0) r += group.moduli[i];
            out[i] = static_cast<i64>(r);
        }
        return out;
    }

    /// The cocycle sum_i c_i . representative_i for given class coordinates.
    Cochain combination(const std::vector<i64>& c) const {
        Cochain out = zero_cochain(*mod, degree);
        for (size_t i = 0; i < c.size(); ++i)
            out = cochain_add(out, cochain_smul(c[i], representatives[i]));
        return out;
    }

    /// The lexicographically smallest value table in the class of z: greedy
    /// reduction by the boundary lattice, which has full rank because it
    /// contains the carrier relations (so its hermite basis is square and
    /// lower triangular).
    Cochain canonical_representative(const Cochain& z) const {
        const int nn = boundary_lattice.rows();
        if (boundary_lattice.cols() != nn)
            throw Error("internal", "boundary lattice lost full rank");
        std::vector<i64> flat = z.flatten();
        std::vector<Int> v(flat.begin(), flat.end());
        for (int j = 0; j < nn; ++j) {
            Int p = boundary_lattice.at(j, j);
            Int q = v[j] / p;
            if (v[j] % p < 0) q -= 1;
            if (q != 0)
                for (int i = j; i < nn; ++i) v[i] -= q * boundary_lattice.at(i, j);
        }
        std::vector<i64> out(nn);
        for (int i = 0; i < nn; ++i) out[i] = static_cast<i64>(v[i]);
        return cochain_from_flat(*mod, degree, out);
    }
};

struct CohomologyClass {
    const CohomologyGroup* group = nullptr;
    std::vector<i64> coords;

    Cochain to_cocycle() const {
        return group->canonical_representative(group->combination(coords));
    }
    bool is_trivial() const {
        for (i64 c : coords)
            if (c != 0) return false;
        return true;
    }
};

inline CohomologyGroup cohomology(const GModule& m, int n,
                                  const CohomologyCaps& caps = CohomologyCaps{}) {
    const FiniteGroup& g = m.group();
    if (n < 0) throw ValidationError("bad-degree", "cohomology degree must be nonnegative");
    if (n > caps.max_degree)
        throw SizeError("degree " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(caps.max_degree));
    const i64 tuples = tuple_count(g.order(), n);
    if (tuples > caps.max_tuples)
        throw SizeError("|G|^n = " + std::to_string(tuples) + " exceeds the cap of " +
                        std::to_string(caps.max_tuples));
    // The kernel computation factorizes a rows x (rows + cols) matrix.
    const i64 rows = tuples * g.order() * m.carrier.rank();
    const i64 cols = tuples * m.carrier.rank();
    if (rows * (rows + cols) > 5'000'000)
        throw SizeError("|G|^n = " + std::to_string(tuples) +
                        " leads to a coboundary matrix beyond the memory guard");

    LinMap dn = coboundary_map(m, n);
    IMat prev = n == 0 ? IMat(static_cast<int>(cols), 0) : coboundary_map(m, n - 1).matrix();
    IMat aug = prev.hcat(IMat::diagonal(dn.src.moduli)); // [d^{n-1} | carrier relations]

    CohomologyGroup h;
    h.degree = n;
    h.mod = &m;
    h.cocycle_lattice = kernel_lattice(dn);
    h.boundary_lattice = hermite_basis(aug);
    h.ker_solver = std::make_shared<IntSolver>(h.cocycle_lattice);
    if (n > 0) h.preimage_solver = std::make_shared<IntSolver>(aug);

    // Relations of Z^n / B^n in cocycle-lattice coordinates: the boundary
    // generators and the carrier relations, both expressed against K.
    const int N = h.cocycle_lattice.rows();
    IMat c(N, aug.cols());
    for (int j = 0; j < aug.cols(); ++j) {
        auto y = h.ker_solver->solve(aug.column_vec(j));
        if (!y) throw Error("internal", "a coboundary escaped the cocycle lattice");
        for (int i = 0; i < N; ++i) c.at(i, j) = (*y)[i];
    }
    SmithDecomposition s = smith(c);
    if (s.rank < N) throw Error("internal", "cohomology of a finite carrier must be finite");
    h.u = s.u;
    for (int i = 0; i < N; ++i)
        if (s.diag(i) > 1) {
            h.group.moduli.push_back(to_i64(s.diag(i)));
            h.kept.push_back(i);
        }

    for (size_t i = 0; i < h.kept.size(); ++i) {
        std::vector<Int> y = s.ui.column_vec(h.kept[i]);
        std::vector<Int> flat = h.cocycle_lattice.apply(y);
        Cochain rep = zero_cochain(m, n);
        const int k = m.carrier.rank();
        for (i64 t = 0; t < tuples; ++t)
            for (int j = 0; j < k; ++j) {
                Int r = flat[t * k + j] % m.carrier.moduli[j];
                if (r < 0) r += m.carrier.moduli[j];
                rep.values[t][j] = static_cast<i64>(r);
            }
        // Deterministic choice: each class is represented by the
        // lexicographically smallest table in its coset, and of the two
        // generator signs the one with the smaller table wins (the
        // coordinate transform flips with it).
        rep = h.canonical_representative(rep);
        Cochain neg = h.canonical_representative(cochain_smul(-1, rep));
        if (neg.flatten() < rep.flatten()) {
            rep = std::move(neg);
            for (int col = 0; col < h.u.cols(); ++col)
                h.u.at(h.kept[i], col) = -h.u.at(h.kept[i], col);
        }
        h.representatives.push_back(std::move(rep));
    }
    return h;
}

struct Classification {
    bool is_cocycle = false;
    // first tuple where the coboundary is nonzero, with its value
    std::optional<std::pair<std::vector<int>, Elem>> cocycle_defect;
    bool is_coboundary = false;
    std::optional<Cochain> preimage;              // d(preimage) = f when coboundary
    std::optional<std::vector<i64>> class_coords; // nonzero certificate otherwise
};

inline Classification classify_cochain(const CohomologyGroup& h, const Cochain& f) {
    if (f.degree != h.degree)
        throw ValidationError("bad-degree", "cochain degree does not match the cohomology group");
    Classification out;
    Cochain df = coboundary(f);
    out.is_cocycle = df.is_zero();
    if (!out.is_cocycle) {
        const i64 go = f.module().group().order();
        for (size_t t = 0; t < df.values.size(); ++t)
            if (!df.mod->carrier.is_zero(df.values[t])) {
                out.cocycle_defect = {tuple_decode(go, f.degree + 1, static_cast<i64>(t)),
                                      df.values[t]};
                break;
            }
        return out;
    }
    auto coords = h.coords(f);
    if (!coords) throw Error("internal", "cocycle table escaped the cocycle lattice");
    bool zero = true;
    for (i64 c : *coords) zero = zero && c == 0;
    out.is_coboundary = zero;
    if (!zero) {
        out.class_coords = *coords;
        return out;
    }
    if (h.degree > 0) {
        std::vector<i64> flat = f.flatten();
        auto w = h.preimage_solver->solve(std::vector<Int>(flat.begin(), flat.end()));
        if (!w) throw Error("internal", "coboundary without preimage");
        const GModule& m = f.module();
        const i64 prev_tuples = tuple_count(m.group().order(), h.degree - 1);
        std::vector<i64> gflat(prev_tuples * m.carrier.rank());
        for (size_t i = 0; i < gflat.size(); ++i) {
            i64 mod = m.carrier.moduli[i % m.carrier.rank()];
            Int r = (*w)[i] % mod;
            if (r < 0) r += mod;
            gflat[i] = static_cast<i64>(r);
        }
        out.preimage = cochain_from_flat(m, h.degree - 1, gflat);
    }
    return out;
}

/// All 1-cocycles (crossed homomorphisms), sorted by value table.
inline std::vector<Cochain> crossed_homomorphisms(const GModule& m, i64 max_count = 10000) {
    Subgroup z1 = subgroup_from_lattice(cochain_space(m, 1), kernel_lattice(coboundary_map(m, 1)));
    const i64 count = z1.group.order();
    if (count > max_count)
        throw SizeError("Z^1 has " + std::to_string(count) + " elements, beyond the cap of " +
                        std::to_string(max_count));
    std::vector<Cochain> out;
    for (i64 i = 0; i < count; ++i) {
        Elem flat = z1.embed.apply(z1.group.element(i));
        out.push_back(cochain_from_flat(m, 1, flat));
    }
    std::sort(out.begin(), out.end(),
              [](const Cochain& a, const Cochain& b) { return a.flatten() < b.flatten(); });
    return out;
}

/// Pullback/pushforward of a class along a group hom phi: G' -> G and a
/// compatible module map psi: A -> A' (g'.psi(a) = psi(phi(g').a)).
inline CohomologyClass change_of_groups(const GroupHom& phi, const LinMap& psi,
                                        const CohomologyClass& cls,
                                        const CohomologyGroup& dst) {
    const CohomologyGroup& src = *cls.group;
    const GModule& sm = *src.mod;
    const GModule& dm = *dst.mod;
    if (src.degree != dst.degree)
        throw ValidationError("bad-degree", "source and target degrees differ");
    if (auto w = phi.defect())
        throw ValidationError("invalid-hom", "phi is not a homomorphism at the pair (" +
                                                 phi.src->elements[w->first] + ", " +
                                                 phi.src->elements[w->second] + ")");
    if (!psi.well_defined())
        throw ValidationError("invalid-module-map", "psi does not respect the carrier relations");
    // Compatibility on carrier generators suffices by linearity.
    for (int gp = 0; gp < phi.src->order(); ++gp)
        for (int j = 0; j < sm.carrier.rank(); ++j) {
            Elem a = sm.carrier.zero();
            a[j] = mod_reduce(1, sm.carrier.moduli[j]);
            Elem lhs = dm.act_on(gp, psi.apply(a));
            Elem rhs = psi.apply(sm.act_on(phi.apply(gp), a));
            if (lhs != rhs)
                throw ValidationError("incompatible-maps",
                                      "compatibility fails at (g', a) = (" +
                                          phi.src->elements[gp] + ", generator " +
                                          std::to_string(j) + " of the carrier)");
        }

    Cochain f = cls.to_cocycle();
    const i64 go = phi.src->order();
    Cochain out = zero_cochain(dm, src.degree);
    for (size_t idx = 0; idx < out.values.size(); ++idx) {
        std::vector<int> t = tuple_decode(go, src.degree, static_cast<i64>(idx));
        for (int& s : t) s = phi.apply(s);
        out.values[idx] = psi.apply(f(t));
    }
    auto coords = dst.coords(out);
    if (!coords) throw Error("internal", "pulled-back cocycle is not a cocycle");
    return CohomologyClass{&dst, *coords};
}

/// Replaces a cocycle by the cohomologous normalized one (zero on tuples
/// containing the identity). Degree-1 cocycles are already normalized.
inline Cochain normalize_cocycle(const Cochain& f) {
    if (!coboundary(f).is_zero())
        throw ValidationError("not-a-cocycle", "normalization needs a cocycle");
    if (f.degree == 1) return f;
    if (f.degree != 2)
        throw ValidationError("bad-degree", "normalization implemented for degrees 1 and 2");
    const GModule& m = f.module();
    Cochain g = zero_cochain(m, 1);
    const Elem a = f({m.group().identity, m.group().identity});
    for (auto& v : g.values) v = a;
    return cochain_sub(f, coboundary(g));
}

/// Quotient of a module by an action-invariant sublattice of its carrier.
struct ModuleQuotient {
    GModule module;
    Quotient q; // proj: carrier -> quotient carrier, plus a set-section
};

inline ModuleQuotient quotient_module(const GModule& m, const IMat& lattice_gens) {
    Quotient q = quotient_by_lattice(m.carrier, lattice_gens);
    // Invariance of the sublattice under every group element; without it the
    // induced action would depend on the choice of lifts.
    IMat basis = hermite_basis(lattice_gens.hcat(IMat::diagonal(m.carrier.moduli)));
    IntSolver bs(basis);
    for (int s = 0; s < m.group().order(); ++s)
        for (int j = 0; j < basis.cols(); ++j) {
            std::vector<Int> img(m.carrier.rank());
            for (int r = 0; r < m.carrier.rank(); ++r) {
                Int acc = 0;
                for (int cc = 0; cc < m.carrier.rank(); ++cc)
                    acc += Int(m.act[s][r][cc]) * basis.at(cc, j);
                img[r] = acc;
            }
            if (!bs.solve(img))
                throw ValidationError("not-invariant",
                                      "the sublattice is not preserved by the action of " +
                                          m.group().elements[s]);
        }

    std::vector<ActionMatrix> acts(m.group().order());
    const int qr = q.group.rank();
    for (int s = 0; s < m.group().order(); ++s) {
        acts[s].assign(qr, std::vector<i64>(qr, 0));
        for (int j = 0; j < qr; ++j) {
            Elem e = q.group.zero();
            e[j] = mod_reduce(1, q.group.moduli[j]);
            Elem img = q.proj.apply(m.act_on(s, q.lift(e)));
            for (int r = 0; r < qr; ++r) acts[s][r][j] = img[r];
        }
    }
    ModuleQuotient out;
    out.module = module_from_matrices(m.group(), q.group, std::move(acts));
    out.q = std::move(q);
    return out;
}

/// The induced module I(A) of all functions G -> A with (s.f)(t) = s.f(s^-1 t),
/// the embedding of A as the constant functions, and the quotient U(A).
struct InducedModule {
    GModule induced;  // I(A)
    LinMap embed;     // A -> I(A)
    GModule quotient; // U(A) = I(A)/A
    Quotient q;       // proj : I(A) -> U(A) with set-section
};

inline InducedModule induced_module(const GModule& m, i64 max_order = 1'000'000) {
    const FiniteGroup& g = m.group();
    const int k = m.carrier.rank();
    Int size = 1;
    for (int t = 0; t < g.order(); ++t) size *= m.carrier.order();
    if (size > max_order)
        throw SizeError("|A|^|G| = " + size.str() + " exceeds the cap of " +
                        std::to_string(max_order));

    InducedModule out;
    FiniteAbelianGroup carrier = direct_power(m.carrier, g.order());
    std::vector<ActionMatrix> acts(g.order());
    for (int s = 0; s < g.order(); ++s) {
        acts[s].assign(carrier.rank(), std::vector<i64>(carrier.rank(), 0));
        for (int t = 0; t < g.order(); ++t) {
            int src_block = g.mul(g.inv(s), t);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) acts[s][t * k + r][src_block * k + c] = m.act[s][r][c];
        }
    }
    out.induced = module_from_matrices(g, carrier, std::move(acts));
    out.embed = LinMap::zero(m.carrier, out.induced.carrier);
    for (int t = 0; t < g.order(); ++t)
        for (int r = 0; r < k; ++r)
            out.embed.m[t * k + r][r] = mod_reduce(1, m.carrier.moduli[r]);

    ModuleQuotient mq = quotient_module(out.induced, image_lattice(out.embed));
    out.quotient = std::move(mq.module);
    out.q = std::move(mq.q);
    return out;
}

} // namespace coho
