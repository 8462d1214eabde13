#include <catch2/catch_amalgamated.hpp>

#include "coho/extensions.hpp" // model groups for nonabelian coverage
#include "coho/haar.hpp"

#include <random>

using namespace coho;

namespace {

GroupFunction random_function(std::mt19937_64& rng, const FiniteGroup& g) {
    std::vector<Rat> v(g.order());
    for (auto& x : v) x = Rat(rand_below(rng, 7), 1 + rand_below(rng, 3));
    return group_function(g, std::move(v));
}

GroupFunction random_nonzero(std::mt19937_64& rng, const FiniteGroup& g) {
    GroupFunction f = random_function(rng, g);
    f.values[static_cast<size_t>(rand_below(rng, g.order()))] += 1;
    return f;
}

/// Independent oracle for the covering optimum: enumerate every vertex of
/// {c >= 0, sum_u c_u g(ux) >= f(x)} as the solution of n active
/// constraints, keep the feasible ones, and take the smallest cost.
Rat covering_by_vertex_enumeration(const GroupFunction& f, const GroupFunction& g) {
    const FiniteGroup& grp = f.group();
    const int n = grp.order();
    // Rows: n covering constraints then n sign constraints.
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    for (int x = 0; x < n; ++x) {
        std::vector<Rat> r(n);
        for (int u = 0; u < n; ++u) r[u] = g.values[grp.mul(u, x)];
        rows.push_back(r);
        rhs.push_back(f.values[x]);
    }
    for (int u = 0; u < n; ++u) {
        std::vector<Rat> r(n, Rat(0));
        r[u] = 1;
        rows.push_back(r);
        rhs.push_back(Rat(0));
    }

    std::optional<Rat> best;
    std::vector<int> pick(n);
    std::function<void(int, int)> rec = [&](int from, int depth) {
        if (depth == n) {
            // Solve the active system by Gaussian elimination.
            std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) a[i][j] = rows[pick[i]][j];
                a[i][n] = rhs[pick[i]];
            }
            for (int col = 0; col < n; ++col) {
                int p = -1;
                for (int r = col; r < n; ++r)
                    if (a[r][col] != 0) {
                        p = r;
                        break;
                    }
                if (p < 0) return; // singular: not a vertex
                std::swap(a[col], a[p]);
                for (int r = 0; r < n; ++r) {
                    if (r == col || a[r][col] == 0) continue;
                    Rat factor = a[r][col] / a[col][col];
                    for (int j = col; j <= n; ++j) a[r][j] -= factor * a[col][j];
                }
            }
            std::vector<Rat> c(n);
            for (int i = 0; i < n; ++i) c[i] = a[i][n] / a[i][i];
            for (int i = 0; i < n; ++i)
                if (c[i] < 0) return;
            for (int x = 0; x < n; ++x) {
                Rat cover = 0;
                for (int u = 0; u < n; ++u) cover += c[u] * rows[x][u];
                if (cover < rhs[x]) return;
            }
            Rat cost = 0;
            for (const Rat& v : c) cost += v;
            if (!best || cost < *best) best = cost;
            return;
        }
        for (int i = from; i < static_cast<int>(rows.size()); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    REQUIRE(best.has_value());
    return *best;
}

} // namespace

TEST_CASE("simplex on a hand-solved program") {
    // max 3x + 2y subject to x + y <= 4, x <= 2, y <= 3.
    std::vector<std::vector<Rat>> a = {{1, 1}, {1, 0}, {0, 1}};
    SimplexResult s = simplex_max(a, {Rat(4), Rat(2), Rat(3)}, {Rat(3), Rat(2)});
    CHECK(s.objective == 10);
    CHECK(s.solution == std::vector<Rat>{Rat(2), Rat(2)});
    // Shadow prices certify the optimum: 4*2 + 2*1 + 3*0 = 10.
    Rat paid = 0;
    std::vector<Rat> b = {Rat(4), Rat(2), Rat(3)};
    for (int i = 0; i < 3; ++i) paid += s.duals[i] * b[i];
    CHECK(paid == s.objective);

    CHECK_THROWS_AS(simplex_max({{Rat(0)}}, {Rat(1)}, {Rat(1)}), Error); // unbounded
}

TEST_CASE("covering integral on pinned examples") {
    FiniteGroup z5 = cyclic_group(5);
    HaarReport constants = approx_integral(constant_function(z5, 3), constant_function(z5, 2));
    CHECK(constants.value == Rat(3) / 2);
    CHECK(constants.feasible);
    CHECK(constants.certified);

    FiniteGroup z4 = cyclic_group(4);
    GroupFunction f = group_function(z4, {Rat(1), Rat(1) / 2, Rat(0), Rat(3)});
    CHECK(approx_integral(f, point_mass(z4)).value == f.sum());
    CHECK(approx_integral(group_function(z4, std::vector<Rat>(4, Rat(0))), f).value == 0);

    try {
        approx_integral(f, group_function(z4, std::vector<Rat>(4, Rat(0))));
        FAIL("expected an error for a zero reference");
    } catch (const Error& e) {
        CHECK(std::string(e.kind()) == "undefined-relative-integral");
    }
    FiniteGroup z5b = cyclic_group(5);
    CHECK_THROWS_AS(approx_integral(f, constant_function(z5b, 1)), ValidationError);
}

TEST_CASE("covering integral matches vertex enumeration") {
    std::mt19937_64 rng(404);
    for (const FiniteGroup& g : {cyclic_group(3), cyclic_group(4), product_group({2, 2})}) {
        for (int trial = 0; trial < 8; ++trial) {
            GroupFunction f = random_function(rng, g);
            GroupFunction h = random_nonzero(rng, g);
            CAPTURE(trial, g.order());
            CHECK(approx_integral(f, h).value == covering_by_vertex_enumeration(f, h));
        }
    }
}

TEST_CASE("covering cost is translation invariant and transitive") {
    std::mt19937_64 rng(405);
    FiniteGroup z6 = cyclic_group(6);
    for (int trial = 0; trial < 10; ++trial) {
        GroupFunction f = random_function(rng, z6);
        GroupFunction g = random_nonzero(rng, z6);
        int x = static_cast<int>(rand_below(rng, 6));
        CHECK(approx_integral(translate(f, x), g).value == approx_integral(f, g).value);
    }
    for (const FiniteGroup& g : {cyclic_group(6), dihedral_group(4)}) {
        for (int trial = 0; trial < 10; ++trial) {
            GroupFunction f = random_nonzero(rng, g);
            GroupFunction h = random_nonzero(rng, g);
            GroupFunction k = random_nonzero(rng, g);
            Rat fg = approx_integral(f, h).value;
            Rat gh = approx_integral(h, k).value;
            Rat fh = approx_integral(f, k).value;
            CHECK(fg * gh >= fh);
        }
    }
}

TEST_CASE("relative integral properties hold exactly") {
    std::mt19937_64 rng(406);
    FiniteGroup z4 = cyclic_group(4);
    GroupFunction gref = constant_function(z4, 1);
    for (int trial = 0; trial < 10; ++trial) {
        GroupFunction f = random_nonzero(rng, z4);
        GroupFunction phi = random_nonzero(rng, z4);
        RelativeIntegralReport rep = relative_integral(f, phi, gref);
        CHECK(rep.value == rep.f_phi / rep.gref_phi);
        CHECK(rep.f_nonzero);
        CHECK(rep.bounds_ok);
        CHECK(rep.translation_invariant);
        CHECK(rep.homogeneous);
        CHECK(relative_integral_value(function_scale(3, f), phi, gref) == 3 * rep.value);
        // Subadditivity: the signed gap is never negative.
        GroupFunction f2 = random_function(rng, z4);
        CHECK(near_additivity_gap(f, f2, phi, gref) >= 0);
    }
    // Point-mass reference: exact additivity and the counting formula.
    GroupFunction de = point_mass(z4);
    for (int trial = 0; trial < 5; ++trial) {
        GroupFunction f1 = random_function(rng, z4);
        GroupFunction f2 = random_function(rng, z4);
        CHECK(relative_integral_value(f1, de, gref) == f1.sum() / gref.sum());
        CHECK(near_additivity_gap(f1, f2, de, gref) == 0);
    }
    GroupFunction zero = group_function(z4, std::vector<Rat>(4, Rat(0)));
    RelativeIntegralReport zrep = relative_integral(zero, de, gref);
    CHECK(zrep.value == 0);
    CHECK(zrep.bounds_ok);
    CHECK_THROWS_AS(relative_integral(zero, zero, gref), Error);
    CHECK_THROWS_AS(relative_integral(zero, de, zero), Error);
}

TEST_CASE("near-additivity gaps shrink to zero with the support") {
    std::mt19937_64 rng(407);
    FiniteGroup z6 = cyclic_group(6);
    GroupFunction gref = constant_function(z6, 1);
    GroupFunction f1 = random_nonzero(rng, z6);
    GroupFunction f2 = random_nonzero(rng, z6);
    std::vector<Rat> gaps = near_additivity_study(f1, f2, gref, {{0, 1, 5}, {0}});
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0] >= 0);
    CHECK(gaps[1] == 0);
    CHECK(gaps[0] >= gaps[1]);
}

TEST_CASE("invariant integral certificate") {
    FiniteGroup z5 = cyclic_group(5);
    InvariantIntegralReport rep = invariant_integral(z5, constant_function(z5, 1));
    CHECK(rep.positive);
    CHECK(rep.left_invariant);
    CHECK(rep.additive);
    CHECK(rep.homogeneous);
    CHECK(rep.nonzero);
    GroupFunction f = group_function(z5, {Rat(1), Rat(2), Rat(0), Rat(1) / 2, Rat(3)});
    CHECK(rep.functional.apply(f) == f.sum() / 5);

    // A skewed reference rescales the functional but keeps every property.
    FiniteGroup s3 = dihedral_group(3);
    GroupFunction skew = group_function(
        s3, {Rat(1), Rat(2), Rat(1) / 3, Rat(1), Rat(5), Rat(1) / 7});
    InvariantIntegralReport rep2 = invariant_integral(s3, skew);
    CHECK(rep2.positive);
    CHECK(rep2.left_invariant);
    CHECK(rep2.additive);
    CHECK(rep2.homogeneous);
    CHECK(rep2.functional.apply(constant_function(s3, 1)) == Rat(6) / skew.sum());
}

TEST_CASE("symmetric sets validate and enumerate") {
    FiniteGroup z6 = cyclic_group(6);
    CHECK_THROWS_AS(symmetric_set(z6, {1, 5}), ValidationError);  // identity missing
    CHECK_THROWS_AS(symmetric_set(z6, {0, 1}), ValidationError);  // inverse missing
    SymmetricSet m = symmetric_set(z6, {0, 5, 1});
    CHECK(m.members == std::vector<int>{0, 1, 5});

    std::vector<SymmetricSet> all = all_symmetric_sets(z6);
    CHECK(all.size() == 8); // orbits {3}, {1,5}, {2,4} are free
    for (const auto& s : all) CHECK(s.members[0] == 0);
}

TEST_CASE("overlap function and product set on pinned examples") {
    FiniteGroup z6 = cyclic_group(6);
    SymmetricSet whole = symmetric_set(z6, {0, 1, 2, 3, 4, 5});
    GroupFunction uw = overlap_function(whole);
    for (const Rat& v : uw.values) CHECK(v == 6);

    SymmetricSet point = symmetric_set(z6, {0});
    GroupFunction up = overlap_function(point);
    CHECK(up.values[0] == 1);
    for (int x = 1; x < 6; ++x) CHECK(up.values[x] == 0);
    ProductSetReport prep = product_set_check(point);
    CHECK(prep.product_set == std::vector<int>{0});
    CHECK(prep.support == std::vector<int>{0});

    SymmetricSet m = symmetric_set(z6, {0, 1, 5});
    GroupFunction u = overlap_function(m);
    CHECK(u.values[1] == 2); // {0,1,5} meets {1,2,0} in {0,1}
    CHECK(u.values[3] == 0); // {0,1,5} misses {3,4,2}
    ProductSetReport rep = product_set_check(m);
    CHECK(rep.product_set == std::vector<int>{0, 1, 2, 4, 5});
    CHECK(rep.overlap_at_identity == 3);
    CHECK(rep.support_in_product);
    CHECK(rep.identity_in_product);
}

TEST_CASE("product-set statement over every symmetric subset of small cyclic groups") {
    for (int n = 1; n <= 6; ++n) {
        FiniteGroup g = cyclic_group(n);
        for (const SymmetricSet& m : all_symmetric_sets(g)) {
            ProductSetReport rep = product_set_check(m);
            CHECK(rep.support_in_product);
            CHECK(rep.identity_in_product);
            CHECK(rep.overlap_at_identity == static_cast<i64>(m.members.size()));
            CHECK(rep.overlap_at_identity > 0);
        }
    }
    // Nonabelian sanity: the smallest symmetric generating situation.
    FiniteGroup s3 = dihedral_group(3);
    for (const SymmetricSet& m : all_symmetric_sets(s3)) {
        ProductSetReport rep = product_set_check(m);
        CHECK(rep.support_in_product);
        CHECK(rep.overlap_at_identity == static_cast<i64>(m.members.size()));
    }
}
