#include <catch2/catch_amalgamated.hpp>

#include "coho/lie.hpp"

#include <string>
#include <vector>

using namespace coho;

namespace {

LieAlgebra abelian(int dim) { return lie_algebra_from_table(dim, {}); }

// Basis h = 0, e = 1, f = 2 with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
LieAlgebra sl2() {
    return lie_algebra_from_table(3, {
                                         {{0, 1}, {Rat(0), Rat(2), Rat(0)}},
                                         {{0, 2}, {Rat(0), Rat(0), Rat(-2)}},
                                         {{1, 2}, {Rat(1), Rat(0), Rat(0)}},
                                     });
}

// Basis x = 0, y = 1, z = 2 with [x,y] = z, z central.
LieAlgebra heisenberg() {
    return lie_algebra_from_table(3, {{{0, 1}, {Rat(0), Rat(0), Rat(1)}}});
}

RMat matmul(const RMat& a, const RMat& b) {
    RMat out(a.size(), std::vector<Rat>(b.empty() ? 0 : b[0].size(), Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

bool is_zero(const RMat& a) {
    for (const auto& row : a)
        for (const Rat& v : row)
            if (v != 0) return false;
    return true;
}

bool is_zero(const std::vector<Rat>& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

std::vector<Rat> matvec(const RMat& a, const std::vector<Rat>& v) {
    std::vector<Rat> out(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

std::vector<int> all_dims(const LieAlgebra& l, const LieModule& v) {
    std::vector<int> dims;
    for (int n = 0; n <= l.dim; ++n) dims.push_back(ce_cohomology(l, v, n).dim);
    return dims;
}

// Independent count of module invariants: the joint kernel of the action.
int invariants_dim(const LieModule& v) {
    RMat stacked;
    for (const RMat& m : v.rep)
        for (const auto& row : m) stacked.push_back(row);
    if (stacked.empty()) return v.dim;
    return v.dim - rational_linalg::rank(stacked);
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("structure constant validation reports witnesses") {
    SECTION("antisymmetry failure names the offending pair") {
        std::vector constants(2, std::vector(2, std::vector<Rat>(2, Rat(0))));
        constants[0][1][0] = 1; // mirror entry left at zero
        try {
            build_lie_algebra(2, constants);
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(e.kind() == "not-antisymmetric");
            CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
        }
    }
    SECTION("Jacobi failure names the offending triple") {
        // [e0,e1] = e0 and [e0,e2] = e1 leave [e2,[e0,e1]] = -e1 unbalanced.
        try {
            lie_algebra_from_table(3, {
                                          {{0, 1}, {Rat(1), Rat(0), Rat(0)}},
                                          {{0, 2}, {Rat(0), Rat(1), Rat(0)}},
                                      });
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(e.kind() == "jacobi-failure");
            CHECK(std::string(e.what()).find("(0, 1, 2)") != std::string::npos);
        }
    }
    SECTION("shape problems are rejected") {
        std::vector bad(1, std::vector(1, std::vector<Rat>(2, Rat(0))));
        CHECK_THROWS_AS(build_lie_algebra(1, bad), ValidationError);
        CHECK_THROWS_AS(build_lie_algebra(2, {}), ValidationError);
        CHECK_THROWS_AS(build_lie_algebra(kLieDimCap + 1, {}), SizeError);
    }
}

TEST_CASE("module validation checks the bracket relation on basis pairs") {
    LieAlgebra h = heisenberg();
    SECTION("a genuine representation passes") {
        // x acts as E12, everything else as zero; [x,y] = z acts as zero. OK.
        RMat e12 = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
        RMat zero = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
        LieModule v = build_lie_module(h, 2, {e12, zero, zero});
        CHECK(v.dim == 2);
    }
    SECTION("a broken representation is rejected with the witness pair") {
        // Weyl-style matrices for x, y but z acting as zero: [rho(x),rho(y)] != 0.
        RMat e12 = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
        RMat e21 = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};
        RMat zero = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
        try {
            build_lie_module(h, 2, {e12, e21, zero});
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(e.kind() == "not-a-representation");
            CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
        }
    }
    SECTION("shape problems are rejected") {
        CHECK_THROWS_AS(build_lie_module(h, 2, {}), ValidationError);
        RMat tall = {{Rat(0), Rat(0)}};
        CHECK_THROWS_AS(build_lie_module(h, 2, {tall, tall, tall}), ValidationError);
    }
    SECTION("modules cannot cross between algebras") {
        LieAlgebra a = abelian(3);
        LieModule v = trivial_lie_module(h, 1);
        CHECK_THROWS_AS(ce_cohomology(a, v, 0), ValidationError);
        try {
            ce_differential(a, v, 0);
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(e.kind() == "mismatched-algebra");
        }
    }
}

TEST_CASE("two-dimensional abelian algebra has Betti numbers 1, 2, 1") {
    LieAlgebra l = abelian(2);
    LieModule v = trivial_lie_module(l, 1);
    CHECK(all_dims(l, v) == std::vector<int>{1, 2, 1});
    // Every differential vanishes, so the representatives are unit vectors.
    CECohomology h1 = ce_cohomology(l, v, 1);
    REQUIRE(h1.representatives.size() == 2);
    CHECK(h1.representatives[0] == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK(h1.representatives[1] == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(ce_cohomology(l, v, 2).representatives == std::vector<std::vector<Rat>>{{Rat(1)}});
}

TEST_CASE("sl2 with trivial coefficients vanishes in degrees one and two") {
    LieAlgebra l = sl2();
    LieModule v = trivial_lie_module(l, 1);
    CHECK(all_dims(l, v) == std::vector<int>{1, 0, 0, 1});
}

TEST_CASE("Heisenberg algebra has Betti numbers 1, 2, 2, 1") {
    LieAlgebra l = heisenberg();
    LieModule v = trivial_lie_module(l, 1);
    CHECK(all_dims(l, v) == std::vector<int>{1, 2, 2, 1});

    // Degree one: the dual vectors of x and y survive; the dual of z = [x,y]
    // is not a cocycle.
    CECohomology h1 = ce_cohomology(l, v, 1);
    REQUIRE(h1.representatives.size() == 2);
    CHECK(h1.representatives[0] == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
    CHECK(h1.representatives[1] == std::vector<Rat>{Rat(0), Rat(1), Rat(0)});

    // Degree two: the basis is dual to {x^y, x^z, y^z}; dual-of-(x^y) is the
    // boundary of dual-of-z, leaving the two wedge duals that involve z.
    CECohomology h2 = ce_cohomology(l, v, 2);
    REQUIRE(h2.representatives.size() == 2);
    CHECK(h2.representatives[0] == std::vector<Rat>{Rat(0), Rat(1), Rat(0)});
    CHECK(h2.representatives[1] == std::vector<Rat>{Rat(0), Rat(0), Rat(1)});

    // Scaling the bracket by a non-integer rational changes nothing.
    LieAlgebra half = lie_algebra_from_table(
        3, {{{0, 1}, {Rat(0), Rat(0), Rat(1, 2)}}});
    LieModule vh = trivial_lie_module(half, 1);
    CHECK(all_dims(half, vh) == std::vector<int>{1, 2, 2, 1});
}

TEST_CASE("sl2 with its natural module is acyclic") {
    LieAlgebra l = sl2();
    RMat rho_h = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
    RMat rho_e = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    RMat rho_f = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};
    LieModule v = build_lie_module(l, 2, {rho_h, rho_e, rho_f});
    CHECK(all_dims(l, v) == std::vector<int>{0, 0, 0, 0});
    CHECK(invariants_dim(v) == 0);
}

TEST_CASE("composing consecutive differentials gives the zero matrix") {
    LieAlgebra a2 = abelian(2);
    LieAlgebra s = sl2();
    LieAlgebra h = heisenberg();
    RMat e12 = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    RMat zero2 = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
    RMat rho_h = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
    RMat rho_e = e12;
    RMat rho_f = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};

    std::vector<std::pair<const LieAlgebra*, LieModule>> cases;
    cases.emplace_back(&a2, trivial_lie_module(a2, 1));
    cases.emplace_back(&s, trivial_lie_module(s, 1));
    cases.emplace_back(&s, build_lie_module(s, 2, {rho_h, rho_e, rho_f}));
    cases.emplace_back(&h, trivial_lie_module(h, 1));
    cases.emplace_back(&h, build_lie_module(h, 2, {e12, zero2, zero2}));

    for (const auto& [l, v] : cases) {
        for (int n = 0; n + 1 <= l->dim; ++n) {
            RMat dn = ce_differential(*l, v, n);
            RMat dn1 = ce_differential(*l, v, n + 1);
            INFO("algebra dim " << l->dim << ", module dim " << v.dim << ", degree " << n);
            CHECK(is_zero(matmul(dn1, dn)));
        }
    }
}

TEST_CASE("Euler characteristic and degree zero match rank-nullity predictions") {
    LieAlgebra s = sl2();
    LieAlgebra h = heisenberg();
    RMat e12 = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    RMat zero2 = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};

    std::vector<std::pair<const LieAlgebra*, LieModule>> cases;
    cases.emplace_back(&s, trivial_lie_module(s, 1));
    cases.emplace_back(&h, trivial_lie_module(h, 1));
    cases.emplace_back(&h, build_lie_module(h, 2, {e12, zero2, zero2}));

    for (const auto& [l, v] : cases) {
        long long euler = 0;
        long long expected = 0;
        for (int n = 0; n <= l->dim; ++n) {
            int sign = (n % 2) ? -1 : 1;
            euler += sign * ce_cohomology(*l, v, n).dim;
            expected += sign * binom(l->dim, n) * v.dim;
        }
        CHECK(euler == expected);
        CHECK(expected == 0); // (1 - 1)^dim, dim >= 1
        CHECK(ce_cohomology(*l, v, 0).dim == invariants_dim(v));
    }
    // The partially-trivial Heisenberg module has a one-dimensional fixed space.
    LieModule w = build_lie_module(h, 2, {e12, zero2, zero2});
    CHECK(invariants_dim(w) == 1);
}

TEST_CASE("representatives are cocycles and independent modulo boundaries") {
    LieAlgebra h = heisenberg();
    RMat e12 = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    RMat zero2 = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
    LieModule v = build_lie_module(h, 2, {e12, zero2, zero2});

    for (int n = 0; n <= h.dim; ++n) {
        CECohomology hn = ce_cohomology(h, v, n);
        CHECK(static_cast<int>(hn.representatives.size()) == hn.dim);
        if (n < h.dim) {
            RMat dn = ce_differential(h, v, n);
            for (const auto& rep : hn.representatives) CHECK(is_zero(matvec(dn, rep)));
        }
        if (n > 0 && hn.dim > 0) {
            // Stack boundary columns and representatives as rows: the rank
            // must grow by exactly one per representative.
            RMat prev = ce_differential(h, v, n - 1);
            RMat rows;
            if (!prev.empty())
                for (size_t j = 0; j < prev[0].size(); ++j) {
                    std::vector<Rat> col(prev.size());
                    for (size_t i = 0; i < prev.size(); ++i) col[i] = prev[i][j];
                    rows.push_back(std::move(col));
                }
            int base = rows.empty() ? 0 : rational_linalg::rank(rows);
            for (const auto& rep : hn.representatives) rows.push_back(rep);
            CHECK(rational_linalg::rank(rows) == base + hn.dim);
        }
    }
}

TEST_CASE("degree bounds are enforced") {
    LieAlgebra l = abelian(2);
    LieModule v = trivial_lie_module(l, 1);
    try {
        ce_cohomology(l, v, 3);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == "bad-degree");
    }
    CHECK_THROWS_AS(ce_cohomology(l, v, -1), ValidationError);
    CHECK(ce_cohomology(l, v, 2).dim == 1); // top degree is fine
}

TEST_CASE("zero-dimensional algebra leaves the module untouched") {
    LieAlgebra l = abelian(0);
    LieModule v = trivial_lie_module(l, 2);
    CECohomology h0 = ce_cohomology(l, v, 0);
    CHECK(h0.dim == 2);
    CHECK(h0.representatives.size() == 2);
}
