#include <catch2/catch_amalgamated.hpp>

#include "coho/extensions.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace coho;

namespace {

Cochain cochain_from_table(const GModule& m, int n, const oracle::Table& t) {
    Cochain f = zero_cochain(m, n);
    for (size_t i = 0; i < t.size(); ++i) f.values[i] = m.carrier.element(t[i]);
    return f;
}

Cochain random_one_cochain(std::mt19937_64& rng, const GModule& m) {
    Cochain c = zero_cochain(m, 1);
    for (auto& v : c.values)
        for (int j = 0; j < m.carrier.rank(); ++j) v[j] = rand_below(rng, m.carrier.moduli[j]);
    return c;
}

// Independent re-verification of an equivalence witness.
bool is_equivalence_map(const Extension& x1, const Extension& x2, const std::vector<int>& phi) {
    if (phi.size() != x1.e.elements.size()) return false;
    for (int p = 0; p < x1.e.order(); ++p)
        for (int q = 0; q < x1.e.order(); ++q)
            if (phi[x1.e.mul(p, q)] != x2.e.mul(phi[p], phi[q])) return false;
    for (size_t i = 0; i < x1.incl.size(); ++i)
        if (phi[x1.incl[i]] != x2.incl[i]) return false;
    for (int p = 0; p < x1.e.order(); ++p)
        if (x2.proj[phi[p]] != x1.proj[p]) return false;
    return std::set<int>(phi.begin(), phi.end()).size() == phi.size();
}

} // namespace

TEST_CASE("twisted product of the order-2 group by itself") {
    FiniteGroup z2 = cyclic_group(2);
    GModule m = trivial_module(z2, FiniteAbelianGroup{{2}});
    CohomologyGroup h2 = cohomology(m, 2);
    REQUIRE(h2.group.moduli == std::vector<i64>{2});

    Extension triv = build_extension(h2.combination({0}));
    Extension twist = build_extension(h2.combination({1}));
    REQUIRE(!extension_defect(triv));
    REQUIRE(!extension_defect(twist));
    REQUIRE(triv.e.order() == 4);
    CHECK(abstract_label(triv.e) == "Z/2 x Z/2");
    CHECK(abstract_label(twist.e) == "Z/4");

    // Cocycle recovery from the standard section is exact, not just
    // cohomologous.
    CHECK(cocycle_from_section(twist) == h2.combination({1}));
    CHECK(cocycle_from_section(triv) == h2.combination({0}));

    // The two classes give inequivalent extensions.
    CHECK(!equivalent(triv, twist));
    auto self = equivalent(twist, twist);
    REQUIRE(self.has_value());
    CHECK(is_equivalence_map(twist, twist, *self));
}

TEST_CASE("non-cocycles are rejected with a witness triple") {
    FiniteGroup z2 = cyclic_group(2);
    GModule m = trivial_module(z2, FiniteAbelianGroup{{2}});
    Cochain f = zero_cochain(m, 2);
    f.values[tuple_index(2, {0, 1})] = {1}; // d f != 0
    try {
        build_extension(f);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.kind()) == "not-a-cocycle");
        CHECK(std::string(e.what()).find("(") != std::string::npos);
    }
    CHECK_THROWS_AS(build_extension(zero_cochain(m, 1)), ValidationError);
}

TEST_CASE("round trip through a non-standard section stays in the class") {
    FiniteGroup z4 = cyclic_group(4);
    GModule m = trivial_module(z4, FiniteAbelianGroup{{2}});
    CohomologyGroup h2 = cohomology(m, 2);
    REQUIRE(h2.group.moduli == std::vector<i64>{2});

    Cochain f = h2.combination({1});
    Extension x = build_extension(f);
    REQUIRE(!extension_defect(x));

    // Shift one section value by an element of the embedded subgroup.
    std::vector<int> other = x.section;
    other[1] = x.e.mul(x.incl[1], x.section[1]);
    Cochain g = cocycle_from_section(x, other);
    CHECK(!(g == f));
    Classification cls = classify_cochain(h2, g);
    REQUIRE(cls.is_cocycle);
    CHECK(cls.class_coords == std::vector<i64>{1});

    // A non-section is rejected.
    std::vector<int> bad = x.section;
    std::swap(bad[0], bad[1]);
    CHECK_THROWS_AS(cocycle_from_section(x, bad), ValidationError);
}

TEST_CASE("equivalence matches cohomologous-ness on every cocycle pair") {
    FiniteGroup z2 = cyclic_group(2);
    GModule m = trivial_module(z2, FiniteAbelianGroup{{2}});
    CohomologyGroup h2 = cohomology(m, 2);

    std::vector<oracle::Table> z = oracle::all_cocycle_tables(m, 2);
    REQUIRE(z.size() == 4);
    for (const auto& t1 : z)
        for (const auto& t2 : z) {
            Cochain f1 = cochain_from_table(m, 2, t1);
            Cochain f2 = cochain_from_table(m, 2, t2);
            Extension x1 = build_extension(f1);
            Extension x2 = build_extension(f2);
            REQUIRE(!extension_defect(x1));
            bool same_class =
                classify_cochain(h2, cochain_sub(f1, f2)).is_coboundary;
            auto phi = equivalent(x1, x2);
            REQUIRE(phi.has_value() == same_class);
            if (phi) CHECK(is_equivalence_map(x1, x2, *phi));
        }
}

TEST_CASE("coboundary shifts give equivalent extensions with a verified map") {
    FiniteGroup z4 = cyclic_group(4);
    GModule m = trivial_module(z4, FiniteAbelianGroup{{4}});
    CohomologyGroup h2 = cohomology(m, 2);
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 5; ++trial) {
        Cochain f = h2.combination(h2.group.element(trial % h2.order()));
        Cochain g = random_one_cochain(rng, m);
        Cochain shifted = cochain_add(f, coboundary(g));
        Extension x1 = build_extension(f);
        Extension x2 = build_extension(shifted);
        auto phi = equivalent(x1, x2);
        REQUIRE(phi.has_value());
        CHECK(is_equivalence_map(x1, x2, *phi));
    }
}

TEST_CASE("catalogue for the order-3 group distinguishes equivalence from isomorphism") {
    FiniteGroup z3 = cyclic_group(3);
    GModule m = trivial_module(z3, FiniteAbelianGroup{{3}});
    ExtensionCatalog cat = classify_extensions(m);
    REQUIRE(cat.items.size() == 3);
    CHECK(cat.pairwise_inequivalent);

    std::multiset<std::string> labels;
    for (const auto& it : cat.items) labels.insert(it.label);
    CHECK(labels == std::multiset<std::string>{"Z/3 x Z/3", "Z/9", "Z/9"});

    // The two nontrivial classes give isomorphic total groups but
    // inequivalent extensions.
    const Extension& a = cat.items[1].ext;
    const Extension& b = cat.items[2].ext;
    CHECK(find_isomorphism(a.e, b.e).has_value());
    CHECK(!equivalent(a, b));
}

TEST_CASE("semidirect product from a trivial class: the symmetric group on 3 letters") {
    FiniteGroup z2 = cyclic_group(2);
    GModule neg = module_from_matrices(z2, FiniteAbelianGroup{{3}}, {{{1}}, {{2}}});
    ExtensionCatalog cat = classify_extensions(neg);
    REQUIRE(cat.items.size() == 1); // coprime orders: H^2 = 0
    CHECK(cat.items[0].label == "Dih3");
    REQUIRE(!extension_defect(cat.items[0].ext));
    CHECK(!cat.items[0].ext.e.is_abelian());
}

TEST_CASE("the eight central extensions of the Klein four group by Z/2") {
    FiniteGroup v4 = product_group({2, 2});
    GModule m = trivial_module(v4, FiniteAbelianGroup{{2}});
    ExtensionCatalog cat = classify_extensions(m);
    REQUIRE(cat.items.size() == 8);
    CHECK(cat.pairwise_inequivalent);

    std::multiset<std::string> labels;
    for (const auto& it : cat.items) {
        REQUIRE(!extension_defect(it.ext));
        labels.insert(it.label);
    }
    CHECK(labels == std::multiset<std::string>{"Dih4", "Dih4", "Dih4", "Q8", "Z/2 x Z/2 x Z/2",
                                               "Z/2 x Z/4", "Z/2 x Z/4", "Z/2 x Z/4"});
}

TEST_CASE("abstract labels of the model groups") {
    CHECK(abstract_label(cyclic_group(1)) == "Z/1");
    CHECK(abstract_label(cyclic_group(6)) == "Z/6");
    CHECK(abstract_label(product_group({2, 3})) == "Z/6"); // normalized
    CHECK(abstract_label(product_group({2, 4})) == "Z/2 x Z/4");
    CHECK(abstract_label(dihedral_group(3)) == "Dih3");
    CHECK(abstract_label(dihedral_group(4)) == "Dih4");
    CHECK(abstract_label(dicyclic_group(2)) == "Q8");
    CHECK(abstract_label(dicyclic_group(3)) == "Dic3");
    CHECK(abstract_label(alternating4_group()) == "A4");

    CHECK(!find_isomorphism(cyclic_group(4), product_group({2, 2})));
    auto iso = find_isomorphism(product_group({2, 3}), cyclic_group(6));
    REQUIRE(iso.has_value());
}

TEST_CASE("the alternating group appears as a semidirect product catalogue entry") {
    // Z/3 cycling the Klein four group: e1 -> e2 -> e1 + e2.
    FiniteGroup z3 = cyclic_group(3);
    ActionMatrix id{{1, 0}, {0, 1}};
    ActionMatrix rot{{0, 1}, {1, 1}};
    ActionMatrix rot2{{1, 1}, {1, 0}};
    GModule m = module_from_matrices(z3, FiniteAbelianGroup{{2, 2}}, {id, rot, rot2});
    Extension x = build_extension(zero_cochain(m, 2));
    REQUIRE(!extension_defect(x));
    CHECK(abstract_label(x.e) == "A4");
}

TEST_CASE("the exhaustive equivalence search refuses oversized extensions") {
    FiniteGroup z9 = cyclic_group(9);
    GModule m = trivial_module(z9, FiniteAbelianGroup{{8}});
    Extension x = build_extension(zero_cochain(m, 2));
    REQUIRE(x.e.order() == 72);
    CHECK_THROWS_AS(equivalent(x, x), SizeError);
}

TEST_CASE("extension defects are detected") {
    FiniteGroup z2 = cyclic_group(2);
    GModule m = trivial_module(z2, FiniteAbelianGroup{{2}});
    CohomologyGroup h2 = cohomology(m, 2);
    Extension x = build_extension(h2.combination({1}));

    Extension bad = x;
    std::swap(bad.section[0], bad.section[1]);
    auto defect = extension_defect(bad);
    REQUIRE(defect.has_value());
    CHECK(defect->find("section") != std::string::npos);

    Extension bad2 = x;
    bad2.incl[1] = bad2.incl[0];
    CHECK(extension_defect(bad2).has_value());

    // A module action not realized by conjugation is flagged: pretend the
    // negation action while the table is the twisted abelian product.
    FiniteGroup z2b = cyclic_group(2);
    GModule neg = module_from_matrices(z2b, FiniteAbelianGroup{{4}}, {{{1}}, {{3}}});
    GModule triv = trivial_module(z2b, FiniteAbelianGroup{{4}});
    Extension y = build_extension(zero_cochain(triv, 2));
    Extension lie = y;
    lie.mod = &neg;
    auto mismatch = extension_defect(lie);
    REQUIRE(mismatch.has_value());
    CHECK(mismatch->find("action") != std::string::npos);
}
