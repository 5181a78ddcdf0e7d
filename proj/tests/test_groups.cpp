#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf/group.hpp"

#include <set>
#include <stdexcept>

using namespace qf;

namespace {

void check_group_axioms(const FiniteGroup& G) {
    int n = G.order;
    REQUIRE((int)G.mul.size() == n);
    for (int a = 0; a < n; ++a) {
        CHECK(G.op(G.identity, a) == a);
        CHECK(G.op(a, G.identity) == a);
        CHECK(G.op(a, G.inv[a]) == G.identity);
    }
    // associativity on a pseudo-random sample
    unsigned s = 99991;
    for (int t = 0; t < 200; ++t) {
        s = s * 1664525u + 1013904223u;
        int a = (s >> 8) % n, b = (s >> 16) % n, c = (s >> 4) % n;
        CHECK(G.op(G.op(a, b), c) == G.op(a, G.op(b, c)));
    }
    // classes partition the group
    std::set<int> seen;
    for (const auto& cls : G.classes)
        for (int g : cls) CHECK(seen.insert(g).second);
    CHECK((int)seen.size() == n);
    CHECK(G.classes[0] == std::vector<int>{G.identity});
}

}  // namespace

TEST_CASE("dihedral groups") {
    FiniteGroup D4 = build_dihedral(4);
    check_group_axioms(D4);
    CHECK(D4.order == 8);
    CHECK(D4.classes.size() == 5);
    CHECK(D4.gens.size() == 2);
    CHECK(D4.gen_order == 2);
    CHECK(D4.exponent() == 4);
    CHECK(D4.center().size() == 2);
    CHECK(D4.derived_subgroup().size() == 2);
    CHECK(!D4.abelian());
    // the generators are distinct reflections generating the whole group
    CHECK(D4.element_order(D4.gens[0]) == 2);
    CHECK(D4.element_order(D4.gens[1]) == 2);
    CHECK(D4.generated_by(D4.gens).size() == 8);
    // product of the two reflections is a full rotation
    CHECK(D4.element_order(D4.op(D4.gens[0], D4.gens[1])) == 4);

    FiniteGroup D6 = build_dihedral(6);
    check_group_axioms(D6);
    CHECK(D6.order == 12);
    CHECK(D6.classes.size() == 6);
    CHECK(D6.exponent() == 6);
    CHECK(D6.element_order(D6.op(D6.gens[0], D6.gens[1])) == 6);

    CHECK_THROWS_AS(build_dihedral(5), std::invalid_argument);
    CHECK_THROWS_AS(build_dihedral(2), std::invalid_argument);
}

TEST_CASE("heisenberg groups") {
    FiniteGroup H3 = build_heisenberg(3);
    check_group_axioms(H3);
    CHECK(H3.order == 27);
    CHECK(H3.classes.size() == 11);
    CHECK(H3.gen_order == 3);
    CHECK(H3.exponent() == 3);
    CHECK(H3.center().size() == 3);
    CHECK(H3.derived_subgroup().size() == 3);
    CHECK(H3.derived_subgroup() == H3.center());
    CHECK(H3.generated_by(H3.gens).size() == 27);
    // the generator commutator is central and nontrivial
    int c = H3.commutator(H3.gens[0], H3.gens[1]);
    CHECK(c != H3.identity);
    for (int g = 0; g < 27; ++g) CHECK(H3.op(c, g) == H3.op(g, c));

    FiniteGroup H2 = build_heisenberg(2);
    check_group_axioms(H2);
    CHECK(H2.order == 8);
    CHECK(H2.classes.size() == 5);
    CHECK(H2.exponent() == 4);

    FiniteGroup H5 = build_heisenberg(5);
    CHECK(H5.order == 125);
    CHECK(H5.exponent() == 5);

    CHECK_THROWS_AS(build_heisenberg(4), std::invalid_argument);
    CHECK_THROWS_AS(build_heisenberg(6), std::invalid_argument);
}

TEST_CASE("meta144") {
    FiniteGroup G = build_meta144();
    check_group_axioms(G);
    CHECK(G.order == 144);
    CHECK(G.classes.size() == 16);
    CHECK(G.gen_order == 3);
    CHECK(G.exponent() == 6);
    CHECK(G.center().size() == 1);
    CHECK(G.derived_subgroup().size() == 16);
    CHECK(G.generated_by(G.gens).size() == 144);
    // derived subgroup is elementary abelian of exponent 2
    for (int a : G.derived_subgroup()) {
        CHECK(G.op(a, a) == G.identity);
    }
    // coordinate encoding round trip
    for (int idx = 0; idx < 144; ++idx) {
        auto d = meta_decode(idx);
        CHECK(meta_encode(d[0], d[1], d[2]) == idx);
    }
    // generators have order 3 and act on the normal subgroup
    CHECK(G.element_order(G.gens[0]) == 3);
    CHECK(G.element_order(G.gens[1]) == 3);
}

TEST_CASE("abelian groups") {
    FiniteGroup A = build_abelian(2, 2);
    check_group_axioms(A);
    CHECK(A.order == 4);
    CHECK(A.abelian());
    CHECK(A.classes.size() == 4);
    CHECK(A.exponent() == 2);

    FiniteGroup B = build_abelian(3, 2);
    CHECK(B.order == 9);
    CHECK(B.exponent() == 3);
}

TEST_CASE("generator words reproduce every element") {
    for (auto spec : {"dihedral:4", "heisenberg:3", "abelian:2x2"}) {
        FiniteGroup G = parse_group_spec(spec);
        for (int g = 0; g < G.order; ++g) {
            auto w = G.word(g);
            int prod = G.identity;
            for (int letter : w) prod = G.op(prod, G.gens[letter]);
            CHECK(prod == g);
        }
        CHECK(G.word(G.identity).empty());
    }
}

TEST_CASE("exponent-sum coordinates form a homomorphism onto Z_K^2") {
    for (auto spec : {"dihedral:4", "dihedral:6", "heisenberg:3", "meta144"}) {
        FiniteGroup G = parse_group_spec(spec);
        int K = G.gen_order;
        auto cx = G.abel_coords(G.gens[0]);
        auto cy = G.abel_coords(G.gens[1]);
        REQUIRE(cx.has_value());
        CHECK(*cx == std::make_pair(1, 0));
        CHECK(*cy == std::make_pair(0, 1));
        unsigned s = 7;
        for (int t = 0; t < 200; ++t) {
            s = s * 1664525u + 1013904223u;
            int a = (s >> 9) % G.order, b = (s >> 17) % G.order;
            auto ca = G.abel_coords(a), cb = G.abel_coords(b), cab = G.abel_coords(G.op(a, b));
            REQUIRE(ca.has_value());
            CHECK(cab->first == (ca->first + cb->first) % K);
            CHECK(cab->second == (ca->second + cb->second) % K);
        }
    }
}

TEST_CASE("group spec parsing") {
    CHECK(parse_group_spec("dihedral:8").order == 16);
    CHECK(parse_group_spec("heisenberg:3").order == 27);
    CHECK(parse_group_spec("meta144").order == 144);
    CHECK(parse_group_spec("abelian:4x1").order == 4);
    CHECK_THROWS(parse_group_spec("frobenius:20"));
    CHECK_THROWS(parse_group_spec("dihedral"));
}

TEST_CASE("powers and element orders") {
    FiniteGroup G = build_dihedral(6);
    int r = G.op(G.gens[0], G.gens[1]);
    CHECK(G.power(r, 6) == G.identity);
    CHECK(G.power(r, -1) == G.inv[r]);
    CHECK(G.power(r, 7) == r);
    for (int g = 0; g < G.order; ++g) {
        int o = G.element_order(g);
        CHECK(G.power(g, o) == G.identity);
        for (int k = 1; k < o; ++k) CHECK(G.power(g, k) != G.identity);
    }
}
