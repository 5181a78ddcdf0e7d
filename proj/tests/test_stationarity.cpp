#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf/stationarity.hpp"

#include <algorithm>

using namespace qf;

TEST_CASE("dihedral stationary weights are the unique exact solution") {
    for (int n : {4, 6, 8}) {
        FiniteGroup G = build_dihedral(n);
        auto comps = enumerate_components(G, 2);
        REQUIRE((int)comps.size() == n / 2 + 1);
        StationarityReport rep = solve_weights(comps);
        REQUIRE(rep.feasible);
        CHECK(rep.polytope_dim == 0);
        CHECK(rep.max_residual == 0.0);
        // two loose components at 1/n, each solid component at 2/n
        for (size_t i = 0; i < comps.size(); ++i) {
            Rat expect = comps[i].kind == ModelComponent::Loose ? Rat(1, n) : Rat(2, n);
            CHECK(rep.weights[i] == expect);
        }
        auto res = stationarity_residual_exact(comps, rep.weights);
        for (const auto& r : res) CHECK(r.is_zero());
        auto resd = stationarity_residual(comps, rep.weights_d);
        for (cxd r : resd) CHECK(std::abs(r) < 1e-12);
    }
}

TEST_CASE("heisenberg stationary weights, one-dimensional solution face") {
    FiniteGroup G = build_heisenberg(3);
    auto comps = enumerate_components(G, 3);
    REQUIRE(comps.size() == 8);
    StationarityReport rep = solve_weights(comps);
    REQUIRE(rep.feasible);
    CHECK(rep.polytope_dim == 1);
    for (size_t i = 0; i < comps.size(); ++i) {
        Rat expect = comps[i].kind == ModelComponent::Loose ? Rat(1, 18) : Rat(1, 3);
        CHECK(rep.weights[i] == expect);
    }
    auto res = stationarity_residual_exact(comps, rep.weights);
    for (const auto& r : res) CHECK(r.is_zero());
    // the face direction shifts loose weights by the parity of their pairing:
    // moving to a vertex keeps stationarity but raises the norm
    std::vector<Rat> shifted = rep.weights;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].kind != ModelComponent::Loose) continue;
        std::string tau = comps[i].label.substr(2, 3);
        int inv = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (tau[a] > tau[b]) inv++;
        shifted[i] = (inv % 2 == 0) ? Rat(1, 9) : Rat(0);
    }
    auto res2 = stationarity_residual_exact(comps, shifted);
    for (const auto& r : res2) CHECK(r.is_zero());
    Rat n1(0), n2(0);
    for (size_t i = 0; i < comps.size(); ++i) {
        n1 += rep.weights[i] * rep.weights[i];
        n2 += shifted[i] * shifted[i];
    }
    CHECK(n1 < n2);
}

TEST_CASE("order-144 group is not stationary, certificate re-verified") {
    FiniteGroup G = build_meta144();
    auto comps = enumerate_components(G, 3);
    REQUIRE(comps.size() == 12);
    StationarityReport rep = solve_weights(comps);
    REQUIRE(!rep.feasible);
    REQUIRE(rep.certificate_checked);
    REQUIRE(rep.farkas.size() == rep.rows.size());
    // independent recheck of y^T b > 0 and y^T A <= 0
    Rat yb(0);
    for (size_t r = 0; r < rep.rhs.size(); ++r) yb += rep.farkas[r] * rep.rhs[r];
    CHECK(yb > 0);
    for (size_t j = 0; j < comps.size(); ++j) {
        Rat ya(0);
        for (size_t r = 0; r < rep.rows.size(); ++r) ya += rep.farkas[r] * rep.rows[r][j];
        CHECK(ya <= 0);
    }
    CHECK(rep.row_names.back() == "mass");
    CHECK(rep.rhs.back() == 1);
    for (const Rat& a : rep.rows.back()) CHECK(a == 1);
}

TEST_CASE("external weight verification") {
    FiniteGroup G = build_dihedral(4);
    auto comps = enumerate_components(G, 2);
    CHECK(verify_weights(comps, {0.25, 0.25, 0.5}).feasible);
    CHECK(!verify_weights(comps, {0.25, 0.25, 0.51}).feasible);   // mass off
    CHECK(!verify_weights(comps, {0.75, 0.75, -0.5}).feasible);   // negative
    CHECK(!verify_weights(comps, {0.5, 0.25, 0.25}).feasible);    // residual
    CHECK(verify_weights(comps, {0.5, 0.25, 0.25}, 0.6).feasible);  // loose tolerance
    CHECK(verify_weights(comps, {0.25 + 1e-12, 0.25, 0.5}).feasible);
    CHECK_THROWS(verify_weights(comps, {0.5, 0.5}));
}

TEST_CASE("orbit character sums of the order-144 group") {
    FiniteGroup G = build_meta144();
    auto table = orbit_sum_table(G);
    REQUIRE(table.size() == 3);
    CHECK(table[0] == std::array<long, 2>{-1, -1});
    CHECK(table[1] == std::array<long, 2>{3, -1});
    CHECK(table[2] == std::array<long, 2>{-1, 3});
    CHECK_THROWS(orbit_sum_table(build_dihedral(4)));
}

TEST_CASE("pointwise convolution powers") {
    std::vector<cxd> phi = {cxd(1, 0), cxd(0, 1), cxd(-0.5, 0)};
    auto p1 = convolution_power(phi, 1);
    for (size_t i = 0; i < phi.size(); ++i) CHECK(std::abs(p1[i] - phi[i]) < 1e-15);
    auto p2 = convolution_power(phi, 2);
    CHECK(std::abs(p2[0] - cxd(1, 0)) < 1e-15);
    CHECK(std::abs(p2[1] - cxd(-1, 0)) < 1e-15);
    CHECK(std::abs(p2[2] - cxd(0.25, 0)) < 1e-15);
}

TEST_CASE("cesaro averages single out the value one") {
    auto [v1, l1] = cesaro_haar(cxd(1, 0), 500);
    CHECK(l1 == 1);
    CHECK(std::abs(v1 - cxd(1, 0)) < 1e-12);
    auto [vi, li] = cesaro_haar(cxd(0, 1), 4000);
    CHECK(li == 0);
    CHECK(std::abs(vi) < 1e-2);
    auto [vm, lm] = cesaro_haar(cxd(-1, 0), 4000);
    CHECK(lm == 0);
    CHECK(std::abs(vm) < 1e-3);
    auto [vh, lh] = cesaro_haar(cxd(0.5, 0), 200);
    CHECK(lh == 0);
    CHECK(std::abs(vh) < 1e-2);
    auto [vw, lw] = cesaro_haar(std::polar(1.0, 2 * M_PI / 360), 100000);
    CHECK(lw == 0);
    CHECK(std::abs(vw) < 1e-2);
}

TEST_CASE("joint kernels of component families") {
    FiniteGroup D4 = build_dihedral(4);
    auto comps = enumerate_components(D4, 2);
    // the first loose component alone has the rotation subgroup as kernel
    KernelReport one = kernel_intersection(D4, {comps[0]});
    CHECK(!one.trivial);
    CHECK(one.intersection.size() == 4);
    int r = D4.op(D4.gens[0], D4.gens[1]);
    std::vector<int> rot = D4.generated_by({r});
    std::sort(rot.begin(), rot.end());
    CHECK(one.intersection == rot);
    // all components together separate the group
    CHECK(kernel_intersection(D4, comps).trivial);
    for (auto spec : {"dihedral:6", "heisenberg:3", "meta144"}) {
        FiniteGroup G = parse_group_spec(spec);
        CHECK(kernel_intersection(G, enumerate_components(G, G.gen_order)).trivial);
    }
}

TEST_CASE("generic subgroup enumeration") {
    CHECK(generic_subgroups(2) == std::vector<std::pair<int, int>>{{1, 1}});
    CHECK(generic_subgroups(3) == std::vector<std::pair<int, int>>{{1, 1}, {1, 2}});
    CHECK(generic_subgroups(5).size() == 4);
    CHECK_THROWS(generic_subgroups(4));
    CHECK_THROWS(generic_subgroups(1));
}

TEST_CASE("inner faithfulness certificates") {
    {
        FaithfulnessWitness w = inner_faithfulness_certificate(build_meta144());
        CHECK(w.ok);
        CHECK(w.char_labels.size() == 7);
        CHECK(w.labels_generate);
        CHECK(w.induced_diag.ok);
        REQUIRE(w.induced.gen_mats.size() == 2);
        CHECK(w.induced.K == 3);
        // the induced generator images are honest unitaries
        for (const Mat& M : w.induced.gen_mats)
            CHECK((M * M.adjoint()).isApprox(Mat::Identity(3, 3), 1e-10));
    }
    {
        FaithfulnessWitness w = inner_faithfulness_certificate(build_heisenberg(3));
        CHECK(w.ok);
        CHECK(w.char_labels.size() == 3);
        CHECK(w.labels_generate);
        CHECK(w.induced_diag.ok);
    }
    {
        FaithfulnessWitness w = inner_faithfulness_certificate(build_dihedral(4));
        CHECK(w.ok);
        CHECK(w.char_labels.size() == 2);
        CHECK(w.induced_diag.ok);
    }
}
