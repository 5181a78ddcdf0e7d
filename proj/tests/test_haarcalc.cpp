#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf/haarcalc.hpp"

using namespace qf;

TEST_CASE("moment matrices are constant over a component and match the trace formula") {
    for (auto spec : {"dihedral:4", "heisenberg:3"}) {
        FiniteGroup G = parse_group_spec(spec);
        int K = G.gen_order;
        auto comps = enumerate_components(G, K);
        int pmax = K == 2 ? 3 : 2;
        for (size_t ci = 0; ci < comps.size(); ci += comps.size() - 1) {
            const ModelComponent& c = comps[ci];
            for (int p = 1; p <= pmax; ++p) {
                TpMatrix ex = tp_exact(c, p);
                for (std::uint64_t seed : {11ull, 12ull}) {
                    auto xi = magic_array(fourier_magic(sample_point(c, seed)));
                    TpMatrix T = tp_of_xi(xi, p, K);
                    CHECK((T.m - ex.m).cwiseAbs().maxCoeff() < 1e-9);
                }
                // averaging over samples changes nothing
                TpMatrix avg = tp_integral(c, p, 4, 99);
                CHECK((avg.m - ex.m).cwiseAbs().maxCoeff() < 1e-9);
                // modulus bound 1/K on every entry
                CHECK(ex.m.cwiseAbs().maxCoeff() <= 1.0 / K + 1e-12);
            }
        }
    }
}

TEST_CASE("moment matrix guards") {
    FiniteGroup G = build_heisenberg(3);
    auto comps = enumerate_components(G, 3);
    CHECK_THROWS(tp_exact(comps[0], 5));  // 6^5 rows exceeds the dense guard
    // vectors of a magic array must have norm zero or one
    std::vector<std::vector<Vec>> bad(1, std::vector<Vec>(1, Vec::Constant(2, cxd(1, 0))));
    CHECK_THROWS(tp_of_xi(bad, 1, 2));
}

TEST_CASE("matrix powers of T recover convolution powers of the state") {
    // Fourier sum over one block of T^r against the pointwise power of the
    // normalized trace, for every generator tuple and exponent tuple
    for (auto spec : {"dihedral:4", "heisenberg:3"}) {
        FiniteGroup G = parse_group_spec(spec);
        int K = G.gen_order, M = (int)G.gens.size();
        auto comps = enumerate_components(G, K);
        for (size_t ci = 0; ci < comps.size(); ci += comps.size() - 1) {
            const ModelComponent& c = comps[ci];
            for (int p = 1; p <= 2; ++p) {
                TpMatrix T = tp_exact(c, p);
                for (int r = 1; r <= 3; ++r) {
                    auto conv = convolution_power(c.trace, r);
                    std::vector<int> i(p, 0);
                    while (true) {
                        std::vector<int> q(p, 0);
                        while (true) {
                            int g = G.identity;
                            for (int t = 0; t < p; ++t)
                                g = G.op(g, G.power(G.gens[i[t]], q[t]));
                            cxd acc(0, 0);
                            std::vector<int> b(p, 0);
                            while (true) {
                                int ph = 0;
                                for (int t = 0; t < p; ++t) ph += q[t] * b[t];
                                std::vector<int> I(p), J(p);
                                for (int t = 0; t < p; ++t) {
                                    I[t] = i[t] * K;
                                    J[t] = i[t] * K + b[t];
                                }
                                acc += std::polar(1.0, 2 * M_PI * ph / K) *
                                       truncated_moment(T, r, I, J);
                                int t = p - 1;
                                while (t >= 0 && ++b[t] == K) b[t--] = 0;
                                if (t < 0) break;
                            }
                            CHECK(std::abs(acc - conv[G.class_of[g]]) < 1e-12);
                            int t = p - 1;
                            while (t >= 0 && ++q[t] == K) q[t--] = 0;
                            if (t < 0) break;
                        }
                        int t = p - 1;
                        while (t >= 0 && ++i[t] == M) i[t--] = 0;
                        if (t < 0) break;
                    }
                }
            }
        }
    }
}

TEST_CASE("gram identity is exact for matched sample multisets") {
    FiniteGroup G = build_dihedral(4);
    auto comps = enumerate_components(G, 2);
    // mix samples from different components of the same group
    std::vector<std::vector<std::vector<Vec>>> samples;
    samples.push_back(magic_array(fourier_magic(sample_point(comps[0], 5))));
    samples.push_back(magic_array(fourier_magic(sample_point(comps[2], 6))));
    samples.push_back(magic_array(fourier_magic(sample_point(comps[2], 7))));
    for (int p = 1; p <= 3; ++p)
        for (int r = 1; r <= 3; ++r) {
            GramCheck gc = gram_law_check(samples, p, r, 2);
            CHECK(gc.abs_error < 1e-10);
        }
    CHECK_THROWS(gram_law_check({}, 1, 1, 2));
}

TEST_CASE("exact word moments of the Klein four group") {
    MomentSequence seq = word_moments_exact(build_abelian(2, 2), 12);
    REQUIRE(seq.N == 4);
    CHECK(seq.m[0] == 1);
    for (int p = 1; p <= 12; ++p) {
        Rat expect = Rat(1, 4) + Rat(1, 1 << (p + 1));
        CHECK(seq.m[p] == expect);
    }
}

TEST_CASE("moment sequences are normalized and bounded") {
    for (auto spec : {"dihedral:4", "heisenberg:3", "abelian:2x2"}) {
        MomentSequence seq = word_moments_exact(parse_group_spec(spec), 20);
        CHECK(seq.m[0] == 1);
        for (size_t p = 0; p < seq.m.size(); ++p) {
            CHECK(seq.m[p] >= 0);
            CHECK(seq.m[p] <= 1);
            CHECK(std::abs(seq.md[p] - to_double(seq.m[p])) < 1e-15);
        }
    }
}

TEST_CASE("atom mass at one from the moment tail") {
    MomentSequence klein = word_moments_exact(build_abelian(2, 2), 200);
    CHECK(std::abs(atom_at_one(klein, 200) - 0.25) < 1e-3);
    MomentSequence d4 = word_moments_exact(build_dihedral(4), 400);
    CHECK(std::abs(atom_at_one(d4, 400) - 0.125) < 1e-3);
    MomentSequence ones;
    ones.N = 1;
    ones.m.assign(101, Rat(1));
    ones.md.assign(101, 1.0);
    CHECK(atom_at_one(ones, 100) == 1.0);
    CHECK_THROWS(atom_at_one(ones, 200));
}

TEST_CASE("support touching one") {
    // m_p tends to 1/|G| > 0, so |m_p|^{1/p} needs order a few hundred to clear 0.99
    CHECK(kesten_support(word_moments_exact(build_abelian(2, 2), 200)));
    CHECK(kesten_support(word_moments_exact(build_dihedral(4), 400)));
    CHECK(kesten_support(word_moments_exact(build_heisenberg(3), 350)));
    MomentSequence half;
    half.N = 2;
    half.m.push_back(Rat(1));
    half.md.push_back(1.0);
    for (int p = 1; p <= 30; ++p) {
        half.m.push_back(Rat(1, 1 << p));
        half.md.push_back(std::pow(0.5, p));
    }
    CHECK(!kesten_support(half));
}

TEST_CASE("ball volumes") {
    CHECK(growth_series_line(5) == std::vector<long>{1, 3, 5, 7, 9, 11});
    CHECK(growth_series_infinite_dihedral(6) == std::vector<long>{1, 3, 5, 7, 9, 11, 13});
    CHECK(growth_series(build_dihedral(4), 6) == std::vector<long>{1, 3, 5, 7, 8, 8, 8});
    auto h = growth_series(build_heisenberg(3), 6);
    CHECK(h[0] == 1);
    CHECK(h[1] == 5);
    for (size_t i = 1; i < h.size(); ++i) CHECK(h[i] >= h[i - 1]);
    CHECK(h[4] == 27);
    CHECK(h[6] == 27);
}

TEST_CASE("monte carlo moments hit the exact values within three standard errors") {
    {
        FiniteGroup G = build_dihedral(4);
        auto comps = enumerate_components(G, 2);
        StationarityReport rep = solve_weights(comps);
        MomentSequence seq = word_moments_exact(G, 3);
        for (int p = 1; p <= 3; ++p) {
            MomentEstimate est = mc_character_moment(comps, rep.weights_d, p, 10000, 12345);
            CHECK(est.samples == 10000);
            CHECK(std::abs(est.mean - seq.md[p]) <= 3 * est.stderr_ + 1e-12);
        }
        // the convolution-power variant targets the same stationary moments
        MomentEstimate e2 = mc_character_moment(comps, rep.weights_d, 2, 4000, 77, 2);
        CHECK(std::abs(e2.mean - seq.md[2]) <= 3 * e2.stderr_ + 1e-12);
        // determinism in the seed
        MomentEstimate a = mc_character_moment(comps, rep.weights_d, 2, 1024, 5);
        MomentEstimate b = mc_character_moment(comps, rep.weights_d, 2, 1024, 5);
        CHECK(a.mean == b.mean);
        CHECK(a.stderr_ == b.stderr_);
    }
    {
        FiniteGroup G = build_heisenberg(3);
        auto comps = enumerate_components(G, 3);
        StationarityReport rep = solve_weights(comps);
        MomentSequence seq = word_moments_exact(G, 2);
        for (int p = 1; p <= 2; ++p) {
            MomentEstimate est = mc_character_moment(comps, rep.weights_d, p, 10000, 12345);
            CHECK(std::abs(est.mean - seq.md[p]) <= 3 * est.stderr_ + 1e-12);
        }
    }
}
