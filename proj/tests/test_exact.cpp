#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf/exact.hpp"

#include <cmath>
#include <complex>

using namespace qf;

TEST_CASE("cyclotomic polynomials match hand values") {
    CHECK(cyclotomic_poly(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_poly(2) == std::vector<Int>{1, 1});
    CHECK(cyclotomic_poly(3) == std::vector<Int>{1, 1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_poly(6) == std::vector<Int>{1, -1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<Int>{1, 0, -1, 0, 1});
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(6) == 2);
    CHECK(euler_phi(12) == 4);
}

TEST_CASE("root powers sum to zero and reduce correctly") {
    for (int L : {2, 3, 4, 6, 8, 12}) {
        Cyclotomic sum(L);
        for (int k = 0; k < L; ++k) sum += Cyclotomic::root_power(L, k);
        CHECK(sum.is_zero());
    }
    // w_6 satisfies w^2 = w - 1
    Cyclotomic w = Cyclotomic::root_power(6, 1);
    Cyclotomic lhs = w * w;
    Cyclotomic rhs = w - Cyclotomic(6, Rat(1));
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("cyclotomic arithmetic agrees with complex doubles") {
    for (int L : {3, 4, 6}) {
        Cyclotomic a = Cyclotomic::root_power(L, 1) + Cyclotomic(L, Rat(2, 3));
        Cyclotomic b = Cyclotomic::root_power(L, L - 1) * Rat(5, 7);
        Cyclotomic c = a * b - b;
        std::complex<double> w = std::polar(1.0, 2 * M_PI / L);
        std::complex<double> ad = w + 2.0 / 3, bd = std::pow(w, L - 1) * (5.0 / 7);
        std::complex<double> cd = ad * bd - bd;
        CHECK(std::abs(c.to_complex() - cd) < 1e-12);
        CHECK(std::abs((a.conj()).to_complex() - std::conj(ad)) < 1e-12);
    }
}

TEST_CASE("rationality detection") {
    Cyclotomic z = Cyclotomic::root_power(4, 1);  // i
    CHECK(!z.is_rational());
    Cyclotomic m = z * z;  // -1
    CHECK(m.is_rational());
    CHECK(m.rational_part() == Rat(-1));
    // w_3 + w_3^2 = -1
    Cyclotomic s = Cyclotomic::root_power(3, 1) + Cyclotomic::root_power(3, 2);
    CHECK(s.is_rational());
    CHECK(s.rational_part() == Rat(-1));
}

TEST_CASE("rref and rank") {
    RatMat A = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}, {Rat(0), Rat(1)}};
    CHECK(rank(A) == 2);
    RatMat B = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK(rank(B) == 1);
}

TEST_CASE("solve_linear particular solution and nullspace") {
    RatMat A = {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(1)}};
    RatVec b = {Rat(3), Rat(5)};
    LinSolve s = solve_linear(A, b);
    REQUIRE(s.consistent);
    CHECK(s.x[0] + s.x[1] == 3);
    CHECK(s.x[1] + s.x[2] == 5);
    CHECK(s.nullspace.size() == 1);
    const RatVec& n = s.nullspace[0];
    CHECK(n[0] + n[1] == 0);
    CHECK(n[1] + n[2] == 0);
}

TEST_CASE("solve_linear inconsistency yields a left annihilator") {
    RatMat A = {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    RatVec b = {Rat(1), Rat(3)};
    LinSolve s = solve_linear(A, b);
    REQUIRE(!s.consistent);
    for (int j = 0; j < 2; ++j) {
        Rat dot(0);
        for (int r = 0; r < 2; ++r) dot += s.farkas[r] * A[r][j];
        CHECK(dot == 0);
    }
    Rat yb(0);
    for (int r = 0; r < 2; ++r) yb += s.farkas[r] * b[r];
    CHECK(yb != 0);
}

TEST_CASE("min_norm_affine on a line") {
    // x + y = 2: closest point to origin is (1, 1)
    RatMat A = {{Rat(1), Rat(1)}};
    RatVec b = {Rat(2)};
    LinSolve s = min_norm_affine(A, b);
    REQUIRE(s.consistent);
    CHECK(s.x[0] == 1);
    CHECK(s.x[1] == 1);
}

TEST_CASE("min_norm_affine with a weighted row") {
    // x + 2y = 5: projection of 0 is (1, 2)
    RatMat A = {{Rat(1), Rat(2)}};
    RatVec b = {Rat(5)};
    LinSolve s = min_norm_affine(A, b);
    REQUIRE(s.consistent);
    CHECK(s.x[0] == 1);
    CHECK(s.x[1] == 2);
}

TEST_CASE("simplex feasibility and certificates") {
    // x + y = 1, x - y = 0 with x, y >= 0: feasible at (1/2, 1/2)
    {
        RatMat A = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
        RatVec b = {Rat(1), Rat(0)};
        Phase1 ph = simplex_feasible(A, b);
        REQUIRE(ph.feasible);
        CHECK(ph.x[0] == Rat(1, 2));
        CHECK(ph.x[1] == Rat(1, 2));
    }
    // x + y = -1 with x, y >= 0: infeasible, y^T A <= 0 and y^T b > 0
    {
        RatMat A = {{Rat(1), Rat(1)}};
        RatVec b = {Rat(-1)};
        Phase1 ph = simplex_feasible(A, b);
        REQUIRE(!ph.feasible);
        for (int j = 0; j < 2; ++j) CHECK(ph.farkas[0] * A[0][j] <= 0);
        CHECK(ph.farkas[0] * b[0] > 0);
    }
    // x - y = 1, x + y = 0, x, y >= 0: equalities solvable but only at x=1/2, y=-1/2
    {
        RatMat A = {{Rat(1), Rat(-1)}, {Rat(1), Rat(1)}};
        RatVec b = {Rat(1), Rat(0)};
        Phase1 ph = simplex_feasible(A, b);
        REQUIRE(!ph.feasible);
        Rat yb = ph.farkas[0] * b[0] + ph.farkas[1] * b[1];
        CHECK(yb > 0);
        for (int j = 0; j < 2; ++j) {
            Rat ya = ph.farkas[0] * A[0][j] + ph.farkas[1] * A[1][j];
            CHECK(ya <= 0);
        }
    }
}

TEST_CASE("random rational systems round-trip") {
    // deterministic pseudo-random small systems: A x0 = b must be recovered
    unsigned state = 12345;
    auto nextint = [&]() {
        state = state * 1103515245u + 12345u;
        return (int)((state >> 16) % 7) - 3;
    };
    for (int trial = 0; trial < 25; ++trial) {
        int m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
        RatMat A(m, RatVec(n));
        RatVec x0(n);
        for (int j = 0; j < n; ++j) x0[j] = Rat(nextint(), 1 + (trial % 2));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A[i][j] = Rat(nextint());
        RatVec b(m, Rat(0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) b[i] += A[i][j] * x0[j];
        LinSolve s = solve_linear(A, b);
        REQUIRE(s.consistent);
        for (int i = 0; i < m; ++i) {
            Rat dot(0);
            for (int j = 0; j < n; ++j) dot += A[i][j] * s.x[j];
            CHECK(dot == b[i]);
        }
    }
}
