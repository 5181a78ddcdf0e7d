#pragma once

#include "qf/exact.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <utility>

namespace qf {

using RMat = Eigen::MatrixXd;

// Bicharacter sign on Z_2^2 x Z_2^2: sigma(a, c) = (-1)^(a^T B c), with an
// orientation flag that swaps the two arguments (i.e. transposes B).
struct Bicharacter {
    int b[2][2] = {{0, 0}, {0, 0}};
    bool flipped = false;

    int pairing(const std::array<int, 2>& a, const std::array<int, 2>& c) const {
        int e = 0;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                e += (flipped ? c[s] * b[s][t] * a[t] : a[s] * b[s][t] * c[t]);
        return e & 1;
    }
    double sign(const std::array<int, 2>& a, const std::array<int, 2>& c) const {
        return pairing(a, c) ? -1.0 : 1.0;
    }
};

// The eight sample points R(theta) l and R(-theta) l, l in {I, -I, d, -d},
// d = diag(1, -1).
std::vector<Eigen::Matrix2d> twist_sample_points(double theta);

// Bidegree component f_{cd}(g) = (1/16) sum_{l,l'} chi_c(l) chi_d(l') f(l g l')
// of a function on the eight points, as an 8x8 projection matrix.
RMat bidegree_projector(double theta, int c0, int c1, int d0, int d1);

// Twisted coordinate operators on the four-point fiber
// {R(theta), R(-theta), R(theta) d, R(-theta) d}: the left multiplication by
// u_ij deformed by sigma across bidegrees, restricted to the fiber.
struct FiberModel {
    double theta = 0.0;
    bool ok = false;
    double invariance_residual = 0.0;  // leakage out of the fiber
    std::array<std::array<RMat, 2>, 2> V;
};
FiberModel fiber_model(double theta, const Bicharacter& sigma);

// Search the 16 candidate sign matrices (both orientations) for the one whose
// fiber operators satisfy the deformed orthogonal relations at generic
// angles.  Throws if none passes.
Bicharacter find_cocycle();

// word = sequence of (i, j) entry labels, 0-based
using Word = std::vector<std::pair<int, int>>;

// accumulated sigma-sign of u_{i1 j1} ... u_{ip jp}
int twist_sign(const Word& w, const Bicharacter& sigma);

// Haar integral of the plain O_2 coordinate monomial, exactly.
Rat o2_integral(const Word& w);

// (1/4) Tr of the fiber-operator word, averaged over the theta grid
// (t + 1/4) pi / Mq, t = 0..Mq-1.  Mq must be at least len(w) + 2.
double model_state(const Word& w, const Bicharacter& sigma, int Mq = 0);

// (phi * phi)(w) = sum over all 2^p splittings into two subwords through the
// comultiplication; p <= 8.
double convolve_state(const Word& w, const Bicharacter& sigma);

// exponent matrix with all row and column sums congruent mod 2
struct ExponentMatrix {
    int n = 2;
    std::vector<std::vector<int>> e;
};
bool is_central_monomial(const ExponentMatrix& m);

}  // namespace qf
