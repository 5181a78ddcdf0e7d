#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace qf {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cxd = std::complex<double>;

// Deterministic standard normal: explicit Box-Muller on 53-bit uniforms so
// results do not depend on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return (eng_() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_ = false;
};

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
// correction U = Q diag(r_ii/|r_ii|).
inline Mat haar_unitary_rng(int K, Rng& rng) {
    Mat G(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            double re = rng.gauss(), im = rng.gauss();
            G(i, j) = cxd(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < K; ++j) {
        cxd d = R(j, j);
        double a = std::abs(d);
        Q.col(j) *= (a > 0 ? d / a : cxd(1, 0));
    }
    return Q;
}

inline Mat haar_unitary(int K, uint64_t seed) {
    Rng rng(seed);
    return haar_unitary_rng(K, rng);
}

}  // namespace qf
