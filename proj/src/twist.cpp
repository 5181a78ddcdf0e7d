#include "qf/twist.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace qf {

namespace {

Eigen::Matrix2d rot(double t) {
    Eigen::Matrix2d m;
    m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return m;
}

// sign vectors of the diagonal factors I, -I, d, -d
const int kDiagSigns[4][2] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};

int point_index(const std::vector<Eigen::Matrix2d>& pts, const Eigen::Matrix2d& g) {
    for (int q = 0; q < (int)pts.size(); ++q)
        if ((pts[q] - g).cwiseAbs().maxCoeff() < 1e-9) return q;
    throw std::runtime_error("sample point set is not closed under the two-sided action");
}

}  // namespace

std::vector<Eigen::Matrix2d> twist_sample_points(double theta) {
    Eigen::Matrix2d diag[4];
    diag[0] = Eigen::Matrix2d::Identity();
    diag[1] = -Eigen::Matrix2d::Identity();
    diag[2] = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();
    diag[3] = -diag[2];
    std::vector<Eigen::Matrix2d> pts;
    for (int s : {1, -1})
        for (int l = 0; l < 4; ++l) pts.push_back(rot(s * theta) * diag[l]);
    return pts;
}

RMat bidegree_projector(double theta, int c0, int c1, int d0, int d1) {
    auto pts = twist_sample_points(theta);
    Eigen::Matrix2d diag[4];
    diag[0] = Eigen::Matrix2d::Identity();
    diag[1] = -Eigen::Matrix2d::Identity();
    diag[2] = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();
    diag[3] = -diag[2];

    RMat F = RMat::Zero(8, 8);
    for (int p = 0; p < 8; ++p)
        for (int l = 0; l < 4; ++l)
            for (int lp = 0; lp < 4; ++lp) {
                int q = point_index(pts, diag[l] * pts[p] * diag[lp]);
                int chi = (c0 * kDiagSigns[l][0] + c1 * kDiagSigns[l][1] + d0 * kDiagSigns[lp][0] +
                           d1 * kDiagSigns[lp][1]) &
                          1;
                F(p, q) += (chi ? -1.0 : 1.0) / 16.0;
            }
    return F;
}

FiberModel fiber_model(double theta, const Bicharacter& sigma) {
    FiberModel fm;
    fm.theta = theta;
    auto pts = twist_sample_points(theta);

    // left multiplication by the coordinate functions, sign-deformed per bidegree
    const int fib[4] = {0, 4, 2, 6};
    bool in_fib[8] = {};
    for (int f : fib) in_fib[f] = true;

    double res = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            RMat D = RMat::Zero(8, 8);
            for (int p = 0; p < 8; ++p) D(p, p) = pts[p](i, j);
            RMat L = RMat::Zero(8, 8);
            std::array<int, 2> ei = {i == 0, i == 1};
            std::array<int, 2> ej = {j == 0, j == 1};
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    std::array<int, 2> cv = {c >> 1, c & 1};
                    std::array<int, 2> dv = {d >> 1, d & 1};
                    double s = sigma.sign(ei, cv) * sigma.sign(ej, dv);
                    L += s * D * bidegree_projector(theta, cv[0], cv[1], dv[0], dv[1]);
                }
            for (int p : fib)
                for (int q = 0; q < 8; ++q)
                    if (!in_fib[q]) res = std::max(res, std::abs(L(p, q)));
            RMat V(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) V(a, b) = L(fib[a], fib[b]);
            fm.V[i][j] = V;
        }
    fm.invariance_residual = res;
    fm.ok = res < 1e-10;
    return fm;
}

namespace {

// residual of the deformed orthogonal relations: self-adjointness, unit
// row/column squares, anticommutation along rows and columns, commutation
// across disjoint entries
double relation_residual(const FiberModel& fm) {
    double r = 0;
    RMat I = RMat::Identity(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r = std::max(r, (fm.V[i][j] - fm.V[i][j].transpose()).cwiseAbs().maxCoeff());
    for (int i = 0; i < 2; ++i) {
        RMat row = RMat::Zero(4, 4), col = RMat::Zero(4, 4);
        for (int j = 0; j < 2; ++j) {
            row += fm.V[i][j] * fm.V[i][j];
            col += fm.V[j][i] * fm.V[j][i];
        }
        r = std::max(r, (row - I).cwiseAbs().maxCoeff());
        r = std::max(r, (col - I).cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < 2; ++i) {
        r = std::max(r, (fm.V[i][0] * fm.V[i][1] + fm.V[i][1] * fm.V[i][0]).cwiseAbs().maxCoeff());
        r = std::max(r, (fm.V[0][i] * fm.V[1][i] + fm.V[1][i] * fm.V[0][i]).cwiseAbs().maxCoeff());
    }
    r = std::max(r, (fm.V[0][0] * fm.V[1][1] - fm.V[1][1] * fm.V[0][0]).cwiseAbs().maxCoeff());
    r = std::max(r, (fm.V[0][1] * fm.V[1][0] - fm.V[1][0] * fm.V[0][1]).cwiseAbs().maxCoeff());
    return r;
}

const FiberModel& cached_fiber_model(double theta, const Bicharacter& sigma) {
    static std::map<std::tuple<long long, int, int>, FiberModel> cache;
    int bbits = sigma.b[0][0] * 8 + sigma.b[0][1] * 4 + sigma.b[1][0] * 2 + sigma.b[1][1];
    auto key = std::make_tuple((long long)std::llround(theta * 1e15), bbits, (int)sigma.flipped);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, fiber_model(theta, sigma)).first;
    return it->second;
}

}  // namespace

Bicharacter find_cocycle() {
    const double thetas[3] = {0.61, M_PI / 7, 1.13};
    for (int flip = 0; flip < 2; ++flip)
        for (int mask = 0; mask < 16; ++mask) {
            Bicharacter s;
            s.b[0][0] = (mask >> 3) & 1;
            s.b[0][1] = (mask >> 2) & 1;
            s.b[1][0] = (mask >> 1) & 1;
            s.b[1][1] = mask & 1;
            s.flipped = flip;
            bool good = true;
            for (double th : thetas) {
                FiberModel fm = fiber_model(th, s);
                if (!fm.ok || relation_residual(fm) > 1e-12) {
                    good = false;
                    break;
                }
            }
            if (good) return s;
        }
    throw std::runtime_error("no sign matrix satisfies the deformed relations");
}

int twist_sign(const Word& w, const Bicharacter& sigma) {
    std::array<int, 2> c = {0, 0}, d = {0, 0};
    int e = 0;
    for (auto [i, j] : w) {
        std::array<int, 2> ei = {i == 0, i == 1};
        std::array<int, 2> ej = {j == 0, j == 1};
        e ^= sigma.pairing(c, ei) ^ sigma.pairing(d, ej);
        c[i] ^= 1;
        d[j] ^= 1;
    }
    return e ? -1 : 1;
}

namespace {

// Laurent polynomial in z = exp(i theta) with Gaussian rational coefficients
using TrigPoly = std::map<int, std::pair<Rat, Rat>>;

TrigPoly tp_mul(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out;
    for (auto& [ka, va] : a)
        for (auto& [kb, vb] : b) {
            auto& slot = out[ka + kb];
            slot.first += va.first * vb.first - va.second * vb.second;
            slot.second += va.first * vb.second + va.second * vb.first;
        }
    return out;
}

TrigPoly entry_poly(int i, int j, bool reflection) {
    Rat h(1, 2);
    TrigPoly cos = {{1, {h, 0}}, {-1, {h, 0}}};
    TrigPoly sin = {{1, {0, -h}}, {-1, {0, h}}};
    TrigPoly ncos = {{1, {-h, 0}}, {-1, {-h, 0}}};
    TrigPoly nsin = {{1, {0, h}}, {-1, {0, -h}}};
    if (!reflection) {
        if (i == j) return cos;
        return (i == 0) ? nsin : sin;
    }
    if (i == 0 && j == 0) return cos;
    if (i == 1 && j == 1) return ncos;
    return sin;
}

}  // namespace

Rat o2_integral(const Word& w) {
    if (w.size() > 12) throw std::runtime_error("word longer than 12");
    Rat total(0);
    for (int refl = 0; refl < 2; ++refl) {
        TrigPoly prod = {{0, {Rat(1), Rat(0)}}};
        for (auto [i, j] : w) prod = tp_mul(prod, entry_poly(i, j, refl));
        auto it = prod.find(0);
        if (it != prod.end()) {
            if (it->second.second != 0)
                throw std::runtime_error("constant term has an imaginary part");
            total += it->second.first;
        }
    }
    return total / 2;
}

double model_state(const Word& w, const Bicharacter& sigma, int Mq) {
    int p = (int)w.size();
    if (Mq == 0) Mq = std::max(p + 2, 8);
    if (Mq < p + 2) throw std::runtime_error("theta grid too coarse for this word length");
    double sum = 0;
    for (int t = 0; t < Mq; ++t) {
        double theta = (t + 0.25) * M_PI / Mq;
        const FiberModel& fm = cached_fiber_model(theta, sigma);
        if (!fm.ok) throw std::runtime_error("fiber is not invariant at a grid angle");
        RMat P = RMat::Identity(4, 4);
        for (auto [i, j] : w) P = P * fm.V[i][j];
        sum += P.trace() / 4.0;
    }
    return sum / Mq;
}

double convolve_state(const Word& w, const Bicharacter& sigma) {
    int p = (int)w.size();
    if (p > 8) throw std::runtime_error("convolution word longer than 8");
    double sum = 0;
    for (long mask = 0; mask < (1L << p); ++mask) {
        Word left, right;
        for (int t = 0; t < p; ++t) {
            int k = (mask >> t) & 1;
            left.push_back({w[t].first, k});
            right.push_back({k, w[t].second});
        }
        sum += model_state(left, sigma) * model_state(right, sigma);
    }
    return sum;
}

bool is_central_monomial(const ExponentMatrix& m) {
    int n = m.n;
    int eps = -1;
    for (int i = 0; i < n; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += m.e[i][j];
        if (eps < 0) eps = s & 1;
        if ((s & 1) != eps) return false;
    }
    for (int j = 0; j < n; ++j) {
        int s = 0;
        for (int i = 0; i < n; ++i) s += m.e[i][j];
        if ((s & 1) != eps) return false;
    }
    return true;
}

}  // namespace qf
