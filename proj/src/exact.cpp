#include "qf/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qf {

double to_double(const Rat& r) {
    return boost::multiprecision::numerator(r).convert_to<double>() /
           boost::multiprecision::denominator(r).convert_to<double>();
}

int euler_phi(int L) {
    int result = L, n = L;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<Int> poly_div(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (int i = (int)q.size() - 1; i >= 0; --i) {
        Int c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("poly_div: nonzero remainder");
    return q;
}

}  // namespace

std::vector<Int> cyclotomic_poly(int L) {
    // Phi_L = (X^L - 1) / prod_{d | L, d < L} Phi_d
    std::vector<Int> num(L + 1, Int(0));
    num[0] = -1;
    num[L] = 1;
    for (int d = 1; d < L; ++d) {
        if (L % d != 0) continue;
        num = poly_div(num, cyclotomic_poly(d));
    }
    return num;
}

Cyclotomic Cyclotomic::root_power(int L, long k) {
    Cyclotomic z(L);
    long r = ((k % L) + L) % L;
    z.c_[r] = 1;
    return z;
}

void Cyclotomic::reduce() const {
    // fold w^L = 1 is already structural (length L); reduce degrees >= phi(L)
    // against Phi_L so that coords() is canonical
    static thread_local std::vector<std::vector<Int>> cache;
    if ((int)cache.size() <= L_) cache.resize(L_ + 1);
    if (cache[L_].empty()) cache[L_] = cyclotomic_poly(L_);
    const std::vector<Int>& phi = cache[L_];
    int d = (int)phi.size() - 1;  // = euler_phi(L_)
    for (int i = L_ - 1; i >= d; --i) {
        if (c_[i] == 0) continue;
        Rat f = c_[i];  // phi is monic
        for (int j = 0; j <= d; ++j) c_[i - d + j] -= f * Rat(phi[j]);
    }
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (L_ == 1 && o.L_ != 1) { Cyclotomic t(o.L_, c_[0]); *this = t; }
    if (o.L_ == 1) { c_[0] += o.c_[0]; return *this; }
    if (L_ != o.L_) throw std::invalid_argument("cyclotomic level mismatch");
    for (int i = 0; i < L_; ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    Cyclotomic t = o;
    t *= Rat(-1);
    return *this += t;
}

Cyclotomic& Cyclotomic::operator*=(const Rat& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (L_ == 1 && o.L_ != 1) { Cyclotomic t(o.L_, c_[0]); *this = t; }
    if (o.L_ == 1) return *this *= o.c_[0];
    if (L_ != o.L_) throw std::invalid_argument("cyclotomic level mismatch");
    std::vector<Rat> out(L_, Rat(0));
    for (int i = 0; i < L_; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < L_; ++j) {
            if (o.c_[j] == 0) continue;
            out[(i + j) % L_] += c_[i] * o.c_[j];
        }
    }
    c_ = std::move(out);
    return *this;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic z(L_);
    for (int i = 0; i < L_; ++i) z.c_[(L_ - i) % L_] = c_[i];
    return z;
}

bool Cyclotomic::is_zero() const {
    reduce();
    int d = euler_phi(L_);
    for (int i = 0; i < d; ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    reduce();
    int d = euler_phi(L_);
    for (int i = 1; i < d; ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::rational_part() const {
    if (!is_rational()) throw std::logic_error("not rational");
    return c_[0];
}

std::vector<Rat> Cyclotomic::coords() const {
    reduce();
    int d = euler_phi(L_);
    return std::vector<Rat>(c_.begin(), c_.begin() + d);
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> z(0, 0);
    for (int i = 0; i < L_; ++i) {
        if (c_[i] == 0) continue;
        double a = 2.0 * M_PI * i / L_;
        z += to_double(c_[i]) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return z;
}

// ---- rational linear algebra ----

std::vector<int> rref(RatMat& A, RatMat* transform) {
    int m = (int)A.size();
    int n = m ? (int)A[0].size() : 0;
    if (transform) {
        transform->assign(m, RatVec(m, Rat(0)));
        for (int i = 0; i < m; ++i) (*transform)[i][i] = 1;
    }
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int p = -1;
        for (int i = row; i < m; ++i)
            if (A[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(A[p], A[row]);
        if (transform) std::swap((*transform)[p], (*transform)[row]);
        Rat inv = Rat(1) / A[row][col];
        for (int j = 0; j < n; ++j) A[row][j] *= inv;
        if (transform)
            for (int j = 0; j < m; ++j) (*transform)[row][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (int j = 0; j < n; ++j) A[i][j] -= f * A[row][j];
            if (transform)
                for (int j = 0; j < m; ++j) (*transform)[i][j] -= f * (*transform)[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(RatMat A) { return (int)rref(A).size(); }

LinSolve solve_linear(const RatMat& A, const RatVec& b) {
    LinSolve out;
    int m = (int)A.size();
    int n = m ? (int)A[0].size() : 0;
    RatMat M = A;
    for (int i = 0; i < m; ++i) M[i].push_back(b[i]);
    RatMat T;
    std::vector<int> piv = rref(M, &T);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == n) {  // row [0 ... 0 | 1]: inconsistent
            out.consistent = false;
            out.farkas = T[r];
            return out;
        }
    }
    out.consistent = true;
    out.x.assign(n, Rat(0));
    for (size_t r = 0; r < piv.size(); ++r) out.x[piv[r]] = M[r][n];
    std::vector<bool> is_piv(n, false);
    for (int c : piv)
        if (c < n) is_piv[c] = true;
    for (int free = 0; free < n; ++free) {
        if (is_piv[free]) continue;
        RatVec v(n, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M[r][free];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

LinSolve min_norm_affine(const RatMat& A, const RatVec& b) {
    LinSolve sol = solve_linear(A, b);
    if (!sol.consistent || sol.nullspace.empty()) return sol;
    // project particular solution onto the affine set's nearest-to-origin
    // point: x = x0 - N (N^T N)^{-1} N^T x0 with N the nullspace basis
    int k = (int)sol.nullspace.size();
    int n = (int)sol.x.size();
    RatMat G(k, RatVec(k, Rat(0)));
    RatVec rhs(k, Rat(0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j)
            for (int t = 0; t < n; ++t) G[i][j] += sol.nullspace[i][t] * sol.nullspace[j][t];
        for (int t = 0; t < n; ++t) rhs[i] += sol.nullspace[i][t] * sol.x[t];
    }
    LinSolve c = solve_linear(G, rhs);  // Gram matrix is invertible
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < n; ++t) sol.x[t] -= c.x[i] * sol.nullspace[i][t];
    return sol;
}

Phase1 simplex_feasible(RatMat A, RatVec b) {
    Phase1 out;
    int m = (int)A.size();
    int n = m ? (int)A[0].size() : 0;
    std::vector<int> sign(m, 1);
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& x : A[i]) x = -x;
            b[i] = -b[i];
            sign[i] = -1;
        }
    }
    // tableau over columns [x | artificials], objective = sum of artificials
    int total = n + m;
    RatMat T(m + 1, RatVec(total + 1, Rat(0)));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][total] = b[i];
        basis[i] = n + i;
    }
    for (int j = 0; j < n; ++j) {
        Rat s(0);
        for (int i = 0; i < m; ++i) s += A[i][j];
        T[m][j] = -s;  // reduced costs after pricing out artificials
    }
    Rat obj(0);
    for (int i = 0; i < m; ++i) obj += b[i];
    T[m][total] = -obj;
    while (true) {
        int enter = -1;
        for (int j = 0; j < n; ++j)  // Bland: lowest index, artificials never re-enter
            if (T[m][j] < 0) { enter = j; break; }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rat ratio = T[i][total] / T[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) throw std::logic_error("phase-1 unbounded");
        Rat pv = T[leave][enter];
        for (int j = 0; j <= total; ++j) T[leave][j] /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (int j = 0; j <= total; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (T[m][total] == 0) {
        out.feasible = true;
        out.x.assign(n, Rat(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) out.x[basis[i]] = T[i][total];
        return out;
    }
    // dual multipliers y_i = 1 - (final reduced cost of artificial i) satisfy
    // y^T A <= 0 componentwise and y^T b = optimum > 0; undo the row flips
    out.feasible = false;
    out.farkas.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) out.farkas[i] = (Rat(1) - T[m][n + i]) * Rat(sign[i]);
    return out;
}

}  // namespace qf
