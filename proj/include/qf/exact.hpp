#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

double to_double(const Rat& r);

// Element of Q(w), w = exp(2*pi*i/L), stored as a length-L rational
// coefficient vector in the powers 1, w, ..., w^{L-1} and reduced mod the
// L-th cyclotomic polynomial on demand.  Zero testing and coordinate
// extraction are exact.
class Cyclotomic {
public:
    Cyclotomic() : L_(1), c_(1, Rat(0)) {}
    explicit Cyclotomic(int L) : L_(L), c_(L, Rat(0)) {}
    Cyclotomic(int L, const Rat& constant) : L_(L), c_(L, Rat(0)) { c_[0] = constant; }

    static Cyclotomic root_power(int L, long k);  // w^k

    int level() const { return L_; }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rat& s);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rat& s) { return a *= s; }

    Cyclotomic conj() const;  // w^k -> w^{L-k}

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const;  // requires is_rational()

    // coordinates in the power basis 1, w, ..., w^{phi(L)-1} after reduction
    std::vector<Rat> coords() const;

    std::complex<double> to_complex() const;

private:
    void reduce() const;
    int L_;
    mutable std::vector<Rat> c_;
};

// cyclotomic polynomial Phi_L as integer coefficients, degree phi(L)
std::vector<Int> cyclotomic_poly(int L);
int euler_phi(int L);

// ---- exact rational linear algebra ----

using RatMat = std::vector<std::vector<Rat>>;
using RatVec = std::vector<Rat>;

// Reduced row echelon form of A in place; returns pivot column per row.
// If transform != nullptr it receives T with T*A_original = A_final.
std::vector<int> rref(RatMat& A, RatMat* transform = nullptr);

int rank(RatMat A);

// Solve A x = b exactly.  Returns {consistent, particular solution,
// nullspace basis, farkas}.  On inconsistency, farkas is a row vector y
// with y^T A = 0 and y^T b != 0.
struct LinSolve {
    bool consistent = false;
    RatVec x;
    std::vector<RatVec> nullspace;
    RatVec farkas;
};
LinSolve solve_linear(const RatMat& A, const RatVec& b);

// Minimum Euclidean norm point of the affine set {x : A x = b}.
// Returns consistent=false if the set is empty.
LinSolve min_norm_affine(const RatMat& A, const RatVec& b);

// Phase-1 simplex (Bland's rule) for {x >= 0 : A x = b}.  Either a feasible
// point or a Farkas certificate y with y^T A <= 0 componentwise and
// y^T b > 0.
struct Phase1 {
    bool feasible = false;
    RatVec x;
    RatVec farkas;
};
Phase1 simplex_feasible(RatMat A, RatVec b);

}  // namespace qf
