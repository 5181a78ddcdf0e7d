#pragma once

#include "qf/modelspace.hpp"

namespace qf {

// Defect of sum_c w_c phi_c against the delta at the identity, one complex
// number per conjugacy class.
std::vector<cxd> stationarity_residual(const std::vector<ModelComponent>& comps,
                                       const std::vector<double>& w);
std::vector<Cyclotomic> stationarity_residual_exact(const std::vector<ModelComponent>& comps,
                                                    const std::vector<Rat>& w);

struct StationarityReport {
    bool feasible = false;
    std::vector<Rat> weights;      // exact; minimal euclidean norm among feasible points
    std::vector<double> weights_d;
    double max_residual = 0.0;     // of the returned weights (0 when exact)
    int polytope_dim = -1;         // dimension of the face containing the solution

    // infeasibility data: multipliers y with y^T A <= 0 and y^T b > 0 over the
    // stated rational system (rows = real equations, last row = mass one)
    RatMat rows;
    RatVec rhs;
    std::vector<std::string> row_names;
    RatVec farkas;
    bool certificate_checked = false;
};

// Exact feasibility of the stationarity equations over the nonnegative
// orthant, with mass one.  Feasible: returns the minimum-norm weight vector.
// Infeasible: returns a rational certificate, re-verified before returning.
StationarityReport solve_weights(const std::vector<ModelComponent>& comps);

// Check externally supplied weights (e.g. parsed from a file).
StationarityReport verify_weights(const std::vector<ModelComponent>& comps,
                                  const std::vector<double>& w, double tol = 1e-9);

// The two character-orbit probes of the order-144 group: rows are the three
// probe elements of the translation subgroup, columns the two size-3 orbit
// character sums.  Exact integers.
std::vector<std::array<long, 2>> orbit_sum_table(const FiniteGroup& meta);

// phi^r pointwise and its Cesaro average (1/R) sum_{r=1..R} phi(g)^r, plus
// the exact limit (1 when phi(g) = 1, else 0 for |phi(g)| <= 1).
std::vector<cxd> convolution_power(const std::vector<cxd>& phi, int r);
std::pair<cxd, int> cesaro_haar(cxd phival, int R);

// Elements acting as the identity in every component (tolerance 1e-8).
struct KernelReport {
    std::vector<int> intersection;  // sorted element indices
    bool trivial = false;
};
KernelReport kernel_intersection(const FiniteGroup& G, const std::vector<ModelComponent>& comps);

// Generators (1, j) of the generic index-K subgroups of Z_K x Z_K, K prime.
std::vector<std::pair<int, int>> generic_subgroups(int K);

struct FaithfulnessWitness {
    bool ok = false;
    std::string detail;
    std::vector<int> char_labels;   // characters of the translation subgroup fixed
                                    // by some generic subgroup
    bool labels_generate = false;   // ... and they generate the whole dual
    RepPoint induced;               // induced representation from one of them
    QuasiFlatDiag induced_diag;
};

// Inner faithfulness criterion for a metabelian group with two generators of
// prime order K: characters of the derived subgroup fixed by a generic
// subgroup generate the dual, and one induced representation is exhibited as
// a model-space point.
FaithfulnessWitness inner_faithfulness_certificate(const FiniteGroup& G);

}  // namespace qf
