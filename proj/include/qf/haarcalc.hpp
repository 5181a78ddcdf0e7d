#pragma once

#include "qf/stationarity.hpp"

namespace qf {

// Moment matrix of an array of vectors xi_{ij} (rank-one pieces of a magic
// unitary): indexed by p-tuples I, J in [N]^p,
//   T_p[I, J] = (1/K) prod_t <xi_{i_t j_t}, xi_{i_{t+1} j_{t+1}}>  (cyclic).
struct TpMatrix {
    int p = 0, N = 0;
    Mat m;
    long idx(const std::vector<int>& multi) const {
        long r = 0;
        for (int v : multi) r = r * N + v;
        return r;
    }
};

// Dense N^p x N^p is refused above 4096 rows.
TpMatrix tp_of_xi(const std::vector<std::vector<Vec>>& xi, int p, int K);

// Monte Carlo average of T_p over sampled points of one component; the
// samples are returned for reuse.
TpMatrix tp_integral(const ModelComponent& c, int p, int nsamples, std::uint64_t seed,
                     std::vector<std::vector<std::vector<Vec>>>* samples = nullptr);

// Exact T_p of a component from its normalized trace:
//   (1/K^p) sum_{k in [K]^p} w^{sum k_t (a_t - b_t)} phi(g_{i_1}^{k_1} ... g_{i_p}^{k_p})
// on index pairs I = (i, a), J = (i, b) with matching generator blocks.
TpMatrix tp_exact(const ModelComponent& c, int p);

// entry of T^r
cxd truncated_moment(const TpMatrix& T, int r, const std::vector<int>& I,
                     const std::vector<int>& J);

// Both sides of the trace identity connecting powers of the averaged moment
// matrix to Gram matrices of sample tuples:
//   (1/K^p) Tr(That_p^r)  ==  K^{-r} avg_X Tr(G_X^p)
// where X runs over r-tuples of samples and
//   G_X[(i_1..i_r),(j_1..j_r)] = (1/K) prod_t <xi^{x_t}_{i_t i_{t+1}}, xi^{x_t}_{j_t j_{t+1}}>.
struct GramCheck {
    cxd t_side, g_side;
    double abs_error = 0.0;
};
GramCheck gram_law_check(const std::vector<std::vector<std::vector<Vec>>>& samples, int p, int r,
                         int K);

// Exact word moments of the flattened generator sum a = sum_i sum_k g_i^k:
// m_p = (coefficient of e in a^p) / N^p with N = K * M.
struct MomentSequence {
    int N = 0;
    std::vector<Rat> m;  // m[0] = 1
    std::vector<double> md;
};
MomentSequence word_moments_exact(const FiniteGroup& G, int pmax);

// Mass of the atom of the spectral measure at 1, from the tail window
// (1/(R - floor(R/2))) sum_{p=floor(R/2)+1}^{R} m_p.
double atom_at_one(const MomentSequence& m, int R);

// true iff sup_p |m_p|^{1/p} reaches 1 within 1e-2
bool kesten_support(const MomentSequence& m);

// Ball volumes |B_n| for word metrics: a finite group with S = {e} u gens u
// inverses, the integer line with S = {0, +1, -1}, and the infinite dihedral
// group with its two reflection generators.
std::vector<long> growth_series(const FiniteGroup& G, int nmax);
std::vector<long> growth_series_line(int nmax);
std::vector<long> growth_series_infinite_dihedral(int nmax);

// Monte Carlo estimate of the order-p moment of the normalized character of
// the generator sum under the weighted model measure, sampled in fixed
// 256-draw chunks with per-chunk derived seeds.  r > 1 estimates the same
// moment against the r-th convolution power of the model state (r independent
// point draws per sample, word-resolved); for a stationary measure the target
// is word_moments_exact at every r.
struct MomentEstimate {
    double mean = 0.0, stderr_ = 0.0;
    int samples = 0;
};
MomentEstimate mc_character_moment(const std::vector<ModelComponent>& comps,
                                   const std::vector<double>& weights, int p, int nsamples,
                                   std::uint64_t seed, int r = 1);

}  // namespace qf
