#pragma once

#include "qf/irreps.hpp"

namespace qf {

// One representation point: unitaries for the generators (and, when built
// from the component representative, for every element).
struct RepPoint {
    int K = 0;
    std::vector<Mat> gen_mats;
    std::vector<Mat> elem_mats;  // empty unless built from irrep tables
};

struct QuasiFlatDiag {
    bool ok = false;
    int bad_gen = -1;
    std::string message;
};

// A generator image is quasi-flat when its spectrum consists of every K-th
// root of unity exactly once.  Eigenvalues are matched to the nearest root at
// tolerance 1e-8; ties and double hits are rejected.
QuasiFlatDiag is_quasiflat(const std::vector<Mat>& gen_mats, int K);

struct ModelComponent {
    enum Kind { Loose, Solid, Mixed };
    Kind kind = Loose;
    std::string label;
    std::vector<std::pair<std::string, int>> constituents;  // irrep name, multiplicity
    RepPoint rep;                                           // representative point
    std::vector<cxd> trace;                                 // normalized trace per class
    std::vector<Cyclotomic> trace_exact;
    int commutant_dim = 0;
    const FiniteGroup* group = nullptr;
};

// All components of the model space of K x K quasi-flat representations:
// multisets of irreducibles of total dimension K whose direct sum has
// quasi-flat generator images.
std::vector<ModelComponent> enumerate_components(const FiniteGroup& G, int K);

// Conjugate the representative by a Haar-random unitary.
RepPoint sample_point(const ModelComponent& c, std::uint64_t seed);
RepPoint sample_point(const ModelComponent& c, Rng& rng);

// Fourier orthogonal-projection array of a representation point: for each
// generator the K x K block P(i)_{ab} = (1/K) sum_k w^{k(a-b)} rho(g_i)^k,
// stored through rank-one vectors xi with P = xi xi*.
struct MagicUnitaryModel {
    int K = 0, M = 0;
    std::vector<std::vector<Vec>> xi;  // xi[i][d]: unit eigenvector of rho(g_i) at w^d
    // P(i)_{ab} = xi[i][(b-a) mod K] xi[i][(b-a) mod K]*   (block circulant)
    Mat block(int i, int a, int b) const;
};
MagicUnitaryModel fourier_magic(const RepPoint& p);

// Flat N x N array of vectors (N = K*M) with xi_{(ia)(jb)} = delta_ij xi^i_{ab};
// the input format of the moment matrices.
std::vector<std::vector<Vec>> magic_array(const MagicUnitaryModel& m);

// All K-tuples (with repetition, ordered) of permutations from perms whose
// values at every point are pairwise distinct.  perms must be closed under
// composition and inverses and contain the identity.
std::vector<std::vector<int>> sparse_latin_squares(const std::vector<std::vector<int>>& perms,
                                                   int K);

// Small named permutation groups for the CLI: "z2" in S_2, "z4" and "z22" in S_4.
std::vector<std::vector<int>> perm_group(const std::string& name);

}  // namespace qf
