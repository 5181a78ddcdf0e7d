#pragma once

#include "qf/exact.hpp"
#include "qf/group.hpp"
#include "qf/rng.hpp"

namespace qf {

struct Irrep {
    std::string name;
    int dim = 0;
    std::vector<Mat> rep;                     // one unitary per element index
    std::vector<cxd> character;               // per conjugacy class
    std::vector<Cyclotomic> character_exact;  // per class, level = exponent(G)
};

// Complete irreducible list (sum of dim^2 = |G|): closed forms for the
// dihedral / Heisenberg / abelian families, little-group induction for the
// order-144 metabelian group.
std::vector<Irrep> irreps(const FiniteGroup& G);

// Character machinery for an abelian subgroup A (cyclic, or elementary
// abelian of prime exponent).  Characters are labeled 0..|A|-1; label
// arithmetic is the dual group law.
struct AbelianDual {
    std::vector<int> elems;   // sorted subgroup element indices
    int q = 1;                // per-coordinate order
    int rank = 0;             // number of coordinates (q^rank = |A|)
    std::vector<int> basis;   // basis elements
    std::vector<std::vector<int>> coord;  // position in elems -> coordinates

    int num_chars() const { return (int)elems.size(); }
    int pos_of(int elem) const;
    // value of character `label` at subgroup element position, as exponent of
    // w_q; and exactly at cyclotomic level L (q | L)
    int value_exp(int label, int pos) const;
    Cyclotomic value(int label, int pos, int L) const;
    cxd value_c(int label, int pos) const;
    int label_add(int a, int b) const;
    std::vector<int> subgroup_generated(const std::vector<int>& labels) const;
};
AbelianDual abelian_dual(const FiniteGroup& G, const std::vector<int>& A);

struct DualOrbit {
    std::vector<int> labels;    // orbit character labels, sorted; labels[0] is the representative
    std::vector<int> isotropy;  // elements of H fixing the representative
};
// Orbits of H acting by conjugation on the characters of A.
std::vector<DualOrbit> dual_orbit_decomposition(const FiniteGroup& G, const std::vector<int>& A,
                                                const std::vector<int>& H);

// Induce chi (x) rho from the subgroup A . H_chi up to G.  rho_label indexes
// a character of the isotropy group.  Throws if chi (x) rho fails to be a
// homomorphism on the small subgroup.
Irrep little_group_induce(const FiniteGroup& G, const std::vector<int>& A, const DualOrbit& O,
                          int rho_label);

}  // namespace qf
