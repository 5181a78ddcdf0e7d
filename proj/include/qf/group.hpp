#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qf {

enum class Family { Dihedral, Heisenberg, Meta144, Abelian };

// Finite group as an explicit multiplication table over element indices,
// with a distinguished generator list g_1..g_M of common order K.
struct FiniteGroup {
    std::string name;
    Family family;
    int order = 0;
    int identity = 0;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    std::vector<int> gens;
    int gen_order = 0;  // K
    std::vector<std::string> elem_names;
    std::vector<std::vector<int>> coords;  // family-specific element encoding

    std::vector<std::vector<int>> classes;  // conjugacy classes, identity first
    std::vector<int> class_of;

    int op(int a, int b) const { return mul[a][b]; }
    int power(int a, long k) const;
    int element_order(int a) const;
    int exponent() const;
    bool abelian() const;
    std::vector<int> center() const;
    int commutator(int a, int b) const;  // a^-1 b^-1 a b
    std::vector<int> derived_subgroup() const;
    std::vector<int> generated_by(const std::vector<int>& s) const;

    // g as a word in the generators (indices into gens), via BFS
    std::vector<int> word(int g) const;

    // exponent-sum map onto Z_K^2 for two-generator groups; defined when the
    // relators have zero exponent sum mod K (verified during construction)
    std::optional<std::pair<int, int>> abel_coords(int g) const;

    std::vector<int> class_reps() const {
        std::vector<int> r;
        for (const auto& c : classes) r.push_back(c[0]);
        return r;
    }

    void finalize();  // inverses, classes, names check

private:
    mutable std::vector<std::array<int, 2>> ab_;  // cached abelianization coords
    mutable bool ab_ok_ = false, ab_tried_ = false;
};

FiniteGroup build_dihedral(int n);     // order 2n, n even >= 4, two reflections
FiniteGroup build_heisenberg(int K);   // order K^3, K prime
FiniteGroup build_meta144();           // (Z2^2 (x) Z2^2) : Z3^2, order 144
FiniteGroup build_abelian(int K, int M);  // Z_K^M

FiniteGroup parse_group_spec(const std::string& spec);

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G);

// Meta144 helpers: element index <-> (v in F_2^4, h in Z_3^2)
int meta_encode(int v, int h1, int h2);
std::array<int, 3> meta_decode(int idx);

}  // namespace qf
