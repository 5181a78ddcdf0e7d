#include "qf/irreps.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace qf {

namespace {

bool is_prime_int(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Mat rot2(double angle) {
    Mat m(2, 2);
    m << cxd(std::cos(angle), 0), cxd(-std::sin(angle), 0), cxd(std::sin(angle), 0),
        cxd(std::cos(angle), 0);
    return m;
}

}  // namespace

int AbelianDual::pos_of(int elem) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), elem);
    if (it == elems.end() || *it != elem) throw std::runtime_error("element not in subgroup");
    return (int)(it - elems.begin());
}

int AbelianDual::value_exp(int label, int pos) const {
    int e = 0, l = label;
    for (int k = 0; k < rank; ++k) {
        int digit = l % q;
        l /= q;
        e += digit * coord[pos][k];
    }
    return ((e % q) + q) % q;
}

Cyclotomic AbelianDual::value(int label, int pos, int L) const {
    if (L % q != 0) throw std::runtime_error("cyclotomic level not divisible by subgroup exponent");
    return Cyclotomic::root_power(L, (L / q) * value_exp(label, pos));
}

cxd AbelianDual::value_c(int label, int pos) const {
    double a = 2.0 * M_PI * value_exp(label, pos) / q;
    return cxd(std::cos(a), std::sin(a));
}

int AbelianDual::label_add(int a, int b) const {
    int out = 0, mul = 1;
    for (int k = 0; k < rank; ++k) {
        out += ((a % q + b % q) % q) * mul;
        a /= q;
        b /= q;
        mul *= q;
    }
    return out;
}

std::vector<int> AbelianDual::subgroup_generated(const std::vector<int>& labels) const {
    std::set<int> span = {0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int s : std::vector<int>(span.begin(), span.end()))
            for (int l : labels) {
                int t = label_add(s, l);
                if (span.insert(t).second) grew = true;
            }
    }
    return std::vector<int>(span.begin(), span.end());
}

AbelianDual abelian_dual(const FiniteGroup& G, const std::vector<int>& A) {
    AbelianDual d;
    d.elems = A;
    std::sort(d.elems.begin(), d.elems.end());
    int n = (int)d.elems.size();
    for (int a : d.elems)
        for (int b : d.elems)
            if (G.op(a, b) != G.op(b, a)) throw std::runtime_error("subgroup is not abelian");

    std::vector<int> ord(n);
    int maxord = 1;
    for (int i = 0; i < n; ++i) {
        ord[i] = G.element_order(d.elems[i]);
        maxord = std::max(maxord, ord[i]);
    }

    if (maxord == n) {
        // cyclic: coordinates are discrete logs w.r.t. a fixed generator
        d.q = n;
        d.rank = 1;
        int gen = -1;
        for (int i = 0; i < n && gen < 0; ++i)
            if (ord[i] == n) gen = d.elems[i];
        d.basis = {gen};
        d.coord.assign(n, std::vector<int>(1, 0));
        int g = G.identity;
        for (int t = 0; t < n; ++t) {
            d.coord[d.pos_of(g)][0] = t;
            g = G.op(g, gen);
        }
        return d;
    }

    if (!is_prime_int(maxord))
        throw std::runtime_error("abelian subgroup is neither cyclic nor elementary abelian");
    for (int i = 0; i < n; ++i)
        if (ord[i] != 1 && ord[i] != maxord)
            throw std::runtime_error("abelian subgroup is neither cyclic nor elementary abelian");

    d.q = maxord;
    // greedy basis over F_q
    std::set<int> span = {G.identity};
    for (int e : d.elems) {
        if (span.count(e)) continue;
        d.basis.push_back(e);
        std::set<int> next;
        for (int s : span) {
            int p = s;
            for (int t = 0; t < d.q; ++t) {
                next.insert(p);
                p = G.op(p, e);
            }
        }
        span = next;
    }
    d.rank = (int)d.basis.size();
    if ((int)span.size() != n) throw std::runtime_error("basis construction failed");

    d.coord.assign(n, std::vector<int>(d.rank, 0));
    std::vector<int> tup(d.rank, 0);
    std::vector<bool> seen(n, false);
    while (true) {
        int g = G.identity;
        for (int k = 0; k < d.rank; ++k)
            for (int t = 0; t < tup[k]; ++t) g = G.op(g, d.basis[k]);
        int p = d.pos_of(g);
        if (seen[p]) throw std::runtime_error("basis coordinates are not unique");
        seen[p] = true;
        d.coord[p] = tup;
        int k = 0;
        while (k < d.rank && ++tup[k] == d.q) tup[k++] = 0;
        if (k == d.rank) break;
    }
    return d;
}

std::vector<DualOrbit> dual_orbit_decomposition(const FiniteGroup& G, const std::vector<int>& A,
                                                const std::vector<int>& H) {
    AbelianDual dual = abelian_dual(G, A);
    int n = dual.num_chars();

    // (h . chi)(a) = chi(h^-1 a h); read off the new label digit by digit on the basis
    auto act = [&](int h, int label) {
        int hinv = G.inv[h];
        int out = 0, mul = 1;
        for (int k = 0; k < dual.rank; ++k) {
            int moved = G.op(G.op(hinv, dual.basis[k]), h);
            out += dual.value_exp(label, dual.pos_of(moved)) * mul;
            mul *= dual.q;
        }
        return out;
    };

    std::vector<DualOrbit> orbits;
    std::vector<bool> seen(n, false);
    for (int l0 = 0; l0 < n; ++l0) {
        if (seen[l0]) continue;
        std::set<int> orb = {l0};
        std::vector<int> frontier = {l0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int l : frontier)
                for (int h : H) {
                    int m = act(h, l);
                    if (orb.insert(m).second) next.push_back(m);
                }
            frontier = next;
        }
        DualOrbit o;
        o.labels.assign(orb.begin(), orb.end());
        for (int l : o.labels) seen[l] = true;
        for (int h : H)
            if (act(h, o.labels[0]) == o.labels[0]) o.isotropy.push_back(h);
        orbits.push_back(std::move(o));
    }
    std::sort(orbits.begin(), orbits.end(), [](const DualOrbit& a, const DualOrbit& b) {
        if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
        return a.labels[0] < b.labels[0];
    });
    return orbits;
}

Irrep little_group_induce(const FiniteGroup& G, const std::vector<int>& A, const DualOrbit& O,
                          int rho_label) {
    AbelianDual dual = abelian_dual(G, A);
    AbelianDual iso = abelian_dual(G, O.isotropy);
    int L = G.exponent();
    int chi = O.labels[0];

    // the small subgroup S = A . H_chi and the extended character on it
    std::map<int, Cyclotomic> ext;
    for (int a : dual.elems)
        for (int h : iso.elems) {
            int s = G.op(a, h);
            Cyclotomic v = dual.value(chi, dual.pos_of(a), L);
            v *= iso.value(rho_label, iso.pos_of(h), L);
            auto it = ext.find(s);
            if (it == ext.end())
                ext.emplace(s, v);
            else if (!(it->second - v).is_zero())
                throw std::runtime_error("character extension is not well-defined");
        }
    if (ext.size() != dual.elems.size() * iso.elems.size())
        throw std::runtime_error("subgroup and isotropy overlap");
    for (auto& [s1, v1] : ext)
        for (auto& [s2, v2] : ext) {
            Cyclotomic prod = v1;
            prod *= v2;
            if (!(ext.at(G.op(s1, s2)) - prod).is_zero())
                throw std::runtime_error("extended character is not multiplicative");
        }

    // left transversal of S, greedily by element index
    std::vector<int> trans;
    std::vector<bool> covered(G.order, false);
    for (int g = 0; g < G.order; ++g) {
        if (covered[g]) continue;
        trans.push_back(g);
        for (auto& [s, v] : ext) covered[G.op(g, s)] = true;
    }
    int d = (int)trans.size();

    Irrep ir;
    ir.name = "ind[o=" + std::to_string(chi) + ",r=" + std::to_string(rho_label) + "]";
    ir.dim = d;
    ir.rep.resize(G.order);
    for (int g = 0; g < G.order; ++g) {
        Mat M = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int s = G.op(G.op(G.inv[trans[i]], g), trans[j]);
                auto it = ext.find(s);
                if (it != ext.end()) M(i, j) = it->second.to_complex();
            }
        ir.rep[g] = M;
    }
    for (int rep_elem : G.class_reps()) {
        Cyclotomic tr(L);
        for (int i = 0; i < d; ++i) {
            int s = G.op(G.op(G.inv[trans[i]], rep_elem), trans[i]);
            auto it = ext.find(s);
            if (it != ext.end()) tr += it->second;
        }
        ir.character_exact.push_back(tr);
        ir.character.push_back(tr.to_complex());
    }
    return ir;
}

namespace {

std::vector<Irrep> irreps_dihedral(const FiniteGroup& G) {
    int n = G.order / 2;
    int L = G.exponent();
    std::vector<Irrep> out;

    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
            Irrep ir;
            ir.name = "eps_" + std::to_string(u) + std::to_string(v);
            ir.dim = 1;
            ir.rep.resize(G.order);
            for (int g = 0; g < G.order; ++g) {
                auto ab = G.abel_coords(g);
                if (!ab) throw std::runtime_error("dihedral abelianization failed");
                int s = (u * ab->first + v * ab->second) % 2;
                Mat M(1, 1);
                M(0, 0) = s ? cxd(-1, 0) : cxd(1, 0);
                ir.rep[g] = M;
            }
            for (int rep_elem : G.class_reps()) {
                cxd val = ir.rep[rep_elem](0, 0);
                ir.character.push_back(val);
                ir.character_exact.push_back(Cyclotomic(L, Rat(val.real() > 0 ? 1 : -1)));
            }
            out.push_back(std::move(ir));
        }

    for (int h = 1; h <= n / 2 - 1; ++h) {
        Irrep ir;
        ir.name = "rho_" + std::to_string(h);
        ir.dim = 2;
        ir.rep.resize(G.order);
        Mat F(2, 2);
        F << cxd(1, 0), cxd(0, 0), cxd(0, 0), cxd(-1, 0);
        for (int g = 0; g < G.order; ++g) {
            int t = G.coords[g][0], s = G.coords[g][1];
            Mat M = rot2(2.0 * M_PI * h * t / n);
            if (s) M = M * F;
            ir.rep[g] = M;
        }
        for (int rep_elem : G.class_reps()) {
            int t = G.coords[rep_elem][0], s = G.coords[rep_elem][1];
            Cyclotomic tr(L);
            if (!s) {
                tr += Cyclotomic::root_power(L, (L / n) * (h * t % n));
                tr += Cyclotomic::root_power(L, (L / n) * ((n - h * t % n) % n));
            }
            ir.character_exact.push_back(tr);
            ir.character.push_back(tr.to_complex());
        }
        out.push_back(std::move(ir));
    }
    return out;
}

std::vector<Irrep> irreps_heisenberg(const FiniteGroup& G) {
    int K = G.gen_order;
    int L = G.exponent();
    int step = L / K;
    std::vector<Irrep> out;

    for (int al = 0; al < K; ++al)
        for (int be = 0; be < K; ++be) {
            Irrep ir;
            ir.name = "chi_" + std::to_string(al) + std::to_string(be);
            ir.dim = 1;
            ir.rep.resize(G.order);
            for (int g = 0; g < G.order; ++g) {
                int a = G.coords[g][0], b = G.coords[g][1];
                Mat M(1, 1);
                M(0, 0) = Cyclotomic::root_power(L, step * ((al * a + be * b) % K)).to_complex();
                ir.rep[g] = M;
            }
            for (int rep_elem : G.class_reps()) {
                int a = G.coords[rep_elem][0], b = G.coords[rep_elem][1];
                Cyclotomic v = Cyclotomic::root_power(L, step * ((al * a + be * b) % K));
                ir.character_exact.push_back(v);
                ir.character.push_back(v.to_complex());
            }
            out.push_back(std::move(ir));
        }

    for (int l = 1; l < K; ++l) {
        Irrep ir;
        ir.name = "pi_" + std::to_string(l);
        ir.dim = K;
        ir.rep.resize(G.order);
        for (int g = 0; g < G.order; ++g) {
            int a = G.coords[g][0], b = G.coords[g][1], c = G.coords[g][2];
            Mat M = Mat::Zero(K, K);
            for (int j = 0; j < K; ++j)
                M((j + b) % K, j) =
                    Cyclotomic::root_power(L, step * ((l * (c + a * j)) % K)).to_complex();
            ir.rep[g] = M;
        }
        for (int rep_elem : G.class_reps()) {
            int a = G.coords[rep_elem][0], b = G.coords[rep_elem][1], c = G.coords[rep_elem][2];
            Cyclotomic tr(L);
            if (a == 0 && b == 0) {
                Cyclotomic v = Cyclotomic::root_power(L, step * ((l * c) % K));
                v *= Rat(K);
                tr += v;
            }
            ir.character_exact.push_back(tr);
            ir.character.push_back(tr.to_complex());
        }
        out.push_back(std::move(ir));
    }
    return out;
}

std::vector<Irrep> irreps_abelian(const FiniteGroup& G) {
    int K = G.gen_order, M = (int)G.gens.size();
    std::vector<Irrep> out;
    std::vector<int> dv(M, 0);
    while (true) {
        Irrep ir;
        ir.name = "chi";
        for (int j = 0; j < M; ++j) ir.name += "_" + std::to_string(dv[j]);
        ir.dim = 1;
        ir.rep.resize(G.order);
        for (int g = 0; g < G.order; ++g) {
            int e = 0;
            for (int j = 0; j < M; ++j) e += dv[j] * G.coords[g][j];
            Mat Mm(1, 1);
            Mm(0, 0) = Cyclotomic::root_power(K, e % K).to_complex();
            ir.rep[g] = Mm;
        }
        for (int rep_elem : G.class_reps()) {
            int e = 0;
            for (int j = 0; j < M; ++j) e += dv[j] * G.coords[rep_elem][j];
            Cyclotomic v = Cyclotomic::root_power(K, e % K);
            ir.character_exact.push_back(v);
            ir.character.push_back(v.to_complex());
        }
        out.push_back(std::move(ir));
        int k = 0;
        while (k < M && ++dv[k] == K) dv[k++] = 0;
        if (k == M) break;
    }
    return out;
}

std::vector<Irrep> irreps_meta144(const FiniteGroup& G) {
    std::vector<int> A, H;
    for (int g = 0; g < G.order; ++g) {
        if (G.coords[g][1] == 0 && G.coords[g][2] == 0) A.push_back(g);
        if (G.coords[g][0] == 0) H.push_back(g);
    }
    std::vector<Irrep> out;
    for (const DualOrbit& O : dual_orbit_decomposition(G, A, H)) {
        int niso = (int)O.isotropy.size();
        for (int r = 0; r < niso; ++r) out.push_back(little_group_induce(G, A, O, r));
    }
    return out;
}

}  // namespace

std::vector<Irrep> irreps(const FiniteGroup& G) {
    std::vector<Irrep> out;
    switch (G.family) {
        case Family::Dihedral: out = irreps_dihedral(G); break;
        case Family::Heisenberg: out = irreps_heisenberg(G); break;
        case Family::Abelian: out = irreps_abelian(G); break;
        case Family::Meta144: out = irreps_meta144(G); break;
    }
    Int dimsq = 0;
    for (const Irrep& ir : out) dimsq += Int(ir.dim) * ir.dim;
    if (dimsq != G.order) throw std::runtime_error("irreducible dimensions do not sum to |G|");
    return out;
}

}  // namespace qf
