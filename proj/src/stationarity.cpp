#include "qf/stationarity.hpp"

#include <algorithm>
#include <set>

namespace qf {

std::vector<cxd> stationarity_residual(const std::vector<ModelComponent>& comps,
                                       const std::vector<double>& w) {
    if (comps.empty()) throw std::runtime_error("no components");
    int ncl = (int)comps[0].trace.size();
    std::vector<cxd> res(ncl, cxd(0, 0));
    for (int c = 0; c < ncl; ++c) {
        for (size_t i = 0; i < comps.size(); ++i) res[c] += w[i] * comps[i].trace[c];
        if (c == 0) res[c] -= cxd(1, 0);
    }
    return res;
}

std::vector<Cyclotomic> stationarity_residual_exact(const std::vector<ModelComponent>& comps,
                                                    const std::vector<Rat>& w) {
    int L = comps[0].group->exponent();
    int ncl = (int)comps[0].trace_exact.size();
    std::vector<Cyclotomic> res(ncl, Cyclotomic(L));
    for (int c = 0; c < ncl; ++c) {
        for (size_t i = 0; i < comps.size(); ++i) {
            Cyclotomic t = comps[i].trace_exact[c];
            t *= w[i];
            res[c] += t;
        }
        if (c == 0) res[c] -= Cyclotomic(L, Rat(1));
    }
    return res;
}

namespace {

// Rational system: for every nonidentity class, each cyclotomic power-basis
// coordinate of sum_i w_i phi_i(class) must vanish; plus the mass-one row.
void build_system(const std::vector<ModelComponent>& comps, RatMat& A, RatVec& b,
                  std::vector<std::string>& names) {
    const FiniteGroup& G = *comps[0].group;
    int n = (int)comps.size();
    int ncl = (int)G.classes.size();
    int phi = euler_phi(G.exponent());

    std::vector<std::vector<std::vector<Rat>>> co(n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < ncl; ++c) co[i].push_back(comps[i].trace_exact[c].coords());

    for (int c = 1; c < ncl; ++c)
        for (int k = 0; k < phi; ++k) {
            RatVec row(n);
            bool nonzero = false;
            for (int i = 0; i < n; ++i) {
                row[i] = co[i][c][k];
                if (row[i] != 0) nonzero = true;
            }
            if (!nonzero) continue;
            A.push_back(row);
            b.push_back(Rat(0));
            names.push_back("class " + G.elem_names[G.classes[c][0]] + " coord " +
                            std::to_string(k));
        }
    A.push_back(RatVec(n, Rat(1)));
    b.push_back(Rat(1));
    names.push_back("mass");
}

Rat norm2(const RatVec& v) {
    Rat s(0);
    for (const Rat& x : v) s += x * x;
    return s;
}

bool check_farkas(const RatMat& A, const RatVec& b, const RatVec& y) {
    int n = (int)A[0].size();
    Rat yb(0);
    for (size_t r = 0; r < A.size(); ++r) yb += y[r] * b[r];
    if (yb <= 0) return false;
    for (int j = 0; j < n; ++j) {
        Rat yA(0);
        for (size_t r = 0; r < A.size(); ++r) yA += y[r] * A[r][j];
        if (yA > 0) return false;
    }
    return true;
}

}  // namespace

StationarityReport solve_weights(const std::vector<ModelComponent>& comps) {
    StationarityReport rep;
    build_system(comps, rep.rows, rep.rhs, rep.row_names);
    int n = (int)comps.size();
    int m = (int)rep.rows.size();

    LinSolve eq = solve_linear(rep.rows, rep.rhs);
    if (!eq.consistent) {
        rep.feasible = false;
        rep.farkas = eq.farkas;
        Rat yb(0);
        for (int r = 0; r < m; ++r) yb += rep.farkas[r] * rep.rhs[r];
        if (yb < 0)
            for (int r = 0; r < m; ++r) rep.farkas[r] = -rep.farkas[r];
        rep.certificate_checked = check_farkas(rep.rows, rep.rhs, rep.farkas);
        if (!rep.certificate_checked) throw std::runtime_error("invalid infeasibility certificate");
        return rep;
    }

    // minimum-norm feasible point: the minimizer over the polytope lies in the
    // relative interior of some face, where it agrees with the unconstrained
    // affine minimizer of that face; scan the faces
    bool have = false;
    Rat bestnorm(0);
    RatVec best;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (!(mask & (1ul << i))) keep.push_back(i);
        if (keep.empty()) continue;
        RatMat Ared(m, RatVec(keep.size()));
        for (int r = 0; r < m; ++r)
            for (size_t j = 0; j < keep.size(); ++j) Ared[r][j] = rep.rows[r][keep[j]];
        LinSolve mn = min_norm_affine(Ared, rep.rhs);
        if (!mn.consistent) continue;
        bool nonneg = true;
        for (const Rat& x : mn.x)
            if (x < 0) {
                nonneg = false;
                break;
            }
        if (!nonneg) continue;
        RatVec w(n, Rat(0));
        for (size_t j = 0; j < keep.size(); ++j) w[keep[j]] = mn.x[j];
        Rat nn = norm2(w);
        if (!have || nn < bestnorm) {
            have = true;
            bestnorm = nn;
            best = w;
        }
        if (mask == 0 && nonneg) break;  // unconstrained minimum is already feasible
    }

    if (!have) {
        Phase1 ph = simplex_feasible(rep.rows, rep.rhs);
        if (ph.feasible) throw std::runtime_error("face scan missed a feasible polytope");
        rep.feasible = false;
        rep.farkas = ph.farkas;
        rep.certificate_checked = check_farkas(rep.rows, rep.rhs, rep.farkas);
        if (!rep.certificate_checked) throw std::runtime_error("invalid infeasibility certificate");
        return rep;
    }

    rep.feasible = true;
    rep.weights = best;
    for (const Rat& x : best) rep.weights_d.push_back(to_double(x));

    std::vector<Cyclotomic> res = stationarity_residual_exact(comps, best);
    double mx = 0;
    for (const Cyclotomic& r : res) mx = std::max(mx, std::abs(r.to_complex()));
    rep.max_residual = mx;
    for (const Cyclotomic& r : res)
        if (!r.is_zero()) throw std::runtime_error("exact solution has nonzero residual");

    std::vector<int> supp;
    for (int i = 0; i < n; ++i)
        if (best[i] > 0) supp.push_back(i);
    RatMat Asupp(m, RatVec(supp.size()));
    for (int r = 0; r < m; ++r)
        for (size_t j = 0; j < supp.size(); ++j) Asupp[r][j] = rep.rows[r][supp[j]];
    rep.polytope_dim = (int)supp.size() - rank(Asupp);
    return rep;
}

StationarityReport verify_weights(const std::vector<ModelComponent>& comps,
                                  const std::vector<double>& w, double tol) {
    StationarityReport rep;
    if (w.size() != comps.size()) throw std::runtime_error("weight count mismatch");
    std::vector<cxd> res = stationarity_residual(comps, w);
    double mx = 0;
    for (cxd r : res) mx = std::max(mx, std::abs(r));
    double wsum = 0, wmin = 0;
    for (double x : w) {
        wsum += x;
        wmin = std::min(wmin, x);
    }
    rep.max_residual = mx;
    rep.weights_d = w;
    rep.feasible = mx < tol && wmin > -tol && std::abs(wsum - 1) < tol;
    return rep;
}

std::vector<std::array<long, 2>> orbit_sum_table(const FiniteGroup& meta) {
    if (meta.family != Family::Meta144) throw std::runtime_error("orbit table needs the order-144 group");
    std::vector<int> A, H;
    for (int g = 0; g < meta.order; ++g) {
        if (meta.coords[g][1] == 0 && meta.coords[g][2] == 0) A.push_back(g);
        if (meta.coords[g][0] == 0) H.push_back(g);
    }
    auto orbits = dual_orbit_decomposition(meta, A, H);
    std::vector<const DualOrbit*> size3;
    for (const auto& o : orbits)
        if (o.labels.size() == 3) size3.push_back(&o);
    if (size3.size() != 2) throw std::runtime_error("expected two size-3 dual orbits");

    int xybar = meta_encode(0, 1, 1);
    auto fixes_xy = [&](const DualOrbit& o) {
        return std::find(o.isotropy.begin(), o.isotropy.end(), xybar) != o.isotropy.end();
    };
    const DualOrbit* O1 = fixes_xy(*size3[0]) ? size3[0] : size3[1];
    const DualOrbit* O2 = (O1 == size3[0]) ? size3[1] : size3[0];
    if (!fixes_xy(*O1) || fixes_xy(*O2))
        throw std::runtime_error("orbit isotropy pattern is not the expected one");

    AbelianDual dual = abelian_dual(meta, A);
    std::vector<int> probes = {meta_encode(1, 0, 0), meta_encode(9, 0, 0), meta_encode(6, 0, 0)};
    std::vector<std::array<long, 2>> table;
    for (int a : probes) {
        std::array<long, 2> row = {0, 0};
        int pos = dual.pos_of(a);
        for (int l : O1->labels) row[0] += dual.value_exp(l, pos) ? -1 : 1;
        for (int l : O2->labels) row[1] += dual.value_exp(l, pos) ? -1 : 1;
        table.push_back(row);
    }
    return table;
}

std::vector<cxd> convolution_power(const std::vector<cxd>& phi, int r) {
    std::vector<cxd> out(phi.size());
    for (size_t c = 0; c < phi.size(); ++c) out[c] = std::pow(phi[c], r);
    return out;
}

std::pair<cxd, int> cesaro_haar(cxd phival, int R) {
    cxd sum(0, 0), p(1, 0);
    for (int r = 1; r <= R; ++r) {
        p *= phival;
        sum += p;
    }
    int limit = std::abs(phival - cxd(1, 0)) < 1e-9 ? 1 : 0;
    return {sum / (double)R, limit};
}

KernelReport kernel_intersection(const FiniteGroup& G, const std::vector<ModelComponent>& comps) {
    KernelReport rep;
    std::set<int> inter;
    for (int g = 0; g < G.order; ++g) inter.insert(g);
    for (const ModelComponent& c : comps) {
        std::set<int> ker;
        Mat I = Mat::Identity(c.rep.K, c.rep.K);
        for (int g : inter)
            if ((c.rep.elem_mats[g] - I).cwiseAbs().maxCoeff() < 1e-8) ker.insert(g);
        inter = ker;
    }
    rep.intersection.assign(inter.begin(), inter.end());
    rep.trivial = rep.intersection == std::vector<int>{G.identity};
    return rep;
}

std::vector<std::pair<int, int>> generic_subgroups(int K) {
    for (int d = 2; d * d <= K; ++d)
        if (K % d == 0) throw std::runtime_error("generic subgroups need prime K");
    if (K < 2) throw std::runtime_error("generic subgroups need prime K");
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j < K; ++j) out.push_back({1, j});
    return out;
}

FaithfulnessWitness inner_faithfulness_certificate(const FiniteGroup& G) {
    FaithfulnessWitness w;
    int K = G.gen_order;
    std::vector<int> A = G.derived_subgroup();
    AbelianDual dual = abelian_dual(G, A);

    // lifts of the abelianization Z_K x Z_K, lowest element index per coset
    std::vector<int> lift(K * K, -1);
    int kernel_size = 0;
    for (int g = 0; g < G.order; ++g) {
        auto ab = G.abel_coords(g);
        if (!ab) throw std::runtime_error("abelianization is not Z_K x Z_K");
        if (ab->first == 0 && ab->second == 0) kernel_size++;
        int& slot = lift[ab->first * K + ab->second];
        if (slot < 0) slot = g;
    }
    if (kernel_size != (int)A.size())
        throw std::runtime_error("derived subgroup does not exhaust the abelianization kernel");

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

    std::set<int> fixed_set;
    int chosen_j = -1, chosen_chi = -1;
    for (auto [s, j] : generic_subgroups(K)) {
        int h = lift[s * K + j];
        for (int l = 0; l < dual.num_chars(); ++l)
            if (act(h, l) == l) {
                fixed_set.insert(l);
                if (l != 0 && chosen_chi < 0) {
                    chosen_j = j;
                    chosen_chi = l;
                }
            }
    }
    w.char_labels.assign(fixed_set.begin(), fixed_set.end());
    w.labels_generate =
        (int)dual.subgroup_generated(w.char_labels).size() == dual.num_chars();

    if (chosen_chi < 0) {
        w.detail = "no nontrivial character is fixed by a generic subgroup";
        return w;
    }

    // induce the chosen character from psi^{-1}(<(1,j)>) back up, extending by
    // a principal K-th root
    int s0 = lift[1 * K + chosen_j];
    std::set<std::pair<int, int>> C;  // subgroup generated by (1, j)
    {
        int a = 0, b = 0;
        do {
            C.insert({a, b});
            a = (a + 1) % K;
            b = (b + chosen_j) % K;
        } while (a != 0 || b != 0);
    }
    int s0K = G.identity;
    for (int t = 0; t < K; ++t) s0K = G.op(s0K, s0);
    int eexp = dual.value_exp(chosen_chi, dual.pos_of(s0K));
    cxd mu = std::polar(1.0, 2.0 * M_PI * eexp / (dual.q * K));

    std::vector<int> s0pow(K);
    s0pow[0] = G.identity;
    for (int t = 1; t < K; ++t) s0pow[t] = G.op(s0pow[t - 1], s0);
    auto ext = [&](int s) -> std::pair<bool, cxd> {
        auto ab = G.abel_coords(s);
        if (!C.count(*ab)) return {false, cxd(0, 0)};
        int t = ab->first;  // psi(s) = t (1, j)
        int a = G.op(s, G.inv[s0pow[t]]);
        double ang = 2.0 * M_PI * dual.value_exp(chosen_chi, dual.pos_of(a)) / dual.q;
        return {true, std::polar(1.0, ang) * std::pow(mu, t)};
    };

    int x = G.gens[0];
    std::vector<int> trans(K);
    trans[0] = G.identity;
    for (int i = 1; i < K; ++i) trans[i] = G.op(trans[i - 1], x);

    w.induced.K = K;
    for (int gi : G.gens) {
        Mat M = Mat::Zero(K, K);
        for (int i = 0; i < K; ++i)
            for (int j2 = 0; j2 < K; ++j2) {
                auto [in, val] = ext(G.op(G.op(G.inv[trans[i]], gi), trans[j2]));
                if (in) M(i, j2) = val;
            }
        w.induced.gen_mats.push_back(M);
    }
    w.induced_diag = is_quasiflat(w.induced.gen_mats, K);

    w.ok = w.labels_generate && w.induced_diag.ok;
    w.detail = "fixed characters: " + std::to_string(w.char_labels.size()) + "/" +
               std::to_string(dual.num_chars()) +
               (w.labels_generate ? ", generate the dual" : ", do NOT generate the dual") +
               "; induced representation from character " + std::to_string(chosen_chi) +
               " at j=" + std::to_string(chosen_j) +
               (w.induced_diag.ok ? " is quasi-flat" : " FAILS quasi-flatness");
    return w;
}

}  // namespace qf
