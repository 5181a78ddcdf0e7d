#include "qf/modelspace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace qf {

namespace {

cxd root_of_unity(int K, int d) {
    double a = 2.0 * M_PI * d / K;
    return cxd(std::cos(a), std::sin(a));
}

}  // namespace

QuasiFlatDiag is_quasiflat(const std::vector<Mat>& gen_mats, int K) {
    QuasiFlatDiag diag;
    for (int i = 0; i < (int)gen_mats.size(); ++i) {
        const Mat& U = gen_mats[i];
        if (U.rows() != K || U.cols() != K) {
            diag.bad_gen = i;
            diag.message = "generator image is not K x K";
            return diag;
        }
        Eigen::ComplexEigenSolver<Mat> es(U, false);
        std::vector<int> hits(K, 0);
        for (int j = 0; j < K; ++j) {
            cxd lam = es.eigenvalues()(j);
            int best = -1;
            double bestd = 1e9;
            for (int d = 0; d < K; ++d) {
                double dist = std::abs(lam - root_of_unity(K, d));
                if (dist < bestd) {
                    bestd = dist;
                    best = d;
                }
            }
            if (bestd > 1e-8) {
                diag.bad_gen = i;
                diag.message = "eigenvalue " + std::to_string(lam.real()) + "+" +
                               std::to_string(lam.imag()) + "i is not a K-th root of unity";
                return diag;
            }
            hits[best]++;
        }
        for (int d = 0; d < K; ++d)
            if (hits[d] != 1) {
                diag.bad_gen = i;
                diag.message = "root of unity index " + std::to_string(d) + " has multiplicity " +
                               std::to_string(hits[d]);
                return diag;
            }
    }
    diag.ok = true;
    return diag;
}

namespace {

// value of a one-dimensional constituent at an element, as a root index
int root_index_of(const Irrep& ir, int elem, int K) {
    cxd v = ir.rep[elem](0, 0);
    int best = 0;
    double bestd = 1e9;
    for (int d = 0; d < K; ++d) {
        double dist = std::abs(v - root_of_unity(K, d));
        if (dist < bestd) {
            bestd = dist;
            best = d;
        }
    }
    if (bestd > 1e-8) throw std::runtime_error("character value is not a root of unity");
    return best;
}

ModelComponent make_component(const FiniteGroup& G, const std::vector<Irrep>& irr,
                              const std::vector<int>& counts, int K) {
    ModelComponent c;
    c.group = &G;

    std::vector<int> parts;  // irrep indices with multiplicity
    for (int t = 0; t < (int)irr.size(); ++t)
        for (int m = 0; m < counts[t]; ++m) parts.push_back(t);

    c.rep.K = K;
    c.rep.elem_mats.resize(G.order);
    for (int g = 0; g < G.order; ++g) {
        Mat M = Mat::Zero(K, K);
        int off = 0;
        for (int t : parts) {
            int d = irr[t].dim;
            M.block(off, off, d, d) = irr[t].rep[g];
            off += d;
        }
        c.rep.elem_mats[g] = M;
    }
    for (int gi : G.gens) c.rep.gen_mats.push_back(c.rep.elem_mats[gi]);

    int ncl = (int)G.classes.size();
    int L = G.exponent();
    for (int cl = 0; cl < ncl; ++cl) {
        Cyclotomic tr(L);
        for (int t = 0; t < (int)irr.size(); ++t) {
            if (!counts[t]) continue;
            Cyclotomic v = irr[t].character_exact[cl];
            v *= Rat(counts[t]);
            tr += v;
        }
        tr *= Rat(1, K);
        c.trace_exact.push_back(tr);
        c.trace.push_back(tr.to_complex());
    }

    int ncons = 0;
    bool all_one = true;
    for (int t = 0; t < (int)irr.size(); ++t) {
        if (!counts[t]) continue;
        ncons++;
        c.commutant_dim += counts[t] * counts[t];
        c.constituents.push_back({irr[t].name, counts[t]});
        if (irr[t].dim != 1) all_one = false;
    }

    if (all_one) {
        c.kind = ModelComponent::Loose;
        if ((int)G.gens.size() >= 2) {
            // pairing of root indices between the first two generators
            std::vector<int> tau(K, -1);
            for (int t : parts) {
                int a = root_index_of(irr[t], G.gens[0], K);
                tau[a] = root_index_of(irr[t], G.gens[1], K);
            }
            if (K == 2) {
                c.label = (tau[0] == 0) ? "X+" : "X-";
            } else {
                c.label = "X[";
                for (int a = 0; a < K; ++a) c.label += std::to_string(tau[a]);
                c.label += "]";
            }
        } else {
            c.label = "X";
        }
    } else if (ncons == 1 && parts.size() == 1) {
        c.kind = ModelComponent::Solid;
        c.label = c.constituents[0].first;
    } else {
        c.kind = ModelComponent::Mixed;
        c.label = "mix(";
        for (size_t t = 0; t < c.constituents.size(); ++t) {
            if (t) c.label += ",";
            c.label += c.constituents[t].first;
            if (c.constituents[t].second > 1)
                c.label += "^" + std::to_string(c.constituents[t].second);
        }
        c.label += ")";
    }
    return c;
}

}  // namespace

std::vector<ModelComponent> enumerate_components(const FiniteGroup& G, int K) {
    if (K != G.gen_order) throw std::invalid_argument("K must equal the common generator order");
    std::vector<Irrep> irr = irreps(G);
    std::vector<ModelComponent> out;
    std::vector<int> counts(irr.size(), 0);

    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (remaining == 0) {
            ModelComponent c = make_component(G, irr, counts, K);
            if (is_quasiflat(c.rep.gen_mats, K).ok) out.push_back(std::move(c));
            return;
        }
        if (idx == (int)irr.size()) return;
        int maxm = remaining / irr[idx].dim;
        for (int m = maxm; m >= 0; --m) {
            counts[idx] = m;
            rec(idx + 1, remaining - m * irr[idx].dim);
        }
        counts[idx] = 0;
    };
    rec(0, K);

    auto rankof = [](const ModelComponent& c) {
        return c.kind == ModelComponent::Loose ? 0 : (c.kind == ModelComponent::Solid ? 1 : 2);
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const ModelComponent& a, const ModelComponent& b) {
                         if (rankof(a) != rankof(b)) return rankof(a) < rankof(b);
                         return a.label < b.label;
                     });
    return out;
}

RepPoint sample_point(const ModelComponent& c, Rng& rng) {
    Mat U = haar_unitary_rng(c.rep.K, rng);
    RepPoint p;
    p.K = c.rep.K;
    for (const Mat& M : c.rep.gen_mats) p.gen_mats.push_back(U * M * U.adjoint());
    for (const Mat& M : c.rep.elem_mats) p.elem_mats.push_back(U * M * U.adjoint());
    return p;
}

RepPoint sample_point(const ModelComponent& c, std::uint64_t seed) {
    Rng rng(seed);
    return sample_point(c, rng);
}

Mat MagicUnitaryModel::block(int i, int a, int b) const {
    const Vec& v = xi[i][((b - a) % K + K) % K];
    return v * v.adjoint();
}

MagicUnitaryModel fourier_magic(const RepPoint& p) {
    MagicUnitaryModel m;
    m.K = p.K;
    m.M = (int)p.gen_mats.size();
    for (int i = 0; i < m.M; ++i) {
        Eigen::ComplexEigenSolver<Mat> es(p.gen_mats[i], true);
        std::vector<Vec> xs(m.K);
        std::vector<bool> used(m.K, false);
        for (int d = 0; d < m.K; ++d) {
            int found = -1;
            for (int j = 0; j < m.K; ++j) {
                if (std::abs(es.eigenvalues()(j) - root_of_unity(m.K, d)) < 1e-8) {
                    if (found >= 0 || used[j])
                        throw std::runtime_error("generator image is not quasi-flat");
                    found = j;
                }
            }
            if (found < 0) throw std::runtime_error("generator image is not quasi-flat");
            used[found] = true;
            xs[d] = es.eigenvectors().col(found).normalized();
        }
        m.xi.push_back(std::move(xs));
    }
    return m;
}

std::vector<std::vector<Vec>> magic_array(const MagicUnitaryModel& m) {
    int N = m.K * m.M;
    std::vector<std::vector<Vec>> xi(N, std::vector<Vec>(N, Vec::Zero(m.K)));
    for (int i = 0; i < m.M; ++i)
        for (int a = 0; a < m.K; ++a)
            for (int b = 0; b < m.K; ++b) xi[i * m.K + a][i * m.K + b] = m.xi[i][((b - a) % m.K + m.K) % m.K];
    return xi;
}

std::vector<std::vector<int>> sparse_latin_squares(const std::vector<std::vector<int>>& perms,
                                                   int K) {
    if (perms.empty()) throw std::runtime_error("empty permutation list");
    int n = (int)perms[0].size();
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < (int)perms.size(); ++i) {
        if ((int)perms[i].size() != n) throw std::runtime_error("permutation degree mismatch");
        index[perms[i]] = i;
    }
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    if (!index.count(id)) throw std::runtime_error("identity permutation missing");
    for (const auto& a : perms)
        for (const auto& b : perms) {
            std::vector<int> ab(n);
            for (int i = 0; i < n; ++i) ab[i] = a[b[i]];
            if (!index.count(ab)) throw std::runtime_error("permutations are not closed under composition");
        }

    double total = std::pow((double)perms.size(), K);
    if (total > 1e6) throw std::runtime_error("search space exceeds 10^6 tuples");

    std::vector<std::vector<int>> out;
    std::vector<int> tup(K, 0);
    while (true) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            unsigned mask = 0;
            for (int t = 0; t < K; ++t) {
                unsigned bit = 1u << perms[tup[t]][i];
                if (mask & bit) {
                    ok = false;
                    break;
                }
                mask |= bit;
            }
        }
        if (ok) out.push_back(tup);
        int k = K - 1;
        while (k >= 0 && ++tup[k] == (int)perms.size()) tup[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

std::vector<std::vector<int>> perm_group(const std::string& name) {
    if (name == "z2") return {{0, 1}, {1, 0}};
    if (name == "z4") {
        std::vector<std::vector<int>> out;
        for (int k = 0; k < 4; ++k) {
            std::vector<int> p(4);
            for (int i = 0; i < 4; ++i) p[i] = (i + k) % 4;
            out.push_back(p);
        }
        return out;
    }
    if (name == "z22") {
        std::vector<std::vector<int>> out;
        for (int m = 0; m < 4; ++m) {
            std::vector<int> p(4);
            for (int i = 0; i < 4; ++i) p[i] = i ^ m;
            out.push_back(p);
        }
        return out;
    }
    throw std::runtime_error("unknown permutation group: " + name);
}

}  // namespace qf
