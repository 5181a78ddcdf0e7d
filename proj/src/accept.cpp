#include "qf/accept.hpp"

#include "qf/haarcalc.hpp"
#include "qf/twist.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace qf {

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

void crit_dihedral_stationarity(Check& ck) {
    for (int n : {4, 6, 8}) {
        FiniteGroup G = build_dihedral(n);
        auto comps = enumerate_components(G, 2);
        ck.require((int)comps.size() == n / 2 + 1,
                   "dihedral n=" + std::to_string(n) + ": component count " +
                       std::to_string(comps.size()));
        StationarityReport sol = solve_weights(comps);
        ck.require(sol.feasible, "dihedral n=" + std::to_string(n) + ": infeasible");
        std::vector<double> known;
        for (const auto& c : comps)
            known.push_back(c.kind == ModelComponent::Solid ? 2.0 / n : 1.0 / n);
        StationarityReport ver = verify_weights(comps, known, 1e-12);
        ck.require(ver.max_residual < 1e-12, "dihedral n=" + std::to_string(n) +
                                                 ": known measure residual " +
                                                 fmt(ver.max_residual));
    }
}

void crit_heisenberg_census(Check& ck) {
    FiniteGroup G = build_heisenberg(3);
    auto comps = enumerate_components(G, 3);
    int loose = 0, solid = 0;
    for (const auto& c : comps) {
        if (c.kind == ModelComponent::Loose) {
            loose++;
            ck.require(c.commutant_dim == 3, "loose commutant dim " + std::to_string(c.commutant_dim));
        }
        if (c.kind == ModelComponent::Solid) {
            solid++;
            ck.require(c.commutant_dim == 1, "solid commutant dim " + std::to_string(c.commutant_dim));
        }
    }
    ck.require((int)comps.size() == 8 && loose == 6 && solid == 2,
               "census " + std::to_string(loose) + " loose + " + std::to_string(solid) + " solid");
    std::vector<double> known;
    for (const auto& c : comps)
        known.push_back(c.kind == ModelComponent::Loose ? 1.0 / 18 : 1.0 / 3);
    StationarityReport ver = verify_weights(comps, known, 1e-12);
    ck.require(ver.max_residual < 1e-12, "uniform measure residual " + fmt(ver.max_residual));
}

void crit_meta144(Check& ck) {
    FiniteGroup G = build_meta144();
    auto comps = enumerate_components(G, 3);
    int loose = 0, solid = 0;
    for (const auto& c : comps) {
        if (c.kind == ModelComponent::Loose) loose++;
        if (c.kind == ModelComponent::Solid) solid++;
    }
    ck.require(loose == 6 && solid == 6 && comps.size() == 12,
               "census " + std::to_string(loose) + " loose + " + std::to_string(solid) + " solid");

    auto table = orbit_sum_table(G);
    long expect[3][2] = {{-1, -1}, {3, -1}, {-1, 3}};
    for (int r = 0; r < 3; ++r)
        ck.require(table[r][0] == expect[r][0] && table[r][1] == expect[r][1],
                   "orbit sums row " + std::to_string(r) + " = (" + std::to_string(table[r][0]) +
                       "," + std::to_string(table[r][1]) + ")");

    StationarityReport sol = solve_weights(comps);
    ck.require(!sol.feasible, "stationarity unexpectedly feasible");
    ck.require(sol.certificate_checked, "infeasibility certificate not verified");
}

void crit_faithfulness(Check& ck) {
    struct Case {
        FiniteGroup G;
        int K;
    };
    std::vector<Case> cases;
    cases.push_back({build_dihedral(4), 2});
    cases.push_back({build_dihedral(6), 2});
    cases.push_back({build_heisenberg(3), 3});
    cases.push_back({build_meta144(), 3});
    for (auto& cs : cases) {
        auto comps = enumerate_components(cs.G, cs.K);
        KernelReport ker = kernel_intersection(cs.G, comps);
        ck.require(ker.trivial, cs.G.name + ": joint kernel has " +
                                    std::to_string(ker.intersection.size()) + " elements");
    }
    FaithfulnessWitness w = inner_faithfulness_certificate(build_meta144());
    ck.require(w.ok, "meta144 certificate: " + w.detail);
    ck.require(w.induced_diag.ok, "induced representation not quasi-flat");
}

void crit_gram_law(Check& ck) {
    FiniteGroup G = build_dihedral(4);
    auto comps = enumerate_components(G, 2);
    std::vector<std::vector<std::vector<Vec>>> samples;
    for (size_t i = 0; i < comps.size(); ++i)
        samples.push_back(magic_array(fourier_magic(sample_point(comps[i], 2000 + i))));
    for (int p = 1; p <= 3; ++p)
        for (int r = 1; r <= 2; ++r) {
            GramCheck gc = gram_law_check(samples, p, r, 2);
            ck.require(gc.abs_error < 1e-10, "p=" + std::to_string(p) + " r=" + std::to_string(r) +
                                                 " error " + fmt(gc.abs_error));
        }
}

void crit_exact_moments(Check& ck) {
    FiniteGroup Z22 = build_abelian(2, 2);
    MomentSequence m = word_moments_exact(Z22, 200);
    ck.require(m.m[1] == Rat(1, 2), "m_1 != 1/2");
    ck.require(m.m[2] == Rat(3, 8), "m_2 != 3/8");
    double atom = atom_at_one(m, 200);
    ck.require(std::abs(atom - 0.25) < 1e-3, "Z2xZ2 atom " + fmt(atom));

    FiniteGroup D4 = build_dihedral(4);
    MomentSequence md = word_moments_exact(D4, 400);
    double atom4 = atom_at_one(md, 400);
    ck.require(std::abs(atom4 - 0.125) < 1e-3, "D4 atom " + fmt(atom4));
}

void crit_monte_carlo(Check& ck) {
    FiniteGroup G = build_dihedral(4);
    auto comps = enumerate_components(G, 2);
    StationarityReport sol = solve_weights(comps);
    ck.require(sol.feasible, "D4 stationarity infeasible");
    MomentEstimate est = mc_character_moment(comps, sol.weights_d, 2, 10000, 31337);
    double exact = word_moments_exact(G, 2).md[2];
    double dev = std::abs(est.mean - exact);
    ck.require(dev < 3 * est.stderr_, "p=2 moment deviates " + fmt(dev) + " > 3 x " +
                                          fmt(est.stderr_));
    ck.note("estimate " + fmt(est.mean) + " vs exact " + fmt(exact) + " (stderr " +
            fmt(est.stderr_) + ")");
}

void crit_twist(Check& ck) {
    Bicharacter sigma;
    try {
        sigma = find_cocycle();
    } catch (const std::exception& e) {
        ck.require(false, std::string("find_cocycle: ") + e.what());
        return;
    }

    Rng rng(777);
    auto rel_res = [&](double theta) {
        FiberModel fm = fiber_model(theta, sigma);
        double r = fm.invariance_residual;
        RMat I4 = RMat::Identity(4, 4);
        for (int i = 0; i < 2; ++i) {
            RMat row = RMat::Zero(4, 4), col = RMat::Zero(4, 4);
            for (int j = 0; j < 2; ++j) {
                r = std::max(r, (fm.V[i][j] - fm.V[i][j].transpose()).cwiseAbs().maxCoeff());
                row += fm.V[i][j] * fm.V[i][j];
                col += fm.V[j][i] * fm.V[j][i];
            }
            r = std::max(r, (row - I4).cwiseAbs().maxCoeff());
            r = std::max(r, (col - I4).cwiseAbs().maxCoeff());
            r = std::max(r,
                         (fm.V[i][0] * fm.V[i][1] + fm.V[i][1] * fm.V[i][0]).cwiseAbs().maxCoeff());
            r = std::max(r,
                         (fm.V[0][i] * fm.V[1][i] + fm.V[1][i] * fm.V[0][i]).cwiseAbs().maxCoeff());
        }
        r = std::max(r, (fm.V[0][0] * fm.V[1][1] - fm.V[1][1] * fm.V[0][0]).cwiseAbs().maxCoeff());
        r = std::max(r, (fm.V[0][1] * fm.V[1][0] - fm.V[1][0] * fm.V[0][1]).cwiseAbs().maxCoeff());
        return r;
    };
    for (int t = 0; t < 10; ++t) {
        double theta = 0.03 + rng.uniform() * (M_PI / 2 - 0.06);
        double r = rel_res(theta);
        ck.require(r < 1e-12, "relations at theta=" + fmt(theta) + ": " + fmt(r));
    }

    auto check_word = [&](const Word& w) {
        double model = model_state(w, sigma);
        double target = twist_sign(w, sigma) * to_double(o2_integral(w));
        return std::abs(model - target);
    };
    std::vector<Word> all4;
    for (int len = 1; len <= 4; ++len) {
        std::vector<int> v(len, 0);
        bool more = true;
        while (more) {
            Word w;
            for (int t = 0; t < len; ++t) w.push_back({(v[t] >> 1) & 1, v[t] & 1});
            all4.push_back(w);
            int k = len - 1;
            while (k >= 0 && ++v[k] == 4) v[k--] = 0;
            more = k >= 0;
        }
    }
    double worst = 0;
    for (const Word& w : all4) worst = std::max(worst, check_word(w));
    ck.require(worst < 1e-10, "haar match on short words: " + fmt(worst));

    double worst6 = 0;
    for (int t = 0; t < 500; ++t) {
        int len = 1 + (int)(rng.uniform() * 6);
        if (len > 6) len = 6;
        Word w;
        for (int s = 0; s < len; ++s) {
            int e = (int)(rng.uniform() * 4) & 3;
            w.push_back({(e >> 1) & 1, e & 1});
        }
        worst6 = std::max(worst6, check_word(w));
    }
    ck.require(worst6 < 1e-10, "haar match on random words: " + fmt(worst6));

    double worst_idem = 0;
    for (const Word& w : all4)
        worst_idem = std::max(worst_idem, std::abs(convolve_state(w, sigma) - model_state(w, sigma)));
    ck.require(worst_idem < 1e-9, "idempotence: " + fmt(worst_idem));

    double worst_comm = 0;
    for (int t = 0; t < 20; ++t) {
        int a = (int)(rng.uniform() * 4), b = (int)(rng.uniform() * 4);
        int c = b % 2 + 2 * (int)(rng.uniform() * 2);
        int d = a % 2 + 2 * (int)(rng.uniform() * 2);
        ExponentMatrix em;
        em.e = {{a, b}, {c, d}};
        if (!is_central_monomial(em)) {
            ck.require(false, "generated exponent matrix not bistochastic mod 2");
            continue;
        }
        for (int s = 0; s < 5; ++s) {
            double theta = 0.03 + rng.uniform() * (M_PI / 2 - 0.06);
            FiberModel fm = fiber_model(theta, sigma);
            RMat P = RMat::Identity(4, 4);
            int exps[2][2] = {{a, b}, {c, d}};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < exps[i][j]; ++k) P = P * fm.V[i][j];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    worst_comm = std::max(
                        worst_comm, (P * fm.V[i][j] - fm.V[i][j] * P).cwiseAbs().maxCoeff());
        }
    }
    ck.require(worst_comm < 1e-11, "central commutation: " + fmt(worst_comm));
}

// straight recursive enumeration with pairwise pruning, independent of the
// library's odometer scan
long latin_brute(const std::vector<std::vector<int>>& perms, int K) {
    int n = (int)perms[0].size();
    std::vector<int> tup;
    std::function<long()> rec = [&]() -> long {
        if ((int)tup.size() == K) return 1;
        long total = 0;
        for (size_t cand = 0; cand < perms.size(); ++cand) {
            bool ok = true;
            for (int prev : tup) {
                for (int x = 0; x < n; ++x)
                    if (perms[prev][x] == perms[cand][x]) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (!ok) continue;
            tup.push_back((int)cand);
            total += rec();
            tup.pop_back();
        }
        return total;
    };
    return rec();
}

void crit_latin(Check& ck) {
    struct Case {
        const char* name;
        int K;
        long expect;
    } cases[] = {{"z2", 2, 2}, {"z4", 4, 24}, {"z22", 4, 24}};
    for (auto& cs : cases) {
        auto perms = perm_group(cs.name);
        long got = (long)sparse_latin_squares(perms, cs.K).size();
        long brute = latin_brute(perms, cs.K);
        ck.require(got == cs.expect && brute == cs.expect,
                   std::string(cs.name) + ": " + std::to_string(got) + " (brute " +
                       std::to_string(brute) + ", expected " + std::to_string(cs.expect) + ")");
    }
}

void crit_growth(Check& ck) {
    auto vz = growth_series_line(50);
    for (int n = 0; n <= 50; ++n)
        if (vz[n] != 2L * n + 1) {
            ck.require(false, "line ball |B_" + std::to_string(n) + "| = " + std::to_string(vz[n]));
            break;
        }
    std::vector<FiniteGroup> finite;
    finite.push_back(build_dihedral(4));
    finite.push_back(build_dihedral(8));
    finite.push_back(build_heisenberg(3));
    finite.push_back(build_abelian(2, 2));
    finite.push_back(build_meta144());
    for (const FiniteGroup& G : finite) {
        auto v = growth_series(G, 30);
        bool mono = true;
        for (int n = 1; n <= 30; ++n) mono = mono && v[n] >= v[n - 1];
        ck.require(mono && v[30] == G.order,
                   G.name + ": ball saturates at " + std::to_string(v[30]) + " of " +
                       std::to_string(G.order));
    }
}

}  // namespace

CriterionResult run_criterion(int id) {
    static const struct {
        const char* name;
        void (*fn)(Check&);
    } table[] = {
        {"dihedral stationarity", crit_dihedral_stationarity},
        {"heisenberg census and measure", crit_heisenberg_census},
        {"meta144 census and infeasibility", crit_meta144},
        {"inner faithfulness", crit_faithfulness},
        {"gram trace identity", crit_gram_law},
        {"exact moments and atom", crit_exact_moments},
        {"monte carlo consistency", crit_monte_carlo},
        {"twisted orthogonal model", crit_twist},
        {"sparse latin squares", crit_latin},
        {"growth series", crit_growth},
    };
    CriterionResult res;
    res.id = id;
    if (id < 1 || id > 10) {
        res.detail = "unknown criterion";
        return res;
    }
    res.name = table[id - 1].name;
    Check ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
        table[id - 1].fn(ck);
    } catch (const std::exception& e) {
        ck.require(false, std::string("exception: ") + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    res.pass = ck.pass;
    res.detail = ck.detail.str();
    res.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return res;
}

std::vector<CriterionResult> run_all_criteria() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 10; ++id) out.push_back(run_criterion(id));
    return out;
}

}  // namespace qf
