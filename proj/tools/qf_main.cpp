#include "qf/accept.hpp"
#include "qf/haarcalc.hpp"
#include "qf/twist.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QF_SEED")) return std::strtoull(env, nullptr, 10);
    return 12345;
}

std::string rat_str(const qf::Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string kind_str(qf::ModelComponent::Kind k) {
    switch (k) {
        case qf::ModelComponent::Loose: return "loose";
        case qf::ModelComponent::Solid: return "solid";
        default: return "mixed";
    }
}

std::string word_str(const qf::Word& w) {
    std::string s;
    for (auto [i, j] : w) {
        if (!s.empty()) s += " ";
        s += "u" + std::to_string(i + 1) + std::to_string(j + 1);
    }
    return s;
}

int cmd_group_info(const std::string& spec, bool as_json) {
    qf::FiniteGroup G = qf::parse_group_spec(spec);
    json j;
    j["name"] = G.name;
    j["order"] = G.order;
    j["exponent"] = G.exponent();
    j["classes"] = G.classes.size();
    j["abelian"] = G.abelian();
    j["center"] = G.center().size();
    j["derived_subgroup"] = G.derived_subgroup().size();
    json gens = json::array();
    for (int g : G.gens) gens.push_back(G.elem_names[g]);
    j["generators"] = gens;
    j["generator_order"] = G.gen_order;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << G.name << ": order " << G.order << ", exponent " << G.exponent() << ", "
                  << G.classes.size() << " classes, " << (G.abelian() ? "abelian" : "nonabelian")
                  << "\ngenerators:";
        for (int g : G.gens) std::cout << " " << G.elem_names[g];
        std::cout << " (order " << G.gen_order << ")\ncenter: " << G.center().size()
                  << " elements, derived subgroup: " << G.derived_subgroup().size()
                  << " elements\n";
    }
    return 0;
}

int cmd_components(const std::string& spec, bool as_json) {
    qf::FiniteGroup G = qf::parse_group_spec(spec);
    int K = G.gen_order;
    auto comps = qf::enumerate_components(G, K);
    if (as_json) {
        json out;
        out["group"] = G.name;
        out["K"] = K;
        json arr = json::array();
        for (const auto& c : comps) {
            json jc;
            jc["kind"] = kind_str(c.kind);
            jc["label"] = c.label;
            json cons = json::array();
            for (const auto& [name, mult] : c.constituents)
                cons.push_back({{"irrep", name}, {"multiplicity", mult}});
            jc["constituents"] = cons;
            jc["commutant_dim"] = c.commutant_dim;
            json tr = json::array();
            for (qf::cxd v : c.trace) tr.push_back({v.real(), v.imag()});
            jc["trace"] = tr;
            arr.push_back(jc);
        }
        out["components"] = arr;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << G.name << ": " << comps.size() << " components of the K=" << K
                  << " model space\n";
        for (const auto& c : comps) {
            std::cout << "  " << kind_str(c.kind) << "  " << c.label << "  (commutant dim "
                      << c.commutant_dim << "): ";
            for (size_t t = 0; t < c.constituents.size(); ++t) {
                if (t) std::cout << " + ";
                std::cout << c.constituents[t].first;
                if (c.constituents[t].second > 1) std::cout << "^" << c.constituents[t].second;
            }
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_stationarity(const std::string& spec, const std::string& verify_file, bool as_json) {
    qf::FiniteGroup G = qf::parse_group_spec(spec);
    auto comps = qf::enumerate_components(G, G.gen_order);

    if (!verify_file.empty()) {
        std::ifstream in(verify_file);
        if (!in) {
            std::cerr << "cannot open " << verify_file << "\n";
            return 2;
        }
        json jw;
        std::vector<double> w;
        try {
            in >> jw;
            const json& arr = jw.is_object() && jw.contains("weights") ? jw["weights"] : jw;
            for (const auto& v : arr) w.push_back(v.get<double>());
        } catch (const std::exception& e) {
            std::cerr << "unreadable weights file: " << e.what() << "\n";
            return 1;
        }
        if (w.size() != comps.size()) {
            std::cerr << "verification failed: expected " << comps.size() << " weights, got "
                      << w.size() << "\n";
            return 1;
        }
        qf::StationarityReport rep = qf::verify_weights(comps, w);
        std::cout << (rep.feasible ? "stationary" : "NOT stationary") << ", max residual "
                  << rep.max_residual << "\n";
        return rep.feasible ? 0 : 1;
    }

    qf::StationarityReport rep = qf::solve_weights(comps);
    if (as_json) {
        json out;
        out["group"] = G.name;
        out["feasible"] = rep.feasible;
        if (rep.feasible) {
            json ws = json::array();
            for (size_t i = 0; i < comps.size(); ++i)
                ws.push_back({{"component", comps[i].label},
                              {"weight", rat_str(rep.weights[i])},
                              {"value", rep.weights_d[i]}});
            out["weights"] = ws;
            out["max_residual"] = rep.max_residual;
            out["polytope_dim"] = rep.polytope_dim;
        } else {
            json cert;
            cert["checked"] = rep.certificate_checked;
            json rows = json::array(), rhs = json::array(), mult = json::array(),
                 names = json::array();
            for (size_t r = 0; r < rep.rows.size(); ++r) {
                json row = json::array();
                for (const auto& v : rep.rows[r]) row.push_back(rat_str(v));
                rows.push_back(row);
                rhs.push_back(rat_str(rep.rhs[r]));
                mult.push_back(rat_str(rep.farkas[r]));
                names.push_back(rep.row_names[r]);
            }
            cert["rows"] = rows;
            cert["rhs"] = rhs;
            cert["multipliers"] = mult;
            cert["row_names"] = names;
            out["certificate"] = cert;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (rep.feasible) {
            std::cout << G.name << ": stationary; minimum-norm weights\n";
            for (size_t i = 0; i < comps.size(); ++i)
                std::cout << "  " << comps[i].label << ": " << rat_str(rep.weights[i]) << " = "
                          << rep.weights_d[i] << "\n";
            std::cout << "max residual " << rep.max_residual << ", solution face dimension "
                      << rep.polytope_dim << "\n";
        } else {
            std::cout << G.name
                      << ": no stationary measure; rational infeasibility certificate over "
                      << rep.rows.size() << " equations "
                      << (rep.certificate_checked ? "(verified)" : "(UNVERIFIED)") << "\n";
            for (size_t r = 0; r < rep.rows.size(); ++r)
                if (rep.farkas[r] != 0)
                    std::cout << "  " << rat_str(rep.farkas[r]) << " x [" << rep.row_names[r]
                              << "]\n";
        }
    }
    return 0;
}

int cmd_faithfulness(const std::string& spec, bool as_json) {
    qf::FiniteGroup G = qf::parse_group_spec(spec);
    auto comps = qf::enumerate_components(G, G.gen_order);
    qf::KernelReport ker = qf::kernel_intersection(G, comps);
    qf::FaithfulnessWitness w = qf::inner_faithfulness_certificate(G);
    if (as_json) {
        json out;
        out["group"] = G.name;
        out["joint_kernel_size"] = ker.intersection.size();
        out["joint_kernel_trivial"] = ker.trivial;
        out["certificate"] = w.ok;
        out["fixed_characters"] = w.char_labels.size();
        out["characters_generate_dual"] = w.labels_generate;
        out["induced_quasi_flat"] = w.induced_diag.ok;
        out["detail"] = w.detail;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << G.name << ": joint kernel of all components has " << ker.intersection.size()
                  << " element(s)" << (ker.trivial ? " (trivial)" : "") << "\n"
                  << "inner faithfulness certificate: " << (w.ok ? "PASS" : "FAIL") << "\n  "
                  << w.detail << "\n";
    }
    return (ker.trivial && w.ok) ? 0 : 1;
}

int cmd_moments(const std::string& spec, int P, int r, int samples, std::uint64_t seed,
                bool csv) {
    qf::FiniteGroup G = qf::parse_group_spec(spec);
    auto comps = qf::enumerate_components(G, G.gen_order);
    qf::StationarityReport sol = qf::solve_weights(comps);
    if (!sol.feasible) {
        std::cerr << G.name << " has no stationary measure; no model to sample\n";
        return 1;
    }
    qf::MomentSequence m = qf::word_moments_exact(G, P);
    if (csv) std::cout << "p,exact,estimate,stderr\n";
    for (int p = 1; p <= P; ++p) {
        qf::MomentEstimate est = qf::mc_character_moment(comps, sol.weights_d, p, samples, seed, r);
        if (csv)
            std::cout << p << "," << m.md[p] << "," << est.mean << "," << est.stderr_ << "\n";
        else
            std::cout << "p=" << p << "  exact " << rat_str(m.m[p]) << " = " << m.md[p]
                      << "  estimate " << est.mean << " +- " << est.stderr_ << "\n";
    }
    return 0;
}

int cmd_gram_check(const std::string& spec, int p, int r, int samples, std::uint64_t seed) {
    qf::FiniteGroup G = qf::parse_group_spec(spec);
    auto comps = qf::enumerate_components(G, G.gen_order);
    std::vector<std::vector<std::vector<qf::Vec>>> xs;
    for (int s = 0; s < samples; ++s) {
        const auto& c = comps[s % comps.size()];
        xs.push_back(qf::magic_array(qf::fourier_magic(qf::sample_point(c, seed + s))));
    }
    qf::GramCheck gc = qf::gram_law_check(xs, p, r, G.gen_order);
    std::cout << "T-side " << gc.t_side.real() << (gc.t_side.imag() < 0 ? "" : "+")
              << gc.t_side.imag() << "i, Gram-side " << gc.g_side.real()
              << (gc.g_side.imag() < 0 ? "" : "+") << gc.g_side.imag() << "i, |diff| "
              << gc.abs_error << "\n";
    return gc.abs_error < 1e-10 ? 0 : 1;
}

int cmd_latin(const std::string& name, int K, bool as_json) {
    auto perms = qf::perm_group(name);
    auto tuples = qf::sparse_latin_squares(perms, K);
    if (as_json) {
        json out;
        out["group"] = name;
        out["K"] = K;
        out["count"] = tuples.size();
        json arr = json::array();
        for (const auto& t : tuples) arr.push_back(t);
        out["tuples"] = arr;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << name << ", K=" << K << ": " << tuples.size()
                  << " sparse latin square tuple(s)\n";
    }
    return 0;
}

int cmd_growth(const std::string& spec, int radius) {
    std::vector<long> v;
    if (spec == "Z")
        v = qf::growth_series_line(radius);
    else if (spec == "Dinf")
        v = qf::growth_series_infinite_dihedral(radius);
    else
        v = qf::growth_series(qf::parse_group_spec(spec), radius);
    std::cout << "n,ball\n";
    for (int n = 0; n <= radius; ++n) std::cout << n << "," << v[n] << "\n";
    return 0;
}

int cmd_twist_relations(std::vector<double> thetas, bool as_json) {
    qf::Bicharacter sigma = qf::find_cocycle();
    if (thetas.empty()) thetas = {0.61, M_PI / 7, 1.13};
    json rows = json::array();
    double worst = 0;
    for (double th : thetas) {
        qf::FiberModel fm = qf::fiber_model(th, sigma);
        double r = fm.invariance_residual;
        qf::RMat I4 = qf::RMat::Identity(4, 4);
        for (int i = 0; i < 2; ++i) {
            qf::RMat row = qf::RMat::Zero(4, 4), col = qf::RMat::Zero(4, 4);
            for (int j = 0; j < 2; ++j) {
                r = std::max(r, (fm.V[i][j] - fm.V[i][j].transpose()).cwiseAbs().maxCoeff());
                row += fm.V[i][j] * fm.V[i][j];
                col += fm.V[j][i] * fm.V[j][i];
            }
            r = std::max(r, (row - I4).cwiseAbs().maxCoeff());
            r = std::max(r, (col - I4).cwiseAbs().maxCoeff());
            r = std::max(r, (fm.V[i][0] * fm.V[i][1] + fm.V[i][1] * fm.V[i][0]).cwiseAbs().maxCoeff());
            r = std::max(r, (fm.V[0][i] * fm.V[1][i] + fm.V[1][i] * fm.V[0][i]).cwiseAbs().maxCoeff());
        }
        r = std::max(r, (fm.V[0][0] * fm.V[1][1] - fm.V[1][1] * fm.V[0][0]).cwiseAbs().maxCoeff());
        r = std::max(r, (fm.V[0][1] * fm.V[1][0] - fm.V[1][0] * fm.V[0][1]).cwiseAbs().maxCoeff());
        worst = std::max(worst, r);
        if (as_json)
            rows.push_back({{"theta", th}, {"residual", r}});
        else
            std::cout << "theta " << th << ": relation residual " << r << "\n";
    }
    if (as_json) {
        json out;
        out["sign_matrix"] = {{sigma.b[0][0], sigma.b[0][1]}, {sigma.b[1][0], sigma.b[1][1]}};
        out["flipped"] = sigma.flipped;
        out["checks"] = rows;
        std::cout << out.dump(2) << "\n";
    }
    return worst < 1e-12 ? 0 : 1;
}

void all_words_upto(int maxlen, std::vector<qf::Word>& out) {
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<int> v(len, 0);
        bool more = true;
        while (more) {
            qf::Word w;
            for (int t = 0; t < len; ++t) w.push_back({(v[t] >> 1) & 1, v[t] & 1});
            out.push_back(w);
            int k = len - 1;
            while (k >= 0 && ++v[k] == 4) v[k--] = 0;
            more = k >= 0;
        }
    }
}

int cmd_twist_table(const std::string& mode, int maxlen, bool as_json) {
    qf::Bicharacter sigma = qf::find_cocycle();
    std::vector<qf::Word> words;
    all_words_upto(maxlen, words);
    json rows = json::array();
    double worst = 0;
    double limit = mode == "stationarity" ? 1e-10 : 1e-9;
    for (const qf::Word& w : words) {
        double model, target;
        if (mode == "stationarity") {
            model = qf::model_state(w, sigma);
            target = qf::twist_sign(w, sigma) * qf::to_double(qf::o2_integral(w));
        } else {
            model = qf::convolve_state(w, sigma);
            target = qf::model_state(w, sigma);
        }
        double err = std::abs(model - target);
        worst = std::max(worst, err);
        if (as_json)
            rows.push_back({{"word", word_str(w)},
                            {"model_value", model},
                            {"target_value", target},
                            {"abs_error", err}});
        else
            std::cout << word_str(w) << ": model " << model << ", target " << target << ", err "
                      << err << "\n";
    }
    if (as_json) {
        json out;
        out["mode"] = mode;
        out["max_abs_error"] = worst;
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "max abs error " << worst << "\n";
    }
    return worst < limit ? 0 : 1;
}

int cmd_reproduce_all() {
    auto results = qf::run_all_criteria();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::printf("%2d  %-34s %s  (%.0f ms)%s%s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.ms, r.detail.empty() ? "" : "  ",
                    r.detail.c_str());
    }
    std::printf("%s\n", all ? "all criteria pass" : "FAILURES present");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-flat matrix models of group duals and the twisted orthogonal group"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();

    int exit_code = 0;
    std::string spec, verify_file, permname;
    bool as_json = false;
    int P = 4, r = 1, samples = 1000, K = 2, radius = 10, maxlen = 2;
    std::vector<double> thetas;

    auto* grp = app.add_subcommand("group", "group structure reports");
    grp->require_subcommand(1);
    auto* info = grp->add_subcommand("info", "order, classes, generators");
    info->add_option("spec", spec)->required();
    info->add_flag("--json", as_json);
    info->callback([&] { exit_code = cmd_group_info(spec, as_json); });

    auto* comp = app.add_subcommand("components", "enumerate model-space components");
    comp->add_option("spec", spec)->required();
    comp->add_flag("--json", as_json);
    comp->callback([&] { exit_code = cmd_components(spec, as_json); });

    auto* stat = app.add_subcommand("stationarity", "solve or verify the stationarity equations");
    stat->add_option("spec", spec)->required();
    stat->add_option("--verify", verify_file, "weights file (JSON array) to check");
    stat->add_flag("--json", as_json);
    stat->callback([&] { exit_code = cmd_stationarity(spec, verify_file, as_json); });

    auto* faith = app.add_subcommand("faithfulness", "joint kernel and the induction certificate");
    faith->add_option("spec", spec)->required();
    faith->add_flag("--json", as_json);
    faith->callback([&] { exit_code = cmd_faithfulness(spec, as_json); });

    auto* mom = app.add_subcommand("moments", "exact vs sampled character moments");
    mom->add_option("spec", spec)->required();
    mom->add_option("--p", P, "top moment order")->capture_default_str();
    mom->add_option("--r", r, "convolution power of the sampled state")->capture_default_str();
    mom->add_option("--samples", samples)->capture_default_str();
    mom->add_option("--seed", seed)->capture_default_str();
    bool csv = false;
    mom->add_flag("--csv", csv);
    mom->callback([&] { exit_code = cmd_moments(spec, P, r, samples, seed, csv); });

    auto* gram = app.add_subcommand("gram-check", "deterministic trace identity on sample sets");
    gram->add_option("--group", spec)->capture_default_str()->default_val("dihedral:4");
    gram->add_option("--p", P)->capture_default_str()->default_val(2);
    gram->add_option("--r", r)->capture_default_str();
    gram->add_option("--samples", samples)->capture_default_str()->default_val(3);
    gram->add_option("--seed", seed)->capture_default_str();
    gram->callback([&] { exit_code = cmd_gram_check(spec, P, r, samples, seed); });

    auto* latin = app.add_subcommand("latin", "sparse latin square tuples of a permutation group");
    latin->add_option("permgroup", permname)->required();
    latin->add_option("--k", K, "tuple length")->capture_default_str();
    latin->add_flag("--json", as_json);
    latin->callback([&] { exit_code = cmd_latin(permname, K, as_json); });

    auto* growth = app.add_subcommand("growth", "word-metric ball volumes");
    growth->add_option("spec", spec, "group spec, Z, or Dinf")->required();
    growth->add_option("--radius", radius)->capture_default_str();
    growth->callback([&] { exit_code = cmd_growth(spec, radius); });

    auto* twist = app.add_subcommand("twist", "twisted orthogonal model checks");
    twist->require_subcommand(1);
    auto* rel = twist->add_subcommand("relations", "deformed relations at sample angles");
    rel->add_option("--theta", thetas, "angles to test");
    rel->add_flag("--json", as_json);
    rel->callback([&] { exit_code = cmd_twist_relations(thetas, as_json); });
    auto* tstat = twist->add_subcommand("stationarity", "model state vs signed Haar integral");
    tstat->add_option("--maxlen", maxlen)->capture_default_str();
    tstat->add_flag("--json", as_json);
    tstat->callback([&] { exit_code = cmd_twist_table("stationarity", maxlen, as_json); });
    auto* idem = twist->add_subcommand("idempotence", "convolution square vs state");
    idem->add_option("--maxlen", maxlen)->capture_default_str();
    idem->add_flag("--json", as_json);
    idem->callback([&] { exit_code = cmd_twist_table("idempotence", maxlen, as_json); });

    auto* rep = app.add_subcommand("reproduce-all", "run every acceptance criterion");
    rep->callback([&] { exit_code = cmd_reproduce_all(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
