#include "qf/haarcalc.hpp"

#include <algorithm>
#include <map>

namespace qf {

namespace {

long checked_dim(int N, int p) {
    long dim = 1;
    for (int t = 0; t < p; ++t) {
        dim *= N;
        if (dim > 4096) throw std::runtime_error("moment matrix larger than 4096 rows");
    }
    return dim;
}

void odometer_first(std::vector<int>& v) { std::fill(v.begin(), v.end(), 0); }

bool odometer_next(std::vector<int>& v, int base) {
    int k = (int)v.size() - 1;
    while (k >= 0 && ++v[k] == base) v[k--] = 0;
    return k >= 0;
}

}  // namespace

TpMatrix tp_of_xi(const std::vector<std::vector<Vec>>& xi, int p, int K) {
    int N = (int)xi.size();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double n = xi[i][j].norm();
            if (std::abs(n) > 1e-10 && std::abs(n - 1.0) > 1e-10)
                throw std::runtime_error("xi vectors must have norm 0 or 1");
        }
    long dim = checked_dim(N, p);

    Mat ip(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) ip(i * N + j, k * N + l) = xi[i][j].dot(xi[k][l]);

    TpMatrix T;
    T.p = p;
    T.N = N;
    T.m = Mat(dim, dim);
    std::vector<int> I(p), J(p);
    odometer_first(I);
    for (long r = 0; r < dim; ++r) {
        odometer_first(J);
        for (long c = 0; c < dim; ++c) {
            cxd prod(1.0 / K, 0);
            for (int t = 0; t < p; ++t) {
                int t2 = (t + 1) % p;
                prod *= ip(I[t] * N + J[t], I[t2] * N + J[t2]);
                if (prod == cxd(0, 0)) break;
            }
            T.m(r, c) = prod;
            odometer_next(J, N);
        }
        odometer_next(I, N);
    }
    return T;
}

TpMatrix tp_integral(const ModelComponent& c, int p, int nsamples, std::uint64_t seed,
                     std::vector<std::vector<std::vector<Vec>>>* samples) {
    Rng rng(seed);
    TpMatrix acc;
    for (int s = 0; s < nsamples; ++s) {
        auto xi = magic_array(fourier_magic(sample_point(c, rng)));
        TpMatrix T = tp_of_xi(xi, p, c.rep.K);
        if (s == 0)
            acc = T;
        else
            acc.m += T.m;
        if (samples) samples->push_back(std::move(xi));
    }
    acc.m /= (double)nsamples;
    return acc;
}

TpMatrix tp_exact(const ModelComponent& c, int p) {
    const FiniteGroup& G = *c.group;
    int K = c.rep.K, M = (int)G.gens.size();
    int N = K * M;
    long dim = checked_dim(N, p);

    TpMatrix T;
    T.p = p;
    T.N = N;
    T.m = Mat::Zero(dim, dim);
    double invKp = std::pow((double)K, -p);

    std::vector<int> I(p), J(p);
    odometer_first(I);
    for (long r = 0; r < dim; ++r) {
        odometer_first(J);
        for (long col = 0; col < dim; ++col) {
            bool blocks = true;
            for (int t = 0; t < p && blocks; ++t) blocks = (I[t] / K) == (J[t] / K);
            if (blocks) {
                cxd sum(0, 0);
                std::vector<int> k(p, 0);
                do {
                    int g = G.identity, phase = 0;
                    for (int t = 0; t < p; ++t) {
                        g = G.op(g, G.power(G.gens[I[t] / K], k[t]));
                        phase += k[t] * ((I[t] % K) - (J[t] % K));
                    }
                    double a = 2.0 * M_PI * phase / K;
                    sum += cxd(std::cos(a), std::sin(a)) * c.trace[G.class_of[g]];
                } while (odometer_next(k, K));
                T.m(r, col) = invKp * sum;
            }
            odometer_next(J, N);
        }
        odometer_next(I, N);
    }
    return T;
}

cxd truncated_moment(const TpMatrix& T, int r, const std::vector<int>& I,
                     const std::vector<int>& J) {
    Mat P = Mat::Identity(T.m.rows(), T.m.cols());
    for (int t = 0; t < r; ++t) P = P * T.m;
    return P(T.idx(I), T.idx(J));
}

GramCheck gram_law_check(const std::vector<std::vector<std::vector<Vec>>>& samples, int p, int r,
                         int K) {
    if (samples.empty()) throw std::runtime_error("no samples");
    int S = (int)samples.size();
    int N = (int)samples[0].size();

    TpMatrix acc;
    for (int s = 0; s < S; ++s) {
        TpMatrix T = tp_of_xi(samples[s], p, K);
        if (s == 0)
            acc = T;
        else
            acc.m += T.m;
    }
    acc.m /= (double)S;
    Mat P = Mat::Identity(acc.m.rows(), acc.m.cols());
    for (int t = 0; t < r; ++t) P = P * acc.m;
    cxd t_side = P.trace() * std::pow((double)K, -p);

    long gdim = checked_dim(N, r);
    cxd gsum(0, 0);
    std::vector<int> x(r, 0);
    do {
        Mat G(gdim, gdim);
        std::vector<int> I(r), J(r);
        odometer_first(I);
        for (long row = 0; row < gdim; ++row) {
            odometer_first(J);
            for (long col = 0; col < gdim; ++col) {
                cxd prod(1.0 / K, 0);
                for (int t = 0; t < r; ++t) {
                    int t2 = (t + 1) % r;
                    prod *= samples[x[t]][I[t]][I[t2]].dot(samples[x[t]][J[t]][J[t2]]);
                    if (prod == cxd(0, 0)) break;
                }
                G(row, col) = prod;
                odometer_next(J, N);
            }
            odometer_next(I, N);
        }
        Mat Gp = Mat::Identity(gdim, gdim);
        for (int t = 0; t < p; ++t) Gp = Gp * G;
        gsum += Gp.trace();
    } while (odometer_next(x, S));

    GramCheck out;
    out.t_side = t_side;
    out.g_side = gsum * std::pow((double)K, -r) / std::pow((double)S, r);
    out.abs_error = std::abs(out.t_side - out.g_side);
    return out;
}

MomentSequence word_moments_exact(const FiniteGroup& G, int pmax) {
    int K = G.gen_order, M = (int)G.gens.size();
    MomentSequence seq;
    seq.N = K * M;

    std::vector<Int> a(G.order, Int(0));
    for (int gi : G.gens)
        for (int k = 0; k < K; ++k) a[G.power(gi, k)] += 1;
    std::vector<std::pair<int, Int>> support;
    for (int g = 0; g < G.order; ++g)
        if (a[g] != 0) support.push_back({g, a[g]});

    seq.m.push_back(Rat(1));
    seq.md.push_back(1.0);
    std::vector<Int> cur(G.order, Int(0));
    cur[G.identity] = 1;
    Int Np(1);
    for (int p = 1; p <= pmax; ++p) {
        std::vector<Int> next(G.order, Int(0));
        for (int g = 0; g < G.order; ++g) {
            if (cur[g] == 0) continue;
            for (auto& [h, coeff] : support) next[G.op(g, h)] += cur[g] * coeff;
        }
        cur = std::move(next);
        Np *= seq.N;
        Rat mp(cur[G.identity], Np);
        seq.m.push_back(mp);
        seq.md.push_back(to_double(mp));
    }
    return seq;
}

double atom_at_one(const MomentSequence& m, int R) {
    if (R >= (int)m.md.size()) throw std::runtime_error("moment sequence too short");
    int lo = R / 2 + 1;
    double sum = 0;
    for (int p = lo; p <= R; ++p) sum += m.md[p];
    return sum / (R - lo + 1);
}

bool kesten_support(const MomentSequence& m) {
    double sup = 0;
    for (size_t p = 1; p < m.md.size(); ++p)
        sup = std::max(sup, std::pow(std::abs(m.md[p]), 1.0 / p));
    return sup >= 1.0 - 1e-2;
}

std::vector<long> growth_series(const FiniteGroup& G, int nmax) {
    std::vector<int> dist(G.order, -1);
    dist[G.identity] = 0;
    std::vector<int> frontier = {G.identity};
    std::vector<int> step;
    for (int gi : G.gens) {
        step.push_back(gi);
        step.push_back(G.inv[gi]);
    }
    int d = 0;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int g : frontier)
            for (int s : step) {
                int h = G.op(g, s);
                if (dist[h] < 0) {
                    dist[h] = d + 1;
                    next.push_back(h);
                }
            }
        frontier = std::move(next);
        ++d;
    }
    std::vector<long> v(nmax + 1, 0);
    for (int g = 0; g < G.order; ++g)
        if (dist[g] <= nmax)
            for (int n = dist[g]; n <= nmax; ++n) v[n]++;
    return v;
}

std::vector<long> growth_series_line(int nmax) {
    std::map<long, int> dist;
    dist[0] = 0;
    std::vector<long> frontier = {0};
    std::vector<long> v(nmax + 1, 0);
    v[0] = 1;
    for (int n = 1; n <= nmax; ++n) {
        std::vector<long> next;
        for (long g : frontier)
            for (long s : {-1L, 1L})
                if (!dist.count(g + s)) {
                    dist[g + s] = n;
                    next.push_back(g + s);
                }
        frontier = std::move(next);
        v[n] = v[n - 1] + (long)frontier.size();
    }
    return v;
}

std::vector<long> growth_series_infinite_dihedral(int nmax) {
    using El = std::pair<long, int>;
    auto mul = [](El a, El b) {
        return El{a.first + (a.second ? -b.first : b.first), a.second ^ b.second};
    };
    std::vector<El> gens = {{0, 1}, {1, 1}};
    std::map<El, int> dist;
    dist[{0, 0}] = 0;
    std::vector<El> frontier = {{0, 0}};
    std::vector<long> v(nmax + 1, 0);
    v[0] = 1;
    for (int n = 1; n <= nmax; ++n) {
        std::vector<El> next;
        for (El g : frontier)
            for (El s : gens) {
                El h = mul(g, s);
                if (!dist.count(h)) {
                    dist[h] = n;
                    next.push_back(h);
                }
            }
        frontier = std::move(next);
        v[n] = v[n - 1] + (long)frontier.size();
    }
    return v;
}

MomentEstimate mc_character_moment(const std::vector<ModelComponent>& comps,
                                   const std::vector<double>& weights, int p, int nsamples,
                                   std::uint64_t seed, int r) {
    const FiniteGroup& G = *comps[0].group;
    int K = comps[0].rep.K, M = (int)G.gens.size();
    double Np = std::pow((double)K * M, p);

    // word-count table n_g of the generator-power sum raised to the p-th power
    std::vector<std::pair<int, double>> words;
    if (r > 1) {
        std::vector<Int> a(G.order, Int(0));
        for (int gi : G.gens)
            for (int k = 0; k < K; ++k) a[G.power(gi, k)] += 1;
        std::vector<Int> cur(G.order, Int(0));
        cur[G.identity] = 1;
        for (int q = 0; q < p; ++q) {
            std::vector<Int> next(G.order, Int(0));
            for (int g = 0; g < G.order; ++g) {
                if (cur[g] == 0) continue;
                for (int h = 0; h < G.order; ++h)
                    if (a[h] != 0) next[G.op(g, h)] += cur[g] * a[h];
            }
            cur = std::move(next);
        }
        for (int g = 0; g < G.order; ++g)
            if (cur[g] != 0) words.push_back({g, to_double(Rat(cur[g])) / Np});
    }

    auto draw_component = [&](Rng& rng) {
        double u = rng.uniform();
        size_t ci = 0;
        double acc = 0;
        for (; ci < comps.size(); ++ci) {
            acc += weights[ci];
            if (u < acc) break;
        }
        return ci == comps.size() ? comps.size() - 1 : ci;
    };

    double sum = 0, sumsq = 0;
    const int chunk_size = 256;
    int done = 0, chunk = 0;
    while (done < nsamples) {
        Rng rng(seed + 0x9E3779B97F4A7C15ull * (std::uint64_t)(chunk + 1));
        int todo = std::min(chunk_size, nsamples - done);
        for (int s = 0; s < todo; ++s) {
            double val;
            if (r == 1) {
                RepPoint pt = sample_point(comps[draw_component(rng)], rng);
                Mat A = Mat::Zero(K, K);
                for (const Mat& g : pt.gen_mats) {
                    Mat pw = Mat::Identity(K, K);
                    for (int k = 0; k < K; ++k) {
                        A += pw;
                        pw = pw * g;
                    }
                }
                Mat Ap = Mat::Identity(K, K);
                for (int t = 0; t < p; ++t) Ap = Ap * A;
                val = Ap.trace().real() / (K * Np);
            } else {
                std::vector<std::vector<cxd>> tr(r);
                for (int t = 0; t < r; ++t) {
                    RepPoint pt = sample_point(comps[draw_component(rng)], rng);
                    tr[t].reserve(words.size());
                    for (auto& [g, wt] : words) tr[t].push_back(pt.elem_mats[g].trace() / (double)K);
                }
                cxd acc(0, 0);
                for (size_t wi = 0; wi < words.size(); ++wi) {
                    cxd prod(words[wi].second, 0);
                    for (int t = 0; t < r; ++t) prod *= tr[t][wi];
                    acc += prod;
                }
                val = acc.real();
            }
            sum += val;
            sumsq += val * val;
        }
        done += todo;
        ++chunk;
    }
    MomentEstimate est;
    est.samples = nsamples;
    est.mean = sum / nsamples;
    double var = (sumsq - sum * sum / nsamples) / (nsamples - 1);
    est.stderr_ = std::sqrt(std::max(0.0, var) / nsamples);
    return est;
}

}  // namespace qf
