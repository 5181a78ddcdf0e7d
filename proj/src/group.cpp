#include "qf/group.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qf {

int FiniteGroup::power(int a, long k) const {
    int r = identity;
    long e = k % element_order(a);
    if (e < 0) e += element_order(a);
    for (long i = 0; i < e; ++i) r = op(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const {
    int r = a, n = 1;
    while (r != identity) {
        r = op(r, a);
        ++n;
    }
    return n;
}

int FiniteGroup::exponent() const {
    long l = 1;
    for (int g = 0; g < order; ++g) l = std::lcm(l, (long)element_order(g));
    return (int)l;
}

bool FiniteGroup::abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::center() const {
    std::vector<int> z;
    for (int a = 0; a < order; ++a) {
        bool c = true;
        for (int b = 0; b < order && c; ++b) c = op(a, b) == op(b, a);
        if (c) z.push_back(a);
    }
    return z;
}

int FiniteGroup::commutator(int a, int b) const {
    return op(op(inv[a], inv[b]), op(a, b));
}

std::vector<int> FiniteGroup::generated_by(const std::vector<int>& s) const {
    std::vector<bool> seen(order, false);
    std::vector<int> out;
    std::queue<int> q;
    seen[identity] = true;
    q.push(identity);
    out.push_back(identity);
    while (!q.empty()) {
        int g = q.front();
        q.pop();
        for (int x : s) {
            for (int h : {op(g, x), op(g, inv[x])}) {
                if (!seen[h]) {
                    seen[h] = true;
                    out.push_back(h);
                    q.push(h);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> FiniteGroup::derived_subgroup() const {
    std::vector<int> comms;
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) comms.push_back(commutator(a, b));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return generated_by(comms);
}

std::vector<int> FiniteGroup::word(int g) const {
    std::vector<int> prev(order, -1), via(order, -1);
    std::vector<bool> seen(order, false);
    std::queue<int> q;
    seen[identity] = true;
    q.push(identity);
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        if (cur == g) break;
        for (size_t i = 0; i < gens.size(); ++i) {
            int nxt = op(cur, gens[i]);
            if (!seen[nxt]) {
                seen[nxt] = true;
                prev[nxt] = cur;
                via[nxt] = (int)i;
                q.push(nxt);
            }
        }
    }
    if (!seen[g]) throw std::logic_error("generators do not reach element");
    std::vector<int> w;
    for (int cur = g; cur != identity; cur = prev[cur]) w.push_back(via[cur]);
    std::reverse(w.begin(), w.end());
    return w;
}

std::optional<std::pair<int, int>> FiniteGroup::abel_coords(int g) const {
    int K = gen_order;
    if (!ab_tried_) {
        ab_tried_ = true;
        ab_.assign(order, {-1, -1});
        ab_[identity] = {0, 0};
        std::queue<int> q;
        q.push(identity);
        bool ok = gens.size() == 2;
        while (ok && !q.empty()) {
            int cur = q.front();
            q.pop();
            for (int i = 0; i < 2; ++i) {
                int nxt = op(cur, gens[i]);
                std::array<int, 2> v = ab_[cur];
                v[i] = (v[i] + 1) % K;
                if (ab_[nxt][0] < 0) {
                    ab_[nxt] = v;
                    q.push(nxt);
                } else if (ab_[nxt] != v) {
                    ok = false;
                    break;
                }
            }
        }
        // verify every edge, not only tree edges
        if (ok) {
            for (int cur = 0; cur < order && ok; ++cur)
                for (int i = 0; i < 2 && ok; ++i) {
                    int nxt = op(cur, gens[i]);
                    std::array<int, 2> v = ab_[cur];
                    v[i] = (v[i] + 1) % K;
                    ok = ab_[nxt] == v;
                }
        }
        ab_ok_ = ok;
    }
    if (!ab_ok_) return std::nullopt;
    return std::make_pair(ab_[g][0], ab_[g][1]);
}

void FiniteGroup::finalize() {
    inv.assign(order, -1);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (mul[a][b] == identity) inv[a] = b;
    classes = conjugacy_classes(*this);
    class_of.assign(order, -1);
    for (size_t c = 0; c < classes.size(); ++c)
        for (int g : classes[c]) class_of[g] = (int)c;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G) {
    std::vector<bool> done(G.order, false);
    std::vector<std::vector<int>> cls;
    for (int g = 0; g < G.order; ++g) {
        if (done[g]) continue;
        std::set<int> orbit;
        for (int h = 0; h < G.order; ++h) orbit.insert(G.op(G.op(h, g), G.inv[h]));
        std::vector<int> c(orbit.begin(), orbit.end());
        for (int x : c) done[x] = true;
        cls.push_back(c);
    }
    std::sort(cls.begin(), cls.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    // identity class first
    for (size_t i = 0; i < cls.size(); ++i)
        if (std::find(cls[i].begin(), cls[i].end(), G.identity) != cls[i].end()) {
            std::swap(cls[0], cls[i]);
            break;
        }
    return cls;
}

FiniteGroup build_dihedral(int n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("dihedral: n must be even, >= 4");
    FiniteGroup G;
    G.family = Family::Dihedral;
    G.name = "dihedral:" + std::to_string(n);
    G.order = 2 * n;
    auto enc = [n](int t, int s) { return s * n + t; };
    G.mul.assign(G.order, std::vector<int>(G.order));
    G.coords.resize(G.order);
    G.elem_names.resize(G.order);
    for (int t = 0; t < n; ++t)
        for (int s = 0; s < 2; ++s) {
            G.coords[enc(t, s)] = {t, s};
            std::ostringstream nm;
            if (t == 0 && s == 0) nm << "e";
            if (t > 0) nm << "r" << (t > 1 ? "^" + std::to_string(t) : "");
            if (s) nm << (t > 0 ? " f" : "f");
            G.elem_names[enc(t, s)] = nm.str();
        }
    for (int t1 = 0; t1 < n; ++t1)
        for (int s1 = 0; s1 < 2; ++s1)
            for (int t2 = 0; t2 < n; ++t2)
                for (int s2 = 0; s2 < 2; ++s2) {
                    int t = ((t1 + (s1 ? n - t2 : t2)) % n);
                    G.mul[enc(t1, s1)][enc(t2, s2)] = enc(t, s1 ^ s2);
                }
    G.identity = enc(0, 0);
    G.gens = {enc(0, 1), enc(1, 1)};  // two reflections, product has order n
    G.gen_order = 2;
    G.finalize();
    return G;
}

namespace {
bool is_prime(int k) {
    if (k < 2) return false;
    for (int d = 2; d * d <= k; ++d)
        if (k % d == 0) return false;
    return true;
}
}  // namespace

FiniteGroup build_heisenberg(int K) {
    if (!is_prime(K)) throw std::invalid_argument("heisenberg: K must be prime");
    FiniteGroup G;
    G.family = Family::Heisenberg;
    G.name = "heisenberg:" + std::to_string(K);
    G.order = K * K * K;
    auto enc = [K](int a, int b, int c) { return (a * K + b) * K + c; };
    G.mul.assign(G.order, std::vector<int>(G.order));
    G.coords.resize(G.order);
    G.elem_names.resize(G.order);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            for (int c = 0; c < K; ++c) {
                G.coords[enc(a, b, c)] = {a, b, c};
                std::ostringstream nm;
                nm << "(" << a << "," << b << "," << c << ")";
                G.elem_names[enc(a, b, c)] = nm.str();
            }
    for (int a1 = 0; a1 < K; ++a1)
        for (int b1 = 0; b1 < K; ++b1)
            for (int c1 = 0; c1 < K; ++c1)
                for (int a2 = 0; a2 < K; ++a2)
                    for (int b2 = 0; b2 < K; ++b2)
                        for (int c2 = 0; c2 < K; ++c2)
                            G.mul[enc(a1, b1, c1)][enc(a2, b2, c2)] =
                                enc((a1 + a2) % K, (b1 + b2) % K, (c1 + c2 + a1 * b2) % K);
    G.identity = enc(0, 0, 0);
    G.gens = {enc(1, 0, 0), enc(0, 1, 0)};
    G.gen_order = K;
    G.finalize();
    return G;
}

namespace {
// m = [[0,1],[1,1]] over F_2; v is a 4-bit tensor p_i (x) q_j with bit
// index 2*(i-1) + (j-1); mx = m (x) I, my = I (x) m
int apply_m_left(int v) {  // p1 -> p2, p2 -> p1 + p2, per q column
    int out = 0;
    for (int j = 0; j < 2; ++j) {
        int p1 = (v >> (0 + j)) & 1, p2 = (v >> (2 + j)) & 1;
        int n1 = p2, n2 = p1 ^ p2;
        out |= n1 << (0 + j);
        out |= n2 << (2 + j);
    }
    return out;
}
int apply_m_right(int v) {  // q1 -> q2, q2 -> q1 + q2, per p row
    int out = 0;
    for (int i = 0; i < 2; ++i) {
        int q1 = (v >> (2 * i + 0)) & 1, q2 = (v >> (2 * i + 1)) & 1;
        int n1 = q2, n2 = q1 ^ q2;
        out |= n1 << (2 * i + 0);
        out |= n2 << (2 * i + 1);
    }
    return out;
}
int meta_phi(int h1, int h2, int v) {
    for (int i = 0; i < h1; ++i) v = apply_m_left(v);
    for (int i = 0; i < h2; ++i) v = apply_m_right(v);
    return v;
}
}  // namespace

int meta_encode(int v, int h1, int h2) { return v * 9 + h1 * 3 + h2; }

std::array<int, 3> meta_decode(int idx) { return {idx / 9, (idx / 3) % 3, idx % 3}; }

FiniteGroup build_meta144() {
    FiniteGroup G;
    G.family = Family::Meta144;
    G.name = "meta144";
    G.order = 144;
    G.mul.assign(144, std::vector<int>(144));
    G.coords.resize(144);
    G.elem_names.resize(144);
    for (int v = 0; v < 16; ++v)
        for (int h1 = 0; h1 < 3; ++h1)
            for (int h2 = 0; h2 < 3; ++h2) {
                int idx = meta_encode(v, h1, h2);
                G.coords[idx] = {v, h1, h2};
                std::ostringstream nm;
                nm << "(" << v << ";" << h1 << "," << h2 << ")";
                G.elem_names[idx] = nm.str();
            }
    for (int idx1 = 0; idx1 < 144; ++idx1) {
        auto [v1, a1, b1] = meta_decode(idx1);
        for (int idx2 = 0; idx2 < 144; ++idx2) {
            auto [v2, a2, b2] = meta_decode(idx2);
            G.mul[idx1][idx2] =
                meta_encode(v1 ^ meta_phi(a1, b1, v2), (a1 + a2) % 3, (b1 + b2) % 3);
        }
    }
    G.identity = meta_encode(0, 0, 0);
    // x = pure Z_3^2 element; y carries an offset in A so that <x, y> is the
    // whole group rather than the complement
    G.gens = {meta_encode(0, 1, 0), meta_encode(1, 0, 1)};
    G.gen_order = 3;
    G.finalize();
    return G;
}

FiniteGroup build_abelian(int K, int M) {
    if (K < 1 || M < 1) throw std::invalid_argument("abelian: K, M >= 1");
    FiniteGroup G;
    G.family = Family::Abelian;
    G.name = "abelian:" + std::to_string(K) + "x" + std::to_string(M);
    int n = 1;
    for (int i = 0; i < M; ++i) n *= K;
    G.order = n;
    G.mul.assign(n, std::vector<int>(n));
    G.coords.resize(n);
    G.elem_names.resize(n);
    auto dec = [K, M](int idx) {
        std::vector<int> t(M);
        for (int i = M - 1; i >= 0; --i) {
            t[i] = idx % K;
            idx /= K;
        }
        return t;
    };
    auto enc = [K, M](const std::vector<int>& t) {
        int idx = 0;
        for (int i = 0; i < M; ++i) idx = idx * K + t[i];
        return idx;
    };
    for (int a = 0; a < n; ++a) {
        G.coords[a] = dec(a);
        std::ostringstream nm;
        nm << "(";
        for (int i = 0; i < M; ++i) nm << G.coords[a][i] << (i + 1 < M ? "," : ")");
        G.elem_names[a] = nm.str();
        for (int b = 0; b < n; ++b) {
            std::vector<int> s(M);
            auto tb = dec(b);
            for (int i = 0; i < M; ++i) s[i] = (G.coords[a][i] + tb[i]) % K;
            G.mul[a][b] = enc(s);
        }
    }
    G.identity = 0;
    for (int i = 0; i < M; ++i) {
        std::vector<int> t(M, 0);
        t[i] = 1;
        G.gens.push_back(enc(t));
    }
    G.gen_order = K;
    G.finalize();
    return G;
}

FiniteGroup parse_group_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    if (head == "meta144") return build_meta144();
    if (colon == std::string::npos) throw std::invalid_argument("bad group spec: " + spec);
    std::string arg = spec.substr(colon + 1);
    if (head == "dihedral") return build_dihedral(std::stoi(arg));
    if (head == "heisenberg") return build_heisenberg(std::stoi(arg));
    if (head == "abelian") {
        auto x = arg.find('x');
        if (x == std::string::npos) throw std::invalid_argument("bad abelian spec: " + spec);
        return build_abelian(std::stoi(arg.substr(0, x)), std::stoi(arg.substr(x + 1)));
    }
    throw std::invalid_argument("unknown group family: " + head);
}

}  // namespace qf
