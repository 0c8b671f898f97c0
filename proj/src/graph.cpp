#include "autoseq/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "autoseq/constructions.hpp"
#include "autoseq/ratlin.hpp"

namespace autoseq {

namespace {

// Iterative Tarjan over the transition multigraph.
struct TarjanState {
    const Automaton& a;
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int counter = 0, ncomp = 0;

    explicit TarjanState(const Automaton& a_)
        : a(a_),
          index(a_.num_states(), -1),
          low(a_.num_states(), 0),
          comp(a_.num_states(), -1),
          on_stack(a_.num_states(), false) {}

    void run(int root) {
        struct Frame { int v; int digit; };
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.digit < a.base) {
                int w = a.delta[f.v][f.digit++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
};

}  // namespace

SccReport scc_analysis(const Automaton& a) {
    int n = a.num_states();
    TarjanState t(a);
    for (int s = 0; s < n; ++s)
        if (t.index[s] < 0) t.run(s);
    SccReport rep;
    rep.component_of = t.comp;
    rep.components.assign(t.ncomp, {});
    for (int s = 0; s < n; ++s) rep.components[t.comp[s]].push_back(s);
    rep.terminal.assign(t.ncomp, true);
    std::set<std::pair<int, int>> edges;
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < a.base; ++j) {
            int c1 = t.comp[s], c2 = t.comp[a.delta[s][j]];
            if (c1 != c2) {
                edges.insert({c1, c2});
                rep.terminal[c1] = false;
            }
        }
    rep.condensation.assign(edges.begin(), edges.end());
    return rep;
}

bool is_strongly_connected(const Automaton& a) {
    return scc_analysis(a).num_components() == 1;
}

namespace {

// Shortest word (LSD-first) from `from` to `to`.
std::vector<int> shortest_word(const Automaton& a, int from, int to) {
    if (from == to) return {};
    std::vector<std::pair<int, int>> parent(a.num_states(), {-1, -1});
    std::queue<int> bfs;
    bfs.push(from);
    std::vector<bool> seen(a.num_states(), false);
    seen[from] = true;
    while (!bfs.empty()) {
        int s = bfs.front();
        bfs.pop();
        for (int j = 0; j < a.base; ++j) {
            int t = a.delta[s][j];
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = {s, j};
                if (t == to) {
                    std::vector<int> w;
                    for (int cur = to; cur != from;) {
                        auto [p, d] = parent[cur];
                        w.push_back(d);
                        cur = p;
                    }
                    std::reverse(w.begin(), w.end());
                    return w;  // digits in reading order
                }
                bfs.push(t);
            }
        }
    }
    throw AutomatonError("requires strong connectivity");
}

mpz_class word_value_z(const std::vector<int>& w, int base, int repeats) {
    mpz_class v = 0, pw = 1;
    for (int rep = 0; rep < repeats; ++rep)
        for (int d : w) {
            v += d * pw;
            pw *= base;
        }
    return v;
}

void factor_into(mpz_class n, std::map<mpz_class, int>& factors) {
    if (n <= 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
        ++factors[n];
        return;
    }
    // Pollard rho
    mpz_class x = 2, y = 2, d = 1, c = 1;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(12345);
    while (d == 1 || d == n) {
        if (d == n) {
            c = rng.get_z_range(n - 3) + 1;
            x = y = 2;
            d = 1;
        }
        x = (x * x + c) % n;
        y = (y * y + c) % n;
        y = (y * y + c) % n;
        d = gcd(abs(x - y), n);
    }
    factor_into(d, factors);
    factor_into(n / d, factors);
}

// Exact reachability test: does q divide every element of D_{A,s}?
bool divides_all_loop_differences(const Automaton& a, int s, long q) {
    if (q == 1) return true;
    // states ((s1,s2), diff mod q, weight k^t mod q)
    long n = a.num_states();
    auto enc = [&](long s1, long s2, long dv, long w) {
        return ((s1 * n + s2) * q + dv) * q + w;
    };
    std::vector<bool> seen(static_cast<std::size_t>(n * n * q * q), false);
    std::queue<std::array<long, 4>> bfs;
    auto push = [&](long s1, long s2, long dv, long w) {
        std::size_t e = static_cast<std::size_t>(enc(s1, s2, dv, w));
        if (!seen[e]) {
            seen[e] = true;
            bfs.push({s1, s2, dv, w});
        }
    };
    push(s, s, 0, 1 % q);
    while (!bfs.empty()) {
        auto [s1, s2, dv, w] = bfs.front();
        bfs.pop();
        if (s1 == s && s2 == s && dv != 0) return false;
        for (int j1 = 0; j1 < a.base; ++j1)
            for (int j2 = 0; j2 < a.base; ++j2) {
                long nd = (dv + w * (j1 - j2)) % q;
                if (nd < 0) nd += q;
                push(a.delta[s1][j1], a.delta[s2][j2], nd, (w * a.base) % q);
            }
    }
    return true;
}

}  // namespace

long cycle_gcd(const Automaton& a, int state) {
    if (!is_strongly_connected(a)) throw AutomatonError("requires strong connectivity");
    int n = a.num_states();
    int s = state;

    // One guaranteed nonzero element of D_{A,s}: a loop whose first-read
    // digit is 0 against one whose first-read digit is 1, repeated to a
    // common length.  Their values differ mod k.
    std::vector<int> u{0}, v{1};
    {
        auto back0 = shortest_word(a, a.delta[s][0], s);
        auto back1 = shortest_word(a, a.delta[s][1], s);
        u.insert(u.end(), back0.begin(), back0.end());
        v.insert(v.end(), back1.begin(), back1.end());
    }
    mpz_class dstar = word_value_z(u, a.base, static_cast<int>(v.size())) -
                      word_value_z(v, a.base, static_cast<int>(u.size()));
    mpz_class g = abs(dstar);

    // Shrink g with differences of short loops before factoring.
    long max_len = 1;
    long total = a.base;
    while (max_len < 2 * n * n + 2 && total * a.base <= 200000) {
        ++max_len;
        total *= a.base;
    }
    {
        std::map<int, std::vector<mpz_class>> by_len;  // loop values per length
        // DFS over words up to max_len
        struct Node { int st; int len; mpz_class val; mpz_class pw; };
        std::vector<Node> stack{{s, 0, 0, 1}};
        while (!stack.empty()) {
            Node nd = stack.back();
            stack.pop_back();
            if (nd.len > 0 && nd.st == s) by_len[nd.len].push_back(nd.val);
            if (nd.len < max_len)
                for (int j = 0; j < a.base; ++j)
                    stack.push_back({a.delta[nd.st][j], nd.len + 1,
                                     nd.val + j * nd.pw, nd.pw * a.base});
        }
        for (auto& [len, vals] : by_len)
            for (std::size_t i = 1; i < vals.size(); ++i)
                g = gcd(g, vals[i] - vals[0]);
    }

    if (g == 0) {
        if (n > 1) throw AutomatonError("degenerate cycle structure");
        return 1;
    }

    // d_A is the largest divisor of g, coprime to k, dividing every loop
    // difference; decide prime power by prime power with the exact modular
    // reachability test.
    std::map<mpz_class, int> factors;
    factor_into(g, factors);
    long d = 1;
    for (auto& [p, e] : factors) {
        if (gcd(p, mpz_class(a.base)) != 1) continue;
        if (!p.fits_slong_p()) continue;  // cannot divide d_A of a small automaton meaningfully
        long pl = p.get_si();
        long q = 1;
        for (int i = 0; i < e; ++i) {
            if (q > 1000000 / pl) break;
            long cand = q * pl;
            if (!divides_all_loop_differences(a, s, cand)) break;
            q = cand;
        }
        d *= q;
    }

    // invariants: coprime to the base and state-independent
    if (std::gcd(d, static_cast<long>(a.base)) != 1)
        throw AutomatonError("cycle gcd internal error: not coprime to base");
    if (n > 1) {
        int other = (state + 1) % n;
        if (!divides_all_loop_differences(a, other, d))
            throw AutomatonError("cycle gcd internal error: state dependence");
    }
    return d;
}

AperiodicityCertificate check_aperiodic(const Automaton& a) {
    if (!is_strongly_connected(a)) throw AutomatonError("requires strong connectivity");
    AperiodicityCertificate cert;
    cert.d = cycle_gcd(a, 0);
    cert.zero_fixed_state = -1;
    for (int s = 0; s < a.num_states(); ++s)
        if (a.delta[s][0] == s) {
            cert.zero_fixed_state = s;
            break;
        }
    if (cert.d != 1) {
        cert.strongly_aperiodic = false;
        cert.failed_condition = "cycle gcd d = " + std::to_string(cert.d) + " != 1";
    } else if (cert.zero_fixed_state < 0) {
        cert.strongly_aperiodic = false;
        cert.failed_condition = "no state fixed by digit 0";
    } else {
        cert.strongly_aperiodic = true;
    }
    return cert;
}

FrequencyTable frequencies(const Automaton& a, long q) {
    if (q < 1) throw AutomatonError("modulus must be positive");
    if (std::gcd(q, static_cast<long>(a.base)) != 1)
        throw AutomatonError("factor out k-part first");
    if (!is_strongly_connected(a)) throw AutomatonError("requires strong connectivity");
    if (!a.has_initial()) throw AutomatonError("incomplete automaton");

    int n = a.num_states();
    // block length l = ord_q(k), so k^l == 1 mod q and digit-position weights
    // are well-defined on blocks
    int l = 1;
    {
        long w = a.base % q;
        while (w != 1 % q) {
            w = (w * a.base) % q;
            ++l;
            if (l > q) throw AutomatonError("order computation failed");
        }
    }
    if (static_cast<long>(n) * q > 20000)
        throw AutomatonError("frequency chain too large");

    // Per-source-state counts over (target, value delta mod q) for words of
    // length l.  mpz, since counts reach k^l.
    std::vector<std::vector<std::vector<mpz_class>>> cnt(
        n, std::vector<std::vector<mpz_class>>(n, std::vector<mpz_class>(q, 0)));
    for (int src = 0; src < n; ++src) {
        std::vector<std::vector<mpz_class>> cur(n, std::vector<mpz_class>(q, 0));
        cur[src][0] = 1;
        long w = 1;
        for (int t = 0; t < l; ++t) {
            std::vector<std::vector<mpz_class>> nxt(n, std::vector<mpz_class>(q, 0));
            for (int st = 0; st < n; ++st)
                for (long dv = 0; dv < q; ++dv) {
                    if (cur[st][dv] == 0) continue;
                    for (int j = 0; j < a.base; ++j)
                        nxt[a.delta[st][j]][(dv + j * w) % q] += cur[st][dv];
                }
            cur = std::move(nxt);
            w = (w * a.base) % q;
        }
        cnt[src] = std::move(cur);
    }

    mpz_class rowsum;
    mpz_ui_pow_ui(rowsum.get_mpz_t(), a.base, l);

    // Block chain on (state, residue); limiting distribution from
    // (initial, 0) as Cesaro limit: absorption probabilities into terminal
    // classes weighted by their stationary distributions.
    long m = static_cast<long>(n) * q;
    auto enc = [&](int s, long r) { return static_cast<long>(s) * q + r; };
    std::vector<std::vector<mpz_class>> b(m, std::vector<mpz_class>(m, 0));
    for (int s = 0; s < n; ++s)
        for (long r = 0; r < q; ++r)
            for (int s2 = 0; s2 < n; ++s2)
                for (long dv = 0; dv < q; ++dv)
                    if (cnt[s][s2][dv] != 0)
                        b[enc(s, r)][enc(s2, (r + dv) % q)] += cnt[s][s2][dv];

    // terminal classes of the chain graph
    Automaton chain;  // reuse Tarjan via a pseudo-automaton with edge lists
    std::vector<std::vector<int>> succ(m);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            if (b[i][j] != 0) succ[i].push_back(static_cast<int>(j));
    // simple Kosaraju-free SCC via Tarjan on adjacency lists
    std::vector<int> comp(m, -1);
    {
        std::vector<int> idx(m, -1), low(m, 0), stk;
        std::vector<bool> on(m, false);
        int counter = 0, nc = 0;
        struct Frame { int v; std::size_t ei; };
        for (long root = 0; root < m; ++root) {
            if (idx[root] >= 0) continue;
            std::vector<Frame> frames{{static_cast<int>(root), 0}};
            idx[root] = low[root] = counter++;
            stk.push_back(static_cast<int>(root));
            on[root] = true;
            while (!frames.empty()) {
                Frame& f = frames.back();
                if (f.ei < succ[f.v].size()) {
                    int w2 = succ[f.v][f.ei++];
                    if (idx[w2] < 0) {
                        idx[w2] = low[w2] = counter++;
                        stk.push_back(w2);
                        on[w2] = true;
                        frames.push_back({w2, 0});
                    } else if (on[w2]) {
                        low[f.v] = std::min(low[f.v], idx[w2]);
                    }
                } else {
                    int v = f.v;
                    frames.pop_back();
                    if (low[v] == idx[v]) {
                        while (true) {
                            int w2 = stk.back();
                            stk.pop_back();
                            on[w2] = false;
                            comp[w2] = nc;
                            if (w2 == v) break;
                        }
                        ++nc;
                    }
                    if (!frames.empty())
                        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                }
            }
        }
    }
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<bool> terminal(ncomp, true);
    for (long i = 0; i < m; ++i)
        for (int j : succ[i])
            if (comp[i] != comp[j]) terminal[comp[i]] = false;

    // stationary distribution per terminal class
    std::vector<RatVec> class_pi(ncomp);
    std::vector<std::vector<long>> class_states(ncomp);
    for (long i = 0; i < m; ++i) class_states[comp[i]].push_back(i);
    for (int c = 0; c < ncomp; ++c) {
        if (!terminal[c]) continue;
        auto& cs = class_states[c];
        std::vector<std::vector<mpz_class>> sub(cs.size(),
                                                std::vector<mpz_class>(cs.size(), 0));
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) sub[i][j] = b[cs[i]][cs[j]];
        if (!stationary_distribution(sub, rowsum, class_pi[c]))
            throw AutomatonError("stationary solve failed");
    }

    // absorption probabilities from the start (initial, 0)
    long start = enc(a.initial, 0);
    std::vector<long> transient;
    std::vector<long> tindex(m, -1);
    for (long i = 0; i < m; ++i)
        if (!terminal[comp[i]]) {
            tindex[i] = static_cast<long>(transient.size());
            transient.push_back(i);
        }
    std::vector<RatVec> absorb(ncomp);  // absorb[c][ti]
    if (!transient.empty()) {
        for (int c = 0; c < ncomp; ++c) {
            if (!terminal[c]) continue;
            RatMat aa(transient.size(), RatVec(transient.size(), 0));
            RatVec bb(transient.size(), 0);
            for (std::size_t i = 0; i < transient.size(); ++i) {
                aa[i][i] = 1;
                for (long j : succ[transient[i]]) {
                    mpq_class pr(b[transient[i]][j], rowsum);
                    pr.canonicalize();
                    if (tindex[j] >= 0)
                        aa[i][tindex[j]] -= pr;
                    else if (comp[j] == c)
                        bb[i] += pr;
                }
            }
            if (!solve_linear(std::move(aa), std::move(bb), absorb[c]))
                throw AutomatonError("absorption solve failed");
        }
    }

    // Cesaro-limit occupation measure from the start
    RatVec mu(m, 0);
    if (tindex[start] < 0) {
        int c = comp[start];
        for (std::size_t i = 0; i < class_states[c].size(); ++i)
            mu[class_states[c][i]] = class_pi[c][i];
    } else {
        for (int c = 0; c < ncomp; ++c) {
            if (!terminal[c]) continue;
            mpq_class h = absorb[c][tindex[start]];
            for (std::size_t i = 0; i < class_states[c].size(); ++i)
                mu[class_states[c][i]] += h * class_pi[c][i];
        }
    }

    FrequencyTable table;
    table.q = q;
    table.block_length = l;
    table.pi.assign(n, RatVec(q, 0));
    table.pi_approx.assign(n, std::vector<double>(q, 0.0));
    for (long r = 0; r < q; ++r) {
        mpq_class denom = 0;
        for (int s = 0; s < n; ++s) denom += mu[enc(s, r)];
        for (int s = 0; s < n; ++s) {
            mpq_class val = denom == 0 ? mpq_class(0) : mpq_class(mu[enc(s, r)] / denom);
            table.pi[s][r] = val;
            table.pi_approx[s][r] = val.get_d();
        }
    }
    return table;
}

int GroupPresentation::mul(int x, int y) const {
    const auto& gx = elements[x];
    const auto& gy = elements[y];
    std::vector<int> comp(gx.size());
    for (std::size_t s = 0; s < gx.size(); ++s) comp[s] = gx[gy[s]];
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == comp) return static_cast<int>(i);
    return -1;
}

std::optional<GroupPresentation> invertibility(const Automaton& a) {
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    Automaton p = a.pruned();
    int n = p.num_states();
    std::vector<std::vector<int>> gens;
    for (int j = 0; j < p.base; ++j) {
        auto perm = p.digit_permutation(j);
        if (perm.empty()) return std::nullopt;  // digit action not a bijection
        gens.push_back(std::move(perm));
    }
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    if (gens[0] != id) return std::nullopt;  // g(0) must be the identity

    GroupPresentation g;
    g.generators = gens;
    std::map<std::vector<int>, int> index;
    g.elements.push_back(id);
    index[id] = 0;
    g.identity = 0;
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        for (int j = 1; j < p.base; ++j) {
            std::vector<int> comp(n);
            for (int s = 0; s < n; ++s) comp[s] = gens[j][g.elements[i][s]];
            if (!index.count(comp)) {
                index[comp] = static_cast<int>(g.elements.size());
                g.elements.push_back(comp);
                if (g.elements.size() > 100000)
                    throw AutomatonError("group closure too large");
            }
        }
    }
    g.element_of_generator.resize(p.base);
    for (int j = 0; j < p.base; ++j) g.element_of_generator[j] = index[gens[j]];
    for (const auto& el : g.elements) g.projection.push_back(p.output[el[p.initial]]);
    return g;
}

AperiodicDecomposition decompose_aperiodic(const Automaton& a) {
    Automaton p = a.pruned();
    if (!p.normalized) throw AutomatonError("decomposition requires a normalized automaton");
    if (!is_strongly_connected(p)) throw AutomatonError("requires strong connectivity");

    long q = cycle_gcd(p, 0);

    // preperiod/period of the 0-action under iteration
    int n = p.num_states();
    std::vector<int> p0(n);
    for (int s = 0; s < n; ++s) p0[s] = p.delta[s][0];
    std::map<std::vector<int>, int> seen;
    std::vector<int> cur(n);
    std::iota(cur.begin(), cur.end(), 0);
    int step = 0, preperiod = -1, period = -1;
    while (true) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            preperiod = it->second;
            period = step - it->second;
            break;
        }
        seen[cur] = step++;
        std::vector<int> nxt(n);
        for (int s = 0; s < n; ++s) nxt[s] = p0[cur[s]];
        cur = std::move(nxt);
    }
    long l0 = period;
    while (l0 < preperiod) l0 += period;
    if (l0 == 0) l0 = 1;

    AperiodicDecomposition dec;
    long l = l0;
    const long cap = l0 * 64;
    Automaton prim;
    while (true) {
        prim = base_change(p, static_cast<int>(l));
        Automaton next = base_change(p, static_cast<int>(2 * l));
        bool stable = prim.num_states() == next.num_states();
        bool idempotent = true;
        for (int s = 0; s < prim.num_states() && idempotent; ++s)
            idempotent = prim.delta[prim.delta[s][0]][0] == prim.delta[s][0];
        bool zero_absorbed = prim.base > q;
        for (int s = 0; s < prim.num_states() && zero_absorbed; ++s)
            for (long j = 0; j < q && zero_absorbed; ++j)
                zero_absorbed =
                    prim.delta[prim.delta[s][j]][0] == prim.delta[s][j];
        if (stable && idempotent && zero_absorbed) break;
        l += l0;
        if (l > cap) throw AutomatonError("base-change stabilization failed");
    }

    dec.k_prime = prim.base;
    dec.q = q;
    for (long r = 0; r < q; ++r) {
        Automaton part = restrict_ap(prim, q, r).pruned();
        // every terminal component must pass the sufficient aperiodicity test
        SccReport rep = scc_analysis(part);
        for (int c = 0; c < rep.num_components(); ++c) {
            if (!rep.terminal[c]) continue;
            // component sub-automaton
            const auto& cs = rep.components[c];
            std::vector<int> remap(part.num_states(), -1);
            for (std::size_t i = 0; i < cs.size(); ++i) remap[cs[i]] = static_cast<int>(i);
            Automaton sub;
            sub.base = part.base;
            for (int s : cs) {
                sub.state_names.push_back(part.state_names[s]);
                std::vector<int> row(part.base);
                for (int j = 0; j < part.base; ++j) {
                    int t = part.delta[s][j];
                    if (remap[t] < 0) throw AutomatonError("terminal component not closed");
                    row[j] = remap[t];
                }
                sub.delta.push_back(std::move(row));
            }
            AperiodicityCertificate cert = check_aperiodic(sub);
            if (!cert.strongly_aperiodic)
                throw AutomatonError("decomposition produced a non-aperiodic terminal component: " +
                                     cert.failed_condition);
        }
        dec.parts.push_back(std::move(part));
    }
    return dec;
}

}  // namespace autoseq
