#include "autoseq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "autoseq/constructions.hpp"
#include "autoseq/graph.hpp"
#include "autoseq/ratlin.hpp"
#include "autoseq/sequence.hpp"

namespace autoseq {

namespace {

bool all_exact(const std::vector<OutputValue>& v) {
    for (const auto& x : v)
        if (!x.is_exact()) return false;
    return true;
}

// sum over s of counts[s] * values[s], exact when the values are.
OutputValue value_dot(const std::vector<mpz_class>& counts,
                      const std::vector<OutputValue>& values) {
    if (all_exact(values)) {
        ExactC acc;
        for (std::size_t s = 0; s < counts.size(); ++s)
            if (counts[s] != 0) acc = acc + mpq_class(counts[s]) * (*values[s].exact);
        return OutputValue(acc);
    }
    Complex acc{0.0, 0.0};
    for (std::size_t s = 0; s < counts.size(); ++s)
        if (counts[s] != 0) acc += counts[s].get_d() * values[s].approx;
    return OutputValue(acc);
}

std::vector<std::vector<mpz_class>> count_matrix(const Automaton& a) {
    int n = a.num_states();
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < a.base; ++j) m[s][a.delta[s][j]] += 1;
    return m;
}

std::vector<std::vector<mpz_class>> mat_mul(
    const std::vector<std::vector<mpz_class>>& x,
    const std::vector<std::vector<mpz_class>>& y) {
    std::size_t n = x.size();
    std::vector<std::vector<mpz_class>> r(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (x[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (y[k][j] != 0) r[i][j] += x[i][k] * y[k][j];
        }
    return r;
}

// Period of one strongly connected component (gcd of its cycle lengths).
int component_period(const Automaton& a, const std::vector<int>& members,
                     const std::vector<int>& component_of) {
    std::vector<long> level(a.num_states(), -1);
    std::queue<int> bfs;
    level[members[0]] = 0;
    bfs.push(members[0]);
    long g = 0;
    int comp = component_of[members[0]];
    while (!bfs.empty()) {
        int s = bfs.front();
        bfs.pop();
        for (int j = 0; j < a.base; ++j) {
            int t = a.delta[s][j];
            if (component_of[t] != comp) continue;
            if (level[t] < 0) {
                level[t] = level[s] + 1;
                bfs.push(t);
            } else {
                g = std::gcd(g, level[s] + 1 - level[t]);
            }
        }
    }
    return static_cast<int>(g > 0 ? g : 1);
}

}  // namespace

BlockSumTable block_sums(const Automaton& a, int L_max) {
    if (!a.normalized) throw AutomatonError("block sums require a normalized automaton");
    Automaton p = a.pruned();
    int n = p.num_states();
    BlockSumTable t;
    t.base = p.base;
    t.L_max = L_max;
    t.M.assign(n, std::vector<long>(n, 0));
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < p.base; ++j) ++t.M[s][p.delta[s][j]];
    t.counts.assign(L_max + 1, std::vector<mpz_class>(n, 0));
    t.counts[0][p.initial] = 1;
    for (int L = 0; L < L_max; ++L)
        for (int s = 0; s < n; ++s) {
            if (t.counts[L][s] == 0) continue;
            for (int j = 0; j < p.base; ++j)
                t.counts[L + 1][p.delta[s][j]] += t.counts[L][s];
        }
    t.variants = cokernel_output_variants(p);
    t.sigma.assign(t.variants.size(), {});
    for (std::size_t b = 0; b < t.variants.size(); ++b) {
        t.sigma[b].reserve(L_max + 1);
        for (int L = 0; L <= L_max; ++L)
            t.sigma[b].push_back(value_dot(t.counts[L], t.variants[b]));
    }
    return t;
}

OutputValue partial_sum(const Automaton& a, unsigned long long N) {
    if (N < 1) throw AutomatonError("partial sum requires N >= 1");
    if (!a.normalized) throw AutomatonError("partial sum requires a normalized automaton");
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    Automaton p = a.pruned();
    int n = p.num_states();
    std::vector<int> d = digits_lsd(N, p.base);
    int L = static_cast<int>(d.size());
    // counts[l][s]: words of length l from the initial state reaching s
    std::vector<std::vector<mpz_class>> counts(L, std::vector<mpz_class>(n, 0));
    counts[0][p.initial] = 1;
    for (int l = 0; l + 1 < L; ++l)
        for (int s = 0; s < n; ++s) {
            if (counts[l][s] == 0) continue;
            for (int j = 0; j < p.base; ++j)
                counts[l + 1][p.delta[s][j]] += counts[l][s];
        }
    bool exact = p.has_exact_output();
    ExactC exact_acc;
    Complex approx_acc{0.0, 0.0};
    unsigned long long hi = 0;  // N / base^(i+1): the digits above position i
    for (int i = L - 1; i >= 0; --i) {
        for (int j = 0; j < d[i]; ++j) {
            unsigned long long m =
                hi * static_cast<unsigned long long>(p.base) +
                static_cast<unsigned long long>(j);
            std::vector<int> md = digits_lsd(m, p.base);
            std::vector<OutputValue> tau_m(n);
            for (int s = 0; s < n; ++s) tau_m[s] = p.output[p.run(s, md)];
            OutputValue block = value_dot(counts[i], tau_m);
            if (exact)
                exact_acc = exact_acc + *block.exact;
            else
                approx_acc += block.approx;
        }
        hi = hi * static_cast<unsigned long long>(p.base) +
             static_cast<unsigned long long>(d[i]);
    }
    if (exact) return OutputValue(exact_acc);
    return OutputValue(approx_acc);
}

BalanceCertificate is_balanced(const Automaton& a) {
    if (!a.normalized) throw AutomatonError("balance test requires a normalized automaton");
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    Automaton p = a.pruned();
    int n = p.num_states();
    auto variants = cokernel_output_variants(p);

    SccReport rep = scc_analysis(p);
    long d = 1;
    for (int c = 0; c < rep.num_components(); ++c)
        if (rep.terminal[c])
            d = std::lcm(d, static_cast<long>(component_period(
                                p, rep.components[c], rep.component_of)));
    if (d > 4096) throw AutomatonError("block-length period too large");

    auto M = count_matrix(p);
    auto Q = M;
    for (long i = 1; i < d; ++i) Q = mat_mul(Q, M);
    mpz_class rowsum;
    mpz_ui_pow_ui(rowsum.get_mpz_t(), p.base, static_cast<unsigned long>(d));
    RatMat lim;
    if (!limit_matrix(Q, rowsum, lim))
        throw AutomatonError("limit distribution solve failed");

    BalanceCertificate cert;
    cert.period = static_cast<int>(d);
    cert.variants = static_cast<int>(variants.size());
    cert.exact = true;
    for (const auto& b : variants)
        if (!all_exact(b)) cert.exact = false;

    // start_r = e_init (M/k)^r, then its limiting distribution start_r * lim
    RatVec start(n, 0);
    start[p.initial] = 1;
    for (long r = 0; r < d; ++r) {
        RatVec dist(n, 0);
        for (int s = 0; s < n; ++s) {
            if (start[s] == 0) continue;
            for (int t2 = 0; t2 < n; ++t2)
                if (lim[s][t2] != 0) dist[t2] += start[s] * lim[s][t2];
        }
        for (std::size_t b = 0; b < variants.size(); ++b) {
            bool zero;
            Complex mu_approx{0.0, 0.0};
            if (cert.exact) {
                ExactC mu;
                for (int s = 0; s < n; ++s)
                    if (dist[s] != 0) mu = mu + mpq_class(dist[s]) * (*variants[b][s].exact);
                zero = mu.is_zero();
                mu_approx = mu.approx();
            } else {
                for (int s = 0; s < n; ++s)
                    mu_approx += dist[s].get_d() * variants[b][s].approx;
                zero = std::abs(mu_approx) < 1e-9;
            }
            if (!zero) {
                cert.balanced = false;
                cert.witness = "co-kernel variant " + std::to_string(b) +
                               ", block length residue " + std::to_string(r) +
                               " mod " + std::to_string(d);
                cert.witness_mean = mu_approx;
                return cert;
            }
        }
        // advance start by one step of M/k
        RatVec next(n, 0);
        mpq_class invk(1, p.base);
        for (int s = 0; s < n; ++s) {
            if (start[s] == 0) continue;
            for (int j = 0; j < p.base; ++j) next[p.delta[s][j]] += start[s] * invk;
        }
        start = std::move(next);
    }
    cert.balanced = true;
    return cert;
}

TotalBalanceCertificate is_totally_balanced(const Automaton& a, long q_bound) {
    if (q_bound < 1) throw AutomatonError("q bound must be >= 1");
    Automaton p = a.pruned();
    std::set<long> qs;
    for (long q = 1; q <= q_bound; ++q) qs.insert(q);

    // extend by k^m * (divisors of terminal cycle gcds)
    SccReport rep = scc_analysis(p);
    for (int c = 0; c < rep.num_components(); ++c) {
        if (!rep.terminal[c]) continue;
        const auto& cs = rep.components[c];
        std::vector<int> remap(p.num_states(), -1);
        for (std::size_t i = 0; i < cs.size(); ++i) remap[cs[i]] = static_cast<int>(i);
        Automaton sub;
        sub.base = p.base;
        for (int s : cs) {
            sub.state_names.push_back(p.state_names[s]);
            std::vector<int> row(p.base);
            for (int j = 0; j < p.base; ++j) row[j] = remap[p.delta[s][j]];
            sub.delta.push_back(std::move(row));
        }
        long g = cycle_gcd(sub, 0);
        long cap = std::max(q_bound, static_cast<long>(p.base) * p.base * g);
        for (long div = 1; div <= g; ++div) {
            if (g % div != 0) continue;
            long q = div;
            for (int m = 0; m <= 3 && q <= cap; ++m, q *= p.base) qs.insert(q);
        }
    }

    TotalBalanceCertificate cert;
    cert.q_bound = q_bound;
    cert.tested_q.assign(qs.begin(), qs.end());
    for (long q : cert.tested_q) {
        for (long r = 0; r < q; ++r) {
            Automaton restricted = restrict_ap(p, q, r);
            BalanceCertificate b = is_balanced(restricted);
            if (!b.balanced) {
                cert.totally_balanced = false;
                cert.witness_q = q;
                cert.witness_r = r;
                cert.witness_cert = b;
                return cert;
            }
        }
    }
    cert.totally_balanced = true;
    return cert;
}

DecayFit decay_exponent(const Automaton& a, const std::vector<OutputValue>& weight,
                        int L_lo, int L_hi) {
    if (L_lo < 1 || L_hi < L_lo) throw AutomatonError("bad L range");
    Automaton prod = weight.empty()
                         ? a.pruned()
                         : product(a, make_periodic(a.base, weight), Combine::Multiply);
    BalanceCertificate bc = is_balanced(prod);
    if (!bc.balanced)
        throw AutomatonError("no decay: sequence not balanced against weight");

    DecayFit fit;
    double logk = std::log(static_cast<double>(a.base));
    if (L_hi * logk > 62 * std::log(2.0)) throw AutomatonError("L range too large");
    for (int L = L_lo; L <= L_hi; ++L) {
        unsigned long long N = 1;
        for (int i = 0; i < L; ++i) N *= static_cast<unsigned long long>(a.base);
        OutputValue s = partial_sum(prod, N);
        bool zero = s.exact ? s.exact->is_zero() : std::abs(s.approx) == 0.0;
        if (zero) {
            fit.zero_levels.push_back(L);
        } else {
            fit.levels.push_back(L);
            fit.abs_means.push_back(std::abs(s.approx) / static_cast<double>(N));
        }
    }
    if (fit.levels.size() < 2) {
        fit.all_zero = fit.levels.empty();
        fit.c = std::numeric_limits<double>::infinity();
        return fit;
    }
    // least squares of log|mean| against log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = fit.levels.size();
    for (std::size_t i = 0; i < m; ++i) {
        double x = fit.levels[i] * logk;
        double y = std::log(fit.abs_means[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / m;
    fit.c = -slope;
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double x = fit.levels[i] * logk;
        double y = std::log(fit.abs_means[i]);
        double e = y - (slope * x + intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    if (m > 2) fit.band = 2.0 * std::sqrt(ss / (m - 2) / (sxx - sx * sx / m));
    return fit;
}

PerBalDecomposition invertible_decomposition(const Automaton& a) {
    Automaton p = a.pruned();
    auto group = invertibility(p);
    if (!group)
        throw AutomatonError(
            "no decomposition guaranteed: sequence is not invertible (the "
            "nu2-parity sequence shows such a sequence need not admit a "
            "periodic plus totally balanced decomposition; it does not admit "
            "a decomposition)");
    PerBalDecomposition dec;
    dec.period = p.base - 1;
    FrequencyTable freq = frequencies(p, dec.period);
    bool exact = p.has_exact_output();
    for (long r = 0; r < dec.period; ++r) {
        if (exact) {
            ExactC v;
            for (int s = 0; s < p.num_states(); ++s)
                if (freq.pi[s][r] != 0) v = v + freq.pi[s][r] * (*p.output[s].exact);
            dec.per.push_back(OutputValue(v));
        } else {
            Complex v{0.0, 0.0};
            for (int s = 0; s < p.num_states(); ++s)
                v += freq.pi_approx[s][r] * p.output[s].approx;
            dec.per.push_back(OutputValue(v));
        }
    }
    bool flag;
    dec.bal = product(p, make_periodic(p.base, dec.per), Combine::Subtract);
    flag = dec.bal.normalized;
    dec.bal = minimize(dec.bal);
    dec.bal.normalized = flag;
    return dec;
}

}  // namespace autoseq
