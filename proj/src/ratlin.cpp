#include "autoseq/ratlin.hpp"

namespace autoseq {

bool solve_linear(RatMat a, RatVec b, RatVec& x) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        mpq_class inv = 1 / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        b[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            mpq_class f = a[row][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    x = std::move(b);
    return true;
}

bool stationary_distribution(const std::vector<std::vector<mpz_class>>& m,
                             const mpz_class& rowsum, RatVec& pi) {
    const std::size_t n = m.size();
    // (M^T - rowsum I) pi = 0 with the last equation replaced by sum(pi) = 1
    RatMat a(n, RatVec(n, 0));
    RatVec b(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = mpq_class(m[j][i]);
        a[i][i] -= mpq_class(rowsum);
    }
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1;
    b[n - 1] = 1;
    return solve_linear(std::move(a), std::move(b), pi);
}

namespace {

// Iterative Tarjan on an adjacency-list digraph.
std::vector<int> scc_of(const std::vector<std::vector<int>>& succ, int& ncomp) {
    int n = static_cast<int>(succ.size());
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stk;
    std::vector<bool> on(n, false);
    int counter = 0;
    ncomp = 0;
    struct Frame { int v; std::size_t ei; };
    for (int root = 0; root < n; ++root) {
        if (idx[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        idx[root] = low[root] = counter++;
        stk.push_back(root);
        on[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.ei < succ[f.v].size()) {
                int w = succ[f.v][f.ei++];
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    on[w] = true;
                    frames.push_back({w, 0});
                } else if (on[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (low[v] == idx[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = false;
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
    return comp;
}

}  // namespace

bool limit_matrix(const std::vector<std::vector<mpz_class>>& m,
                  const mpz_class& rowsum, RatMat& lim) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<int>> succ(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[i][j] != 0) succ[i].push_back(j);
    int ncomp = 0;
    std::vector<int> comp = scc_of(succ, ncomp);
    std::vector<bool> terminal(ncomp, true);
    for (int i = 0; i < n; ++i)
        for (int j : succ[i])
            if (comp[i] != comp[j]) terminal[comp[i]] = false;

    std::vector<std::vector<int>> members(ncomp);
    for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);

    std::vector<RatVec> class_pi(ncomp);
    for (int c = 0; c < ncomp; ++c) {
        if (!terminal[c]) continue;
        const auto& cs = members[c];
        std::vector<std::vector<mpz_class>> sub(cs.size(),
                                                std::vector<mpz_class>(cs.size()));
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) sub[i][j] = m[cs[i]][cs[j]];
        if (!stationary_distribution(sub, rowsum, class_pi[c])) return false;
    }

    std::vector<int> tindex(n, -1);
    std::vector<int> transient;
    for (int i = 0; i < n; ++i)
        if (!terminal[comp[i]]) {
            tindex[i] = static_cast<int>(transient.size());
            transient.push_back(i);
        }

    lim.assign(n, RatVec(n, 0));
    // recurrent rows
    for (int c = 0; c < ncomp; ++c) {
        if (!terminal[c]) continue;
        const auto& cs = members[c];
        for (int i : cs)
            for (std::size_t j = 0; j < cs.size(); ++j) lim[i][cs[j]] = class_pi[c][j];
    }
    // transient rows: absorption probabilities into each terminal class
    if (!transient.empty()) {
        for (int c = 0; c < ncomp; ++c) {
            if (!terminal[c]) continue;
            RatMat a(transient.size(), RatVec(transient.size(), 0));
            RatVec b(transient.size(), 0);
            for (std::size_t i = 0; i < transient.size(); ++i) {
                a[i][i] = 1;
                for (int j : succ[transient[i]]) {
                    mpq_class pr(m[transient[i]][j], rowsum);
                    pr.canonicalize();
                    if (tindex[j] >= 0)
                        a[i][tindex[j]] -= pr;
                    else if (comp[j] == c)
                        b[i] += pr;
                }
            }
            RatVec h;
            if (!solve_linear(std::move(a), std::move(b), h)) return false;
            const auto& cs = members[c];
            for (std::size_t i = 0; i < transient.size(); ++i)
                for (std::size_t j = 0; j < cs.size(); ++j)
                    lim[transient[i]][cs[j]] += h[i] * class_pi[c][j];
        }
    }
    return true;
}

}  // namespace autoseq
