#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "autoseq/automaton.hpp"

namespace autoseq {

/// Exact block sums sigma_b(L) = sum of b(u) over all words u of length L,
/// one sigma vector per co-kernel output variant (variant 0 is the original
/// output).
struct BlockSumTable {
    int base = 2;
    int L_max = 0;
    std::vector<std::vector<long>> M;                 // transition counts M[s][t]
    std::vector<std::vector<mpz_class>> counts;       // counts[L][state], from initial
    std::vector<std::vector<OutputValue>> variants;   // co-kernel output variants
    std::vector<std::vector<OutputValue>> sigma;      // sigma[variant][L]
};

BlockSumTable block_sums(const Automaton& a, int L_max);

/// Exact sum of a(n) over n < N via the greedy base-k interval decomposition;
/// O(log^2 N) automaton work.
OutputValue partial_sum(const Automaton& a, unsigned long long N);

struct BalanceCertificate {
    bool balanced = false;
    bool exact = false;       // decided in rational arithmetic
    int period = 1;           // residue period of block lengths used
    int variants = 0;         // co-kernel variants inspected
    std::string witness;      // failing (variant, residue) when not balanced
    Complex witness_mean{0.0, 0.0};
};

/// Decides whether the Cesaro means of a tend to 0: exact limit block means
/// of every co-kernel variant along every block-length residue class.
BalanceCertificate is_balanced(const Automaton& a);

struct TotalBalanceCertificate {
    bool totally_balanced = false;
    long q_bound = 0;
    std::vector<long> tested_q;
    long witness_q = 0;
    long witness_r = 0;
    BalanceCertificate witness_cert;
};

/// Bounded decision: is_balanced on every restriction a(qn+r) for q in the
/// tested family (all q <= q_bound plus k^m * divisors of terminal cycle
/// gcds), r < q.
TotalBalanceCertificate is_totally_balanced(const Automaton& a, long q_bound);

struct DecayFit {
    std::vector<int> levels;        // L with nonzero mean
    std::vector<double> abs_means;  // |mean| at k^L
    std::vector<int> zero_levels;   // L where the mean is exactly 0
    double c = 0.0;                 // fitted decay exponent; +inf when all zero
    double residual = 0.0;          // rms residual of the log-log fit
    double band = 0.0;              // ~2 sigma slope uncertainty
    bool all_zero = false;
};

/// Fit |E_{n<k^L} a(n) w(n)| ~ N^-c over L in [L_lo, L_hi], exact means via
/// partial_sum on the product with the periodic weight (empty weight = 1).
DecayFit decay_exponent(const Automaton& a, const std::vector<OutputValue>& weight,
                        int L_lo, int L_hi);

struct PerBalDecomposition {
    long period = 1;                 // k - 1
    std::vector<OutputValue> per;    // per[r], r < period
    Automaton bal;                   // a(n) - per(n mod period)
};

/// Periodic + totally balanced decomposition for invertible sequences;
/// per(r) is the exact limit mean of a along n = r mod (k-1).
PerBalDecomposition invertible_decomposition(const Automaton& a);

}  // namespace autoseq
