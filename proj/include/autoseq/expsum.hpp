#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autoseq/automaton.hpp"

namespace autoseq {

/// Phase polynomial p(x) = c_0 + c_1 x + ... + c_d x^d; the sum weight is
/// e(p(n)).  Rational coefficients are kept exactly when available.
struct PhasePolynomial {
    std::vector<double> coeff;
    std::optional<std::vector<mpq_class>> exact;

    int degree() const;
    bool is_constant() const { return degree() == 0; }
    bool is_exact() const { return exact.has_value(); }
    /// p(n) mod 1, evaluated term by term in extended precision.
    double eval_mod1(std::uint64_t n) const;
    /// p(n) as an integer; requires integer coefficients and p(n) >= 0.
    unsigned __int128 eval_integer(std::uint64_t n) const;
    bool integer_coefficients() const;
    std::string describe() const;

    static PhasePolynomial linear(double alpha);
    static PhasePolynomial rational_linear(const mpq_class& alpha);
    static PhasePolynomial from_coeffs(std::vector<double> c);
};

/// Parse `lin:<alpha>` | `poly:<c0>,<c1>,...` | `rat:<p>/<q>`; alpha may be
/// the literals `golden` or `sqrt2`.
PhasePolynomial parse_phase(const std::string& spec);
double parse_real(const std::string& text);

struct ExpSumReport {
    std::uint64_t N = 0;
    std::string phase;
    Complex mean{0.0, 0.0};
    std::string method;  // direct | transfer | interval
    double err = 0.0;
};

/// O(N) compensated evaluation of E_{n<N} a(n) e(p(n)), incremental finite
/// difference tables for the phase with periodic re-anchoring.
ExpSumReport exp_sum_direct(const Automaton& a, const PhasePolynomial& p,
                            std::uint64_t N);

/// E_{n<k^L} a(n) e(n alpha) by the transfer recursion over digit positions.
ExpSumReport exp_sum_transfer(const Automaton& a, double alpha, int L);

/// E_{n<N} a(n) e(n alpha) by the greedy base-k interval decomposition.
ExpSumReport exp_sum_interval(const Automaton& a, double alpha, std::uint64_t N);

struct SupResult {
    double alpha = 0.0;   // smallest maximizer found in [0,1)
    double value = 0.0;   // sup |E_{n<N} a(n) e(n alpha)|
    double err = 0.0;     // certified bound: value >= true sup - err
    std::uint64_t grid = 0;
};

/// Oversampled FFT over the frequency grid plus golden-section refinement of
/// the leading peaks; the certificate uses the Lipschitz bound 2 pi N.
SupResult sup_linear(const Automaton& a, std::uint64_t N, double target_error);

/// Closed form |E_{n<2^L} t(n) e(n alpha)| = prod_{l<L} |sin(pi 2^l alpha)|.
double tm_product_oracle(double alpha, int L);

struct ArcClassification {
    double alpha = 0.0;
    std::uint64_t N = 0;
    double delta = 0.0;
    bool rational = false;
    long p = 0, q = 1;      // approximant in lowest terms when rational
    double distance = 0.0;  // |alpha - p/q|
    double discrepancy = 0.0;
    std::vector<std::pair<long, long>> convergents;
};

/// Dichotomy for (n alpha mod 1)_{n<N}: close rational approximant versus
/// empirical delta-equidistribution.  Artifact constant C0 = 6.
ArcClassification classify_arc(double alpha, std::uint64_t N, double delta);

inline constexpr int kArcExponent = 6;   // C0
inline constexpr double kVdcConstant = 3.0;

struct PartitionBoundResult {
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool holds = false;
    int parts = 0;
};

/// sum_i (|S_i|/N) |E_{n in S_i} e(n alpha)| <= 1 - 1/(6 r^2), under the
/// equidistribution hypothesis (checked first; violation throws).
PartitionBoundResult partition_bound_check(double alpha, std::uint64_t N,
                                           const std::vector<int>& labels);

struct VdcResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// |E_{n<N} x(n)|^2 <= E_{h<H} |E_{n<N} x(n+h) conj(x(n))| + C_vdc H/N.
/// Requires x.size() >= N + H.
VdcResult vdc_check(const std::vector<Complex>& x, int H, std::uint64_t N);

struct PolySupSpec {
    int random_count = 100;
    int rational_count = 60;
    int near_rational_count = 40;
    int max_denominator = 24;
    std::uint64_t seed = 0;
};

/// |E_{n<N} a(n) e(p(n))| over a documented sample family of degree <= d
/// phases; exact rational phases are evaluated by arithmetic-progression
/// splitting.  The first report is the empirical maximum.
std::vector<ExpSumReport> poly_sup_sample(const Automaton& a, int d,
                                          std::uint64_t N, const PolySupSpec& spec);

/// Bulk table of a(n) for n < N (padded evaluation by digit position).
std::vector<Complex> sequence_values(const Automaton& a, std::uint64_t N);

}  // namespace autoseq
