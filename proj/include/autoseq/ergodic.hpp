#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "autoseq/automaton.hpp"
#include "autoseq/expsum.hpp"

namespace autoseq {

/// Torus point; the second coordinate is used only by 2-dimensional systems.
using TorusPoint = std::array<double, 2>;

/// Measure-preserving systems with closed-form n-th iterates (no trajectory
/// iteration, hence no rounding drift).
struct DynSystem {
    enum class Kind { Rotation, RationalRotation, Skew, Identity };
    Kind kind = Kind::Identity;
    double alpha = 0.0;
    mpq_class alpha_exact{0};  // used by rational rotations

    int dim() const { return kind == Kind::Skew ? 2 : 1; }
    bool totally_ergodic() const {
        return kind == Kind::Rotation || kind == Kind::Skew;
    }
    /// T^m x in closed form; m may exceed 64 bits (polynomial exponents).
    TorusPoint iterate(const TorusPoint& x, unsigned __int128 m) const;
    std::string describe() const;

    /// `rotation:alpha=<real|sqrt2|golden>` | `rational:<p>/<q>` |
    /// `skew:alpha=<...>` | `identity`.
    static DynSystem parse(const std::string& spec);
    static DynSystem rotation(double alpha);
    static DynSystem rational_rotation(const mpq_class& pq);
    static DynSystem skew(double alpha);
    static DynSystem identity();
};

/// Trigonometric polynomial on the torus.
struct Observable {
    struct Term {
        std::array<long, 2> freq{0, 0};
        Complex coeff{0.0, 0.0};
    };
    std::vector<Term> terms;

    bool mean_zero() const;
    double sup_norm_bound() const;  // sum of |coefficients|
    Complex integral() const;       // coefficient at frequency 0
    Complex eval(const TorusPoint& x) const;
    std::string describe() const;

    /// `char:<m>` or `trig:<m1>=<re>[+<im>i],...`; multi-dimensional
    /// frequencies as `m1:m2`.
    static Observable parse(const std::string& spec);
    static Observable character(long m, long m2 = 0);
};

struct AverageTrace {
    std::vector<std::uint64_t> checkpoints;
    std::vector<TorusPoint> starts;
    std::vector<std::vector<Complex>> values;  // values[start][checkpoint]

    double max_abs(std::size_t checkpoint) const;
    double l2_estimate(std::size_t checkpoint) const;
};

/// E_{n<N} a(n) f(T^p(n) x) at each checkpoint for each starting point.
/// p must have integer coefficients and p(n) >= 0 on the evaluated range.
AverageTrace weighted_average(const DynSystem& sys, const Observable& f,
                              const Automaton& a, const PhasePolynomial& p,
                              const std::vector<TorusPoint>& starts,
                              const std::vector<std::uint64_t>& checkpoints);

/// Spectral-theorem reduction for rotations and single characters:
/// e(m x0) * E_{n<N} a(n) e(m p(n) alpha), evaluated through the exponential
/// sum machinery (interval method for linear p).
Complex spectral_oracle(const DynSystem& sys, long m, const Automaton& a,
                        const PhasePolynomial& p, std::uint64_t N,
                        const TorusPoint& x0);

struct ConvergenceReport {
    AverageTrace trace;
    std::vector<double> sup_abs;  // per checkpoint
    std::vector<double> l2;       // per checkpoint
    bool consistent_with_zero = false;  // monotone tail over last 3 checkpoints
};

ConvergenceReport convergence_report(const DynSystem& sys, const Observable& f,
                                     const Automaton& a, const PhasePolynomial& p,
                                     int x_samples, std::uint64_t seed,
                                     const std::vector<std::uint64_t>& schedule);

struct CounterexampleReport {
    std::vector<std::uint64_t> checkpoints;       // powers of 2
    std::vector<mpq_class> means;                 // exact Cesaro means
    bool halving_exact = false;                   // mean(2^(2l+1)) = mean(2^2l)/2
    double limsup_estimate = 0.0;
    double liminf_estimate = 0.0;
    std::vector<std::uint64_t> coboundary_N;
    std::vector<double> coboundary_abs;
    std::vector<double> coboundary_bound;         // (2 log2 N + 2) / N
    bool coboundary_ok = false;
};

/// Divergence of the log-length weighted Cesaro means, plus the convergent
/// coboundary case on an irrational rotation.
CounterexampleReport counterexample_demo(std::uint64_t N_max);

/// Kronecker points followed by seeded uniform points on the torus.
std::vector<TorusPoint> sample_points(int count, int dim, std::uint64_t seed);

}  // namespace autoseq
