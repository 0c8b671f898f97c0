#include "autoseq/checks.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "autoseq/analysis.hpp"
#include "autoseq/constructions.hpp"
#include "autoseq/ergodic.hpp"
#include "autoseq/expsum.hpp"
#include "autoseq/graph.hpp"
#include "autoseq/sequence.hpp"

namespace autoseq {

namespace {

struct Suite {
    CheckSuiteReport report;
    void add(const std::string& name, bool ok, const std::string& detail = "") {
        report.results.push_back({name, ok, detail});
    }
};

long long ctz_value(std::uint64_t n) {
    long long c = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++c;
    }
    return c;
}

}  // namespace

CheckSuiteReport run_invariant_suite(std::uint64_t seed) {
    Suite suite;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<SequenceHandle> builtins;
    for (const auto& name : builtin_names()) builtins.push_back(make_builtin(name));

    // three-method exponential-sum agreement
    {
        bool ok = true;
        std::ostringstream detail;
        for (int trial = 0; trial < 120 && ok; ++trial) {
            const auto& seq = builtins[trial % builtins.size()];
            double alpha = unif(rng);
            std::uint64_t N = 1 + rng() % (1ull << 16);
            auto direct =
                exp_sum_direct(seq.automaton, PhasePolynomial::linear(alpha), N);
            auto interval = exp_sum_interval(seq.automaton, alpha, N);
            if (std::abs(direct.mean - interval.mean) > 1e-9) {
                ok = false;
                detail << seq.label << " alpha=" << alpha << " N=" << N
                       << " direct/interval gap "
                       << std::abs(direct.mean - interval.mean);
            }
            int L = 4 + static_cast<int>(rng() % 10);
            std::uint64_t kL = 1;
            for (int l = 0; l < L; ++l) kL *= seq.automaton.base;
            auto transfer = exp_sum_transfer(seq.automaton, alpha, L);
            auto direct2 =
                exp_sum_direct(seq.automaton, PhasePolynomial::linear(alpha), kL);
            if (std::abs(transfer.mean - direct2.mean) > 1e-9) {
                ok = false;
                detail << seq.label << " alpha=" << alpha << " L=" << L
                       << " transfer/direct gap "
                       << std::abs(transfer.mean - direct2.mean);
            }
        }
        suite.add("three-method exponential-sum agreement", ok, detail.str());
    }

    // Thue-Morse closed-form oracle
    {
        bool ok = true;
        Automaton tm = make_builtin("thue-morse").automaton;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            double alpha = unif(rng);
            int L = 1 + static_cast<int>(rng() % 16);
            double lhs = std::abs(exp_sum_transfer(tm, alpha, L).mean);
            double rhs = tm_product_oracle(alpha, L);
            if (std::abs(lhs - rhs) > 1e-10) ok = false;
        }
        suite.add("Thue-Morse product formula", ok);
    }

    // kernel and co-kernel closures stay finite and closed
    {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& seq : builtins) {
            Automaton p = seq.automaton.pruned();
            auto kernel = kernel_family(p);
            if (kernel.size() > static_cast<std::size_t>(p.num_states())) {
                ok = false;
                detail << seq.label << " kernel size " << kernel.size();
            }
            std::set<std::string> sigs;
            for (const auto& member : kernel) sigs.insert(sequence_signature(member));
            for (const auto& member : kernel)
                for (const auto& sub : kernel_family(member.pruned()))
                    if (!sigs.count(sequence_signature(sub))) {
                        ok = false;
                        detail << seq.label << " kernel not closed";
                    }
            auto variants = cokernel_output_variants(p);
            if (variants.empty() || variants.size() > 64) {
                ok = false;
                detail << seq.label << " cokernel size " << variants.size();
            }
        }
        suite.add("kernel/co-kernel closure sizes", ok, detail.str());
    }

    // frequency tables: exact row sums, residue independence when strongly
    // aperiodic
    {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& seq : builtins) {
            Automaton p = seq.automaton.pruned();
            if (!is_strongly_connected(p)) continue;
            for (long q : {1L, 3L, 5L, 7L}) {
                if (std::gcd(q, static_cast<long>(p.base)) != 1) continue;
                FrequencyTable f = frequencies(p, q);
                for (long r = 0; r < q; ++r) {
                    mpq_class sum = 0;
                    for (int s = 0; s < p.num_states(); ++s) sum += f.pi[s][r];
                    if (sum != 1) {
                        ok = false;
                        detail << seq.label << " q=" << q << " r=" << r
                               << " row sum " << sum.get_str();
                    }
                }
                if (check_aperiodic(p).strongly_aperiodic) {
                    for (int s = 0; s < p.num_states(); ++s)
                        for (long r = 1; r < q; ++r)
                            if (std::abs(f.pi_approx[s][r] - f.pi_approx[s][0]) > 1e-10) {
                                ok = false;
                                detail << seq.label << " q=" << q
                                       << " residue-dependent frequency";
                            }
                }
            }
        }
        suite.add("frequency row sums and residue independence", ok, detail.str());
    }

    // normalization idempotence
    {
        bool ok = true;
        for (const auto& seq : builtins) {
            Automaton n1 = normalize_leading_zeros(seq.automaton);
            Automaton n2 = normalize_leading_zeros(n1);
            if (!n1.normalized || !n2.normalized || !same_sequence(n1, n2) ||
                !same_sequence(n1, seq.automaton))
                ok = false;
        }
        suite.add("normalization idempotence", ok);
    }

    // construction fidelity spot checks
    {
        bool ok = true;
        for (const auto& seq : builtins) {
            for (long q = 1; q <= 8 && ok; ++q)
                for (long r = 0; r < q && ok; ++r) {
                    Automaton restr = restrict_ap(seq.automaton, q, r);
                    for (std::uint64_t n = 0; n < 500; ++n)
                        if (std::abs(restr.eval(n) - seq.eval(q * n + r)) > 0) {
                            ok = false;
                            break;
                        }
                }
            for (int l : {2, 3}) {
                Automaton bc = base_change(seq.automaton, l);
                for (std::uint64_t n = 0; n < 2000; ++n)
                    if (std::abs(bc.eval(n) - seq.eval(n)) > 0) ok = false;
            }
        }
        suite.add("restriction and base-change fidelity", ok);
    }

    // exact partial sums against naive summation
    {
        bool ok = true;
        for (const auto& seq : builtins) {
            Complex naive(0.0, 0.0);
            std::uint64_t limit = 20000;
            std::set<std::uint64_t> checkpoints;
            for (int i = 0; i < 25; ++i) checkpoints.insert(1 + rng() % limit);
            auto values = sequence_values(seq.automaton, limit + 1);
            std::uint64_t n = 0;
            for (std::uint64_t c : checkpoints) {
                for (; n < c; ++n) naive += values[n];
                OutputValue s = partial_sum(seq.automaton, c);
                if (std::abs(s.approx - naive) > 1e-9) ok = false;
            }
        }
        suite.add("partial sums equal naive summation", ok);
    }

    // sup search sanity
    {
        Automaton tm = make_builtin("thue-morse").automaton;
        SupResult s4 = sup_linear(tm, 4, 1e-5);
        bool ok = std::abs(s4.value - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-5;
        SupResult s2 = sup_linear(tm, 2, 1e-5);
        ok = ok && std::abs(s2.value - 1.0) < 1e-5 && std::abs(s2.alpha - 0.5) < 1e-4;
        Automaton one = make_constant(2, OutputValue::from_int(1));
        SupResult s1 = sup_linear(one, 16, 1e-5);
        ok = ok && std::abs(s1.value - 1.0) < 1e-6 && s1.alpha < 1e-6;
        suite.add("sup search attains the known extrema", ok);
    }

    // van der Corput and partition bounds, randomized spot trials
    {
        bool ok = true;
        for (int trial = 0; trial < 60 && ok; ++trial) {
            std::uint64_t N = 4000;
            int H = 8 << (trial % 3);
            std::vector<Complex> x(N + H);
            for (auto& v : x) {
                double t = unif(rng);
                v = Complex(std::cos(6.2831853 * t), std::sin(6.2831853 * t));
            }
            VdcResult res = vdc_check(x, H, N);
            if (!res.holds) ok = false;
        }
        for (int trial = 0; trial < 20 && ok; ++trial) {
            std::uint64_t N = 50000;
            int parts = 2 + static_cast<int>(rng() % 3);
            std::vector<int> labels(N);
            for (auto& l : labels) l = static_cast<int>(rng() % parts);
            PartitionBoundResult res =
                partition_bound_check(0.61803398874989484820, N, labels);
            if (!res.holds || res.margin <= 0) ok = false;
        }
        suite.add("van der Corput and partition bounds", ok);
    }

    // t(n) t(n+1) multiplicativity
    {
        Automaton tm = make_builtin("thue-morse").automaton;
        Automaton prod = product(tm, shift_plus_one(tm), Combine::Multiply);
        bool ok = true;
        for (std::uint64_t n = 0; n < 100000; ++n) {
            double expect = (ctz_value(n + 1) + 1) % 2 == 0 ? 1.0 : -1.0;
            if (std::abs(prod.eval(n).real() - expect) > 0) {
                ok = false;
                break;
            }
        }
        suite.add("shifted Thue-Morse product identity", ok);
    }

    return suite.report;
}

}  // namespace autoseq
