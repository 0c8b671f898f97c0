#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "autoseq/analysis.hpp"
#include "autoseq/constructions.hpp"
#include "autoseq/expsum.hpp"
#include "autoseq/numutil.hpp"
#include "autoseq/sequence.hpp"

using namespace autoseq;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

Complex naive_exp_sum(const Automaton& a, const PhasePolynomial& p,
                      std::uint64_t N) {
    Complex s(0.0, 0.0);
    for (std::uint64_t n = 0; n < N; ++n) {
        double ph = p.eval_mod1(n);
        s += a.eval(n) * Complex(std::cos(kTau * ph), std::sin(kTau * ph));
    }
    return s / static_cast<double>(N);
}

}  // namespace

TEST_CASE("phase parsing") {
    CHECK(parse_real("golden") == doctest::Approx(0.61803398874989).epsilon(1e-12));
    CHECK(parse_real("sqrt2") == doctest::Approx(0.41421356237309).epsilon(1e-12));
    CHECK(parse_real("3/8") == 0.375);
    CHECK(parse_real("0.25") == 0.25);

    PhasePolynomial lin = parse_phase("lin:1/3");
    CHECK(lin.degree() == 1);
    CHECK(lin.coeff[1] == doctest::Approx(1.0 / 3.0));

    PhasePolynomial poly = parse_phase("poly:0.5,0,2");
    CHECK(poly.degree() == 2);
    CHECK(poly.coeff[0] == 0.5);
    CHECK(poly.coeff[2] == 2.0);

    PhasePolynomial rat = parse_phase("rat:2/7");
    CHECK(rat.is_exact());
    CHECK(rat.degree() == 1);
}

TEST_CASE("direct evaluation") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("zero phase over a power of two vanishes") {
        for (int L = 1; L <= 16; ++L) {
            auto r = exp_sum_direct(tm, PhasePolynomial::from_coeffs({0.0}), 1ull << L);
            CHECK(std::abs(r.mean) < 1e-13);
        }
    }
    SUBCASE("alpha = 1/3 agrees with the transfer method") {
        auto d = exp_sum_direct(tm, PhasePolynomial::linear(1.0 / 3.0), 1ull << 16);
        auto t = exp_sum_transfer(tm, 1.0 / 3.0, 16);
        CHECK(std::abs(d.mean - t.mean) < 1e-10);
    }
    SUBCASE("half-integer linear phase cancels in pairs") {
        Automaton one = make_constant(2, OutputValue::from_int(1));
        auto r = exp_sum_direct(one, PhasePolynomial::from_coeffs({0.0, 0.5}), 1000);
        CHECK(std::abs(r.mean) < 1e-12);
    }
    SUBCASE("quadratic phases against the naive oracle") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            PhasePolynomial p =
                PhasePolynomial::from_coeffs({unif(rng), unif(rng), unif(rng)});
            std::uint64_t N = 500 + rng() % 3000;
            auto r = exp_sum_direct(tm, p, N);
            CHECK(std::abs(r.mean - naive_exp_sum(tm, p, N)) < 1e-9);
        }
    }
}

TEST_CASE("transfer evaluation") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("|E_{n<4} t(n) e(n a)| = |sin(pi a) sin(2 pi a)|") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            double a = unif(rng);
            auto r = exp_sum_transfer(tm, a, 2);
            double expect = std::abs(std::sin(M_PI * a) * std::sin(2 * M_PI * a));
            CHECK(std::abs(std::abs(r.mean) - expect) < 1e-12);
        }
    }
    SUBCASE("alpha = 0 reduces to block sums") {
        for (const auto& name : builtin_names()) {
            Automaton a = make_builtin(name).automaton;
            BlockSumTable t = block_sums(a, 6);
            double kL = 1;
            for (int L = 0; L <= 6; ++L) {
                auto r = exp_sum_transfer(a, 0.0, L);
                CHECK(std::abs(r.mean - t.sigma[0][L].approx / kL) < 1e-12);
                kL *= a.base;
            }
        }
    }
    SUBCASE("Rudin-Shapiro at 1/5 matches direct") {
        Automaton rs = make_builtin("rudin-shapiro").automaton;
        auto t = exp_sum_transfer(rs, 0.2, 12);
        auto d = exp_sum_direct(rs, PhasePolynomial::linear(0.2), 1ull << 12);
        CHECK(std::abs(t.mean - d.mean) < 1e-10);
    }
}

TEST_CASE("interval evaluation") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("powers of two equal the transfer value") {
        for (int L : {4, 9, 15}) {
            auto i = exp_sum_interval(tm, 0.3, 1ull << L);
            auto t = exp_sum_transfer(tm, 0.3, L);
            CHECK(std::abs(i.mean - t.mean) < 1e-13);
        }
    }
    SUBCASE("ragged N at the golden ratio matches direct") {
        std::uint64_t N = 3 * (1ull << 10) + 5;
        double a = parse_real("golden");
        auto i = exp_sum_interval(tm, a, N);
        auto d = exp_sum_direct(tm, PhasePolynomial::linear(a), N);
        CHECK(std::abs(i.mean - d.mean) < 1e-10);
    }
    SUBCASE("N = 1 returns a(0)") {
        auto i = exp_sum_interval(tm, 0.77, 1);
        CHECK(std::abs(i.mean - tm.eval(0)) < 1e-15);
    }
    SUBCASE("three-method agreement on random triples") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 60; ++trial) {
            Automaton a =
                make_builtin(builtin_names()[trial % builtin_names().size()]).automaton;
            double alpha = unif(rng);
            std::uint64_t N = 1 + rng() % (1ull << 15);
            auto i = exp_sum_interval(a, alpha, N);
            auto d = exp_sum_direct(a, PhasePolynomial::linear(alpha), N);
            CHECK(std::abs(i.mean - d.mean) < 1e-9);
        }
    }
}

TEST_CASE("Thue-Morse product oracle") {
    CHECK(tm_product_oracle(0.5, 2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(tm_product_oracle(0.0, 5) == 0.0);
    Automaton tm = make_builtin("thue-morse").automaton;
    auto t = exp_sum_transfer(tm, 1.0 / 3.0, 4);
    CHECK(std::abs(std::abs(t.mean) - tm_product_oracle(1.0 / 3.0, 4)) < 1e-12);
}

TEST_CASE("linear sup search") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("N = 4 attains 4/(3 sqrt 3)") {
        SupResult s = sup_linear(tm, 4, 1e-6);
        CHECK(std::abs(s.value - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-6);
    }
    SUBCASE("N = 2 attains 1 at alpha = 1/2") {
        SupResult s = sup_linear(tm, 2, 1e-6);
        CHECK(std::abs(s.value - 1.0) < 1e-6);
        CHECK(std::abs(s.alpha - 0.5) < 1e-5);
    }
    SUBCASE("constant 1 attains 1 at alpha = 0") {
        SupResult s = sup_linear(make_constant(2, OutputValue::from_int(1)), 64, 1e-5);
        CHECK(std::abs(s.value - 1.0) < 1e-9);
        CHECK(s.alpha < 1e-7);
    }
    SUBCASE("unreachable target error fails explicitly") {
        CHECK_THROWS(sup_linear(tm, 1ull << 22, 1e-9));
    }
    SUBCASE("value dominates the grid and stays within budget") {
        SupResult s = sup_linear(tm, 256, 1e-4);
        CHECK(s.err <= 1e-4);
        auto at = [&](double a) { return std::abs(exp_sum_interval(tm, a, 256).mean); };
        CHECK(s.value >= at(0.123) - 1e-4);
        CHECK(s.value >= at(0.789) - 1e-4);
        CHECK(std::abs(at(s.alpha) - s.value) < 1e-12);
    }
}

TEST_CASE("arc classification") {
    SUBCASE("alpha = 1/2") {
        ArcClassification c = classify_arc(0.5, 10000, 0.1);
        CHECK(c.rational);
        CHECK(c.p == 1);
        CHECK(c.q == 2);
    }
    SUBCASE("golden ratio is equidistributed") {
        ArcClassification c = classify_arc(parse_real("golden"), 10000, 0.1);
        CHECK_FALSE(c.rational);
        CHECK(c.discrepancy < 0.1);
    }
    SUBCASE("near-rational at short range") {
        ArcClassification c = classify_arc(0.5 + 1e-9, 100, 0.1);
        CHECK(c.rational);
        CHECK(c.p == 1);
        CHECK(c.q == 2);
    }
}

TEST_CASE("partition bound") {
    double golden = parse_real("golden");
    std::mt19937_64 rng(17);
    SUBCASE("random 3-part partitions hold with margin") {
        std::vector<int> labels(10000);
        for (auto& l : labels) l = static_cast<int>(rng() % 3);
        PartitionBoundResult r = partition_bound_check(golden, 10000, labels);
        CHECK(r.holds);
        CHECK(r.margin > 0.0);
        CHECK(r.parts == 3);
    }
    SUBCASE("trivial partition bounds the plain mean") {
        std::vector<int> labels(10000, 0);
        PartitionBoundResult r = partition_bound_check(golden, 10000, labels);
        CHECK(r.holds);
        CHECK(r.lhs <= 1.0 - 1.0 / 6.0);
    }
    SUBCASE("non-equidistributed alpha is a precondition error") {
        std::vector<int> labels(10000, 0);
        try {
            partition_bound_check(0.0, 10000, labels);
            CHECK(false);
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find("hypothesis not satisfied") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("van der Corput check") {
    SUBCASE("constant sequence") {
        std::vector<Complex> x(10100, Complex(1.0, 0.0));
        VdcResult r = vdc_check(x, 32, 10000);
        CHECK(r.holds);
        CHECK(r.lhs == doctest::Approx(1.0));
        CHECK(r.rhs >= 1.0);
    }
    SUBCASE("quadratic Weyl sequence has tiny lhs") {
        std::uint64_t N = 10000;
        int H = 32;
        std::vector<Complex> x(N + H);
        double s2 = std::sqrt(2.0);
        for (std::uint64_t n = 0; n < x.size(); ++n) {
            double ph = mulmod1_big(static_cast<unsigned __int128>(n) * n, s2);
            x[n] = Complex(std::cos(kTau * ph), std::sin(kTau * ph));
        }
        VdcResult r = vdc_check(x, H, N);
        CHECK(r.holds);
        CHECK(r.lhs < 1e-3);
    }
    SUBCASE("Thue-Morse values") {
        std::uint64_t N = 1ull << 14;
        auto x = sequence_values(make_builtin("thue-morse").automaton, N + 16);
        VdcResult r = vdc_check(x, 16, N);
        CHECK(r.holds);
    }
}

TEST_CASE("polynomial phase sampling") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("sqrt2 n^2 phase decays") {
        auto r = exp_sum_direct(
            tm, PhasePolynomial::from_coeffs({0.0, 0.0, std::sqrt(2.0)}), 1ull << 18);
        CHECK(std::abs(r.mean) < 0.05);
    }
    SUBCASE("Gauss sum at p(n) = n^2 / 4") {
        Automaton one = make_constant(2, OutputValue::from_int(1));
        auto r = exp_sum_direct(one, PhasePolynomial::from_coeffs({0.0, 0.0, 0.25}), 400);
        CHECK(std::abs(std::abs(r.mean) - std::sqrt(0.5)) < 1e-9);
    }
    SUBCASE("sampled family is deterministic and sorted") {
        PolySupSpec spec;
        spec.random_count = 10;
        spec.rational_count = 6;
        spec.near_rational_count = 4;
        spec.seed = 42;
        auto a = poly_sup_sample(tm, 2, 1 << 12, spec);
        auto b = poly_sup_sample(tm, 2, 1 << 12, spec);
        REQUIRE(a.size() == b.size());
        CHECK(a.size() == 20);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].mean == b[i].mean);
            if (i) CHECK(std::abs(a[i].mean) <= std::abs(a[i - 1].mean) + 1e-15);
        }
    }
    SUBCASE("rational phases match direct evaluation") {
        PolySupSpec spec;
        spec.random_count = 0;
        spec.rational_count = 8;
        spec.near_rational_count = 0;
        spec.seed = 9;
        for (const auto& r : poly_sup_sample(tm, 2, 1 << 10, spec)) {
            PhasePolynomial p = parse_phase(r.phase);
            CHECK(std::abs(r.mean - naive_exp_sum(tm, p, r.N)) < 1e-9);
        }
    }
}
