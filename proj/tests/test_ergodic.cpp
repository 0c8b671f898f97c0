#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "autoseq/analysis.hpp"
#include "autoseq/ergodic.hpp"
#include "autoseq/expsum.hpp"
#include "autoseq/sequence.hpp"

using namespace autoseq;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double circle_dist(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

}  // namespace

TEST_CASE("system parsing and description") {
    DynSystem rot = DynSystem::parse("rotation:alpha=golden");
    CHECK(rot.kind == DynSystem::Kind::Rotation);
    CHECK(rot.totally_ergodic());
    CHECK(rot.dim() == 1);

    DynSystem rat = DynSystem::parse("rational:1/2");
    CHECK(rat.kind == DynSystem::Kind::RationalRotation);
    CHECK_FALSE(rat.totally_ergodic());

    DynSystem skew = DynSystem::parse("skew:alpha=sqrt2");
    CHECK(skew.kind == DynSystem::Kind::Skew);
    CHECK(skew.dim() == 2);
    CHECK(skew.totally_ergodic());

    DynSystem id = DynSystem::parse("identity");
    CHECK_FALSE(id.totally_ergodic());
    CHECK_THROWS(DynSystem::parse("torus:banana"));
}

TEST_CASE("closed-form orbits compose") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<DynSystem> systems = {
        DynSystem::rotation(parse_real("golden")),
        DynSystem::rational_rotation(mpq_class(3, 7)),
        DynSystem::skew(parse_real("sqrt2")), DynSystem::identity()};
    for (const auto& sys : systems)
        for (int trial = 0; trial < 250; ++trial) {
            TorusPoint x{unif(rng), unif(rng)};
            // the skew's second coordinate amplifies the rounding of the
            // intermediate point by a factor of m, so keep its exponents small
            std::uint64_t span = sys.dim() == 2 ? (1ull << 10) : (1ull << 18);
            std::uint64_t m = rng() % span;
            std::uint64_t n = rng() % span;
            TorusPoint combined = sys.iterate(x, m + n);
            TorusPoint stepped = sys.iterate(sys.iterate(x, n), m);
            CHECK(circle_dist(combined[0], stepped[0]) < 1e-12);
            if (sys.dim() == 2)
                CHECK(circle_dist(combined[1], stepped[1]) < 1e-12);
        }
}

TEST_CASE("skew orbit closed form") {
    double alpha = 0.3;
    DynSystem sys = DynSystem::skew(alpha);
    TorusPoint x{0.1, 0.2};
    TorusPoint step = x;
    for (int m = 0; m <= 50; ++m) {
        TorusPoint direct = sys.iterate(x, static_cast<unsigned __int128>(m));
        CHECK(circle_dist(direct[0], step[0]) < 1e-12);
        CHECK(circle_dist(direct[1], step[1]) < 1e-12);
        // one explicit application of T(x, y) = (x + alpha, y + x)
        double nx = step[0] + alpha;
        double ny = step[1] + step[0];
        step = {nx - std::floor(nx), ny - std::floor(ny)};
    }
}

TEST_CASE("observables") {
    Observable c1 = Observable::parse("char:1");
    CHECK(c1.mean_zero());
    CHECK(std::abs(c1.eval({0.25, 0.0}) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(c1.integral() == Complex(0.0, 0.0));

    Observable mix = Observable::parse("trig:0=0.5,1=0.25,2=0.25");
    CHECK_FALSE(mix.mean_zero());
    CHECK(mix.integral() == Complex(0.5, 0.0));
    CHECK(mix.sup_norm_bound() == doctest::Approx(1.0));

    Observable two_dim = Observable::parse("char:0:1");
    CHECK(std::abs(two_dim.eval({0.9, 0.5}) - Complex(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("weighted averages") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("identity system with constant observable is the Cesaro mean") {
        DynSystem sys = DynSystem::identity();
        Observable f = Observable::character(0);
        std::vector<std::uint64_t> checkpoints = {1000, 4096, 20000};
        AverageTrace trace = weighted_average(
            sys, f, tm, parse_phase("poly:0,1"), {{0.3, 0.0}}, checkpoints);
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            Complex expect =
                partial_sum(tm, checkpoints[i]).approx /
                static_cast<double>(checkpoints[i]);
            CHECK(std::abs(trace.values[0][i] - expect) < 1e-12);
        }
    }
    SUBCASE("spectral identity on an irrational rotation") {
        double alpha = parse_real("golden");
        DynSystem sys = DynSystem::rotation(alpha);
        Observable f = Observable::character(1);
        TorusPoint x0{0.37, 0.0};
        std::vector<std::uint64_t> checkpoints = {100000};
        AverageTrace trace = weighted_average(sys, f, tm, parse_phase("poly:0,1"),
                                              {x0}, checkpoints);
        Complex oracle = spectral_oracle(sys, 1, tm, parse_phase("poly:0,1"),
                                         100000, x0);
        CHECK(std::abs(trace.values[0][0] - oracle) < 1e-8);
        Complex front(std::cos(kTau * x0[0]), std::sin(kTau * x0[0]));
        Complex direct = front * exp_sum_interval(tm, alpha, 100000).mean;
        CHECK(std::abs(trace.values[0][0] - direct) < 1e-8);
    }
    SUBCASE("rational rotation degeneracy: no decay") {
        // a(n) = (-1)^n against T = x + 1/2 and f = e(2 pi i x):
        // a(n) f(T^n x) = e(2 pi i x) for every n
        DynSystem sys = DynSystem::rational_rotation(mpq_class(1, 2));
        Observable f = Observable::character(1);
        Automaton par = make_builtin("parity").automaton;
        TorusPoint x0{0.2, 0.0};
        AverageTrace trace = weighted_average(sys, f, par, parse_phase("poly:0,1"),
                                              {x0}, {500, 5000});
        Complex expect(std::cos(kTau * 0.2), std::sin(kTau * 0.2));
        CHECK(std::abs(trace.values[0][0] - expect) < 1e-12);
        CHECK(std::abs(trace.values[0][1] - expect) < 1e-12);
    }
    SUBCASE("negative-valued exponent polynomials are rejected") {
        DynSystem sys = DynSystem::rotation(0.3);
        Observable f = Observable::character(1);
        CHECK_THROWS(weighted_average(sys, f, tm, parse_phase("poly:0,-1"),
                                      {{0.0, 0.0}}, {100}));
    }
}

TEST_CASE("spectral oracle cases") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("m = 0 reduces to the partial sum") {
        DynSystem sys = DynSystem::rotation(0.123);
        Complex v = spectral_oracle(sys, 0, tm, parse_phase("poly:0,1"), 4096,
                                    {0.7, 0.0});
        CHECK(std::abs(v - partial_sum(tm, 4096).approx / 4096.0) < 1e-13);
    }
    SUBCASE("full-period cancellation at alpha = 1/4") {
        Automaton one = make_constant(2, OutputValue::from_int(1));
        DynSystem sys = DynSystem::rotation(0.25);
        Complex v = spectral_oracle(sys, 1, one, parse_phase("poly:0,1"), 4000,
                                    {0.0, 0.0});
        CHECK(std::abs(v) < 1e-10);
    }
}

TEST_CASE("convergence report") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("rotation with linear exponent decays") {
        DynSystem sys = DynSystem::rotation(parse_real("golden"));
        Observable f = Observable::character(1);
        ConvergenceReport rep = convergence_report(
            sys, f, tm, parse_phase("poly:0,1"), 8, 0,
            {1u << 10, 1u << 13, 1u << 16});
        CHECK(rep.sup_abs.size() == 3);
        CHECK(rep.sup_abs.back() < 0.05);
        for (std::size_t i = 0; i < rep.l2.size(); ++i)
            CHECK(rep.l2[i] <= rep.sup_abs[i] + 1e-12);
    }
    SUBCASE("degenerate rational system does not decay and is flagged") {
        DynSystem sys = DynSystem::rational_rotation(mpq_class(1, 2));
        Observable f = Observable::character(1);
        Automaton one = make_constant(2, OutputValue::from_int(1));
        ConvergenceReport rep = convergence_report(
            sys, f, one, parse_phase("poly:0,2"), 6, 0, {512, 2048, 8192});
        CHECK(rep.sup_abs.back() > 0.9);
        CHECK_FALSE(rep.consistent_with_zero);
    }
}

TEST_CASE("counterexample demonstration") {
    CounterexampleReport rep = counterexample_demo(1ull << 20);
    REQUIRE(!rep.checkpoints.empty());
    SUBCASE("exact even-power means") {
        for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) {
            std::uint64_t N = rep.checkpoints[i];
            int L = 0;
            while ((1ull << L) < N) ++L;
            if (L % 2 != 0) continue;
            int l = L / 2;
            mpq_class four_l = 1;
            for (int j = 0; j < l; ++j) four_l *= 4;
            CHECK(rep.means[i] == mpq_class(2) * (four_l - 1) / (3 * four_l));
        }
    }
    SUBCASE("halving and oscillation") {
        CHECK(rep.halving_exact);
        CHECK(rep.limsup_estimate > rep.liminf_estimate + 0.3);
        CHECK(rep.limsup_estimate == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
        CHECK(rep.liminf_estimate == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    }
    SUBCASE("coboundary averages obey the explicit bound") {
        CHECK(rep.coboundary_ok);
        REQUIRE(rep.coboundary_N.size() == rep.coboundary_abs.size());
        for (std::size_t i = 0; i < rep.coboundary_N.size(); ++i) {
            double N = static_cast<double>(rep.coboundary_N[i]);
            CHECK(rep.coboundary_bound[i] ==
                  doctest::Approx((2.0 * std::log2(N) + 2.0) / N));
            CHECK(rep.coboundary_abs[i] <= rep.coboundary_bound[i] + 1e-12);
        }
    }
}

TEST_CASE("sample points are deterministic and spread") {
    auto a = sample_points(16, 2, 5);
    auto b = sample_points(16, 2, 5);
    auto c = sample_points(16, 2, 6);
    REQUIRE(a.size() == 16);
    CHECK(a == b);
    bool differs = false;
    for (std::size_t i = 8; i < 16; ++i)
        if (a[i] != c[i]) differs = true;
    CHECK(differs);
    for (const auto& p : a) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] < 1.0);
    }
}
