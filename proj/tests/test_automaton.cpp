#include <doctest.h>

#include <bit>
#include <cstdint>

#include "autoseq/automaton.hpp"
#include "autoseq/constructions.hpp"
#include "autoseq/io.hpp"
#include "autoseq/sequence.hpp"

using namespace autoseq;

namespace {

int count_11(std::uint64_t n) {
    int c = 0;
    while (n >= 3) {
        if ((n & 3) == 3) ++c;
        n >>= 1;
    }
    return c;
}

int nu2(std::uint64_t n) {
    int c = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++c;
    }
    return c;
}

int floor_log2(std::uint64_t n) { return 63 - std::countl_zero(n); }

long digit_sum(std::uint64_t n, int base) {
    long s = 0;
    for (; n; n /= base) s += static_cast<long>(n % base);
    return s;
}

}  // namespace

TEST_CASE("digit expansions") {
    CHECK(digits_lsd(0, 2).empty());
    CHECK(digits_lsd(6, 2) == std::vector<int>{0, 1, 1});
    CHECK(digits_lsd(10, 3) == std::vector<int>{1, 0, 1});
    for (std::uint64_t n = 0; n < 2000; ++n)
        for (int base : {2, 3, 5}) {
            auto d = digits_lsd(n, base);
            CHECK(word_value(d, base) == n);
            if (!d.empty()) CHECK(d.back() != 0);
        }
}

TEST_CASE("Thue-Morse evaluation") {
    auto tm = make_builtin("thue-morse");
    CHECK(tm.eval(0).real() == 1.0);
    CHECK(tm.eval(3).real() == 1.0);
    for (std::uint64_t n = 0; n < 4096; ++n) {
        double expect = std::popcount(n) % 2 == 0 ? 1.0 : -1.0;
        CHECK(tm.eval(n).real() == expect);
        CHECK(tm.eval(n).imag() == 0.0);
    }
}

TEST_CASE("Rudin-Shapiro evaluation") {
    auto rs = make_builtin("rudin-shapiro");
    CHECK(rs.eval(3).real() == -1.0);
    for (std::uint64_t n = 0; n < 4096; ++n) {
        double expect = count_11(n) % 2 == 0 ? 1.0 : -1.0;
        CHECK(rs.eval(n).real() == expect);
    }
}

TEST_CASE("nu2-parity evaluation") {
    auto seq = make_builtin("nu2-parity");
    CHECK(seq.eval(0).real() == 1.0);
    for (std::uint64_t n = 1; n < 4096; ++n) {
        double expect = nu2(n) % 2 == 0 ? 1.0 : -1.0;
        CHECK(seq.eval(n).real() == expect);
    }
}

TEST_CASE("log-length evaluation") {
    auto seq = make_builtin("log-length");
    CHECK(seq.eval(0).real() == 0.0);
    CHECK(seq.automaton.normalized);
    for (std::uint64_t n = 1; n < 1 << 14; ++n) {
        double expect = floor_log2(n) % 2 == 1 ? 1.0 : 0.0;
        CHECK(seq.eval(n).real() == expect);
    }
}

TEST_CASE("paperfold evaluation") {
    auto seq = make_builtin("paperfold");
    CHECK(seq.eval(0).real() == 1.0);
    for (std::uint64_t n = 1; n < 4096; ++n) {
        std::uint64_t m = n >> nu2(n);
        double expect = (m % 4 == 1) ? 1.0 : -1.0;
        CHECK(seq.eval(n).real() == expect);
    }
}

TEST_CASE("gtm3 evaluation is exact") {
    auto seq = make_builtin("gtm3");
    for (std::uint64_t n = 0; n < 2000; ++n) {
        long r = digit_sum(n, 3) % 3;
        ExactC expect = r == 0 ? ExactC{1, 0} : ExactC{mpq_class(-1, 2), 0};
        CHECK(seq.eval_exact(n) == expect);
    }
}

TEST_CASE("parity evaluation") {
    auto seq = make_builtin("parity");
    for (std::uint64_t n = 0; n < 1000; ++n)
        CHECK(seq.eval(n).real() == (n % 2 == 0 ? 1.0 : -1.0));
}

TEST_CASE("eval on incomplete automaton") {
    Automaton a = make_builtin("thue-morse").automaton;
    a.initial = -1;
    CHECK_THROWS_WITH_AS(a.eval(5), "incomplete automaton", AutomatonError);
}

TEST_CASE("minimize") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("duplicated state collapses") {
        Automaton dup = tm;
        dup.state_names.push_back("even2");
        dup.delta.push_back(dup.delta[0]);
        dup.output.push_back(dup.output[0]);
        dup.delta[1][1] = 2;  // route some traffic through the copy
        Automaton m = minimize(dup);
        CHECK(m.num_states() == 2);
        CHECK(same_sequence(m, tm));
    }
    SUBCASE("already minimal") {
        Automaton m = minimize(tm);
        CHECK(m.num_states() == 2);
        CHECK(same_sequence(m, tm));
    }
    SUBCASE("squared Thue-Morse is constant") {
        Automaton sq = minimize(product(tm, tm, Combine::Multiply));
        CHECK(sq.num_states() == 1);
        for (std::uint64_t n = 0; n < 100; ++n) CHECK(sq.eval(n).real() == 1.0);
    }
}

TEST_CASE("sequence signatures") {
    Automaton tm = make_builtin("thue-morse").automaton;
    Automaton rs = make_builtin("rudin-shapiro").automaton;
    CHECK(sequence_signature(tm) == sequence_signature(minimize(tm)));
    CHECK(sequence_signature(tm) != sequence_signature(rs));
    CHECK(same_sequence(tm, tm));
    CHECK_FALSE(same_sequence(tm, rs));
}

TEST_CASE("text format round trip") {
    for (const auto& name : builtin_names()) {
        Automaton a = make_builtin(name).automaton;
        Automaton back = parse_automaton_string(emit_automaton(a));
        CHECK(back.base == a.base);
        CHECK(back.num_states() == a.num_states());
        CHECK(same_sequence(back, a));
        CHECK(back.normalized == a.normalized);
    }
}

TEST_CASE("parser rejects missing header") {
    CHECK_THROWS_AS(parse_automaton_string("base: 2\nstates: a\ndelta: a 0 -> a\ndelta: a 1 -> a\n"),
                    ParseError);
}

TEST_CASE("parser errors carry line numbers") {
    std::string text =
        "reading: lsd-first\n"
        "base: 2\n"
        "states: a b\n"
        "delta: a 0 b\n";  // missing arrow on line 4
    try {
        parse_automaton_string(text);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("parser rejects duplicate transitions") {
    std::string text =
        "reading: lsd-first\n"
        "base: 2\n"
        "states: a\n"
        "delta: a 0 -> a\n"
        "delta: a 1 -> a\n"
        "delta: a 0 -> a\n";
    try {
        parse_automaton_string(text);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 6);
    }
}

TEST_CASE("parser rejects non-total delta") {
    std::string text =
        "reading: lsd-first\n"
        "base: 2\n"
        "states: a\n"
        "delta: a 0 -> a\n";
    CHECK_THROWS_AS(parse_automaton_string(text), ParseError);
}

TEST_CASE("partial automaton parses, structural use only") {
    std::string text =
        "reading: lsd-first\n"
        "base: 2\n"
        "states: a b\n"
        "delta: a 0 -> a\n"
        "delta: a 1 -> b\n"
        "delta: b 0 -> b\n"
        "delta: b 1 -> a\n";
    Automaton a = parse_automaton_string(text);
    CHECK_FALSE(a.has_initial());
    CHECK_FALSE(a.has_output());
    CHECK_THROWS_AS(a.eval(5), AutomatonError);
}

TEST_CASE("rational and complex output values") {
    std::string text =
        "reading: lsd-first\n"
        "base: 2\n"
        "states: a b\n"
        "initial: a\n"
        "output: a=-1/2 b=0.5+0.25i\n"
        "delta: a 0 -> a\n"
        "delta: a 1 -> b\n"
        "delta: b 0 -> b\n"
        "delta: b 1 -> a\n";
    Automaton a = parse_automaton_string(text);
    CHECK(a.output[0].is_exact());
    CHECK(a.output[0].exact->re == mpq_class(-1, 2));
    CHECK_FALSE(a.output[1].is_exact());
    CHECK(a.output[1].approx == Complex(0.5, 0.25));
}
