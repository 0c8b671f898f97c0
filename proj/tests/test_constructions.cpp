#include <doctest.h>

#include <cstdint>

#include "autoseq/automaton.hpp"
#include "autoseq/constructions.hpp"
#include "autoseq/sequence.hpp"

using namespace autoseq;

namespace {

int nu2(std::uint64_t n) {
    int c = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("normalization of the raw length-parity automaton") {
    Automaton raw = make_raw_length_parity();
    CHECK_FALSE(raw.normalized);
    Automaton norm = normalize_leading_zeros(raw);
    CHECK(norm.normalized);
    // agreement on canonical (leading-zero-free) expansions
    for (std::uint64_t n = 0; n < 10000; ++n)
        CHECK(norm.eval(n) == raw.eval(n));
    SUBCASE("idempotent") {
        Automaton again = normalize_leading_zeros(norm);
        CHECK(same_sequence(again, norm));
    }
    SUBCASE("already-normalized input keeps its sequence") {
        Automaton tm = make_builtin("thue-morse").automaton;
        CHECK(same_sequence(normalize_leading_zeros(tm), tm));
    }
    SUBCASE("single state automaton") {
        Automaton c = make_constant(2, OutputValue::from_int(1));
        Automaton n = normalize_leading_zeros(c);
        CHECK(n.num_states() == 1);
        CHECK(same_sequence(n, c));
    }
}

TEST_CASE("products") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("t(n)^2 = 1") {
        Automaton sq = product(tm, tm, Combine::Multiply);
        for (std::uint64_t n = 0; n < 2000; ++n) CHECK(sq.eval(n).real() == 1.0);
    }
    SUBCASE("t(n) t(n+1) = (-1)^(nu2(n+1)+1)") {
        Automaton shifted = shift_plus_one(tm);
        Automaton prod = product(tm, shifted, Combine::Multiply);
        for (std::uint64_t n = 0; n < 100000; ++n) {
            double expect = (nu2(n + 1) + 1) % 2 == 0 ? 1.0 : -1.0;
            CHECK(prod.eval(n).real() == expect);
        }
    }
    SUBCASE("multiplication by constant 1 is the identity") {
        Automaton one = make_constant(2, OutputValue::from_int(1));
        Automaton prod = product(tm, one, Combine::Multiply);
        CHECK(same_sequence(prod, tm));
    }
    SUBCASE("exactness preserved") {
        Automaton g = make_builtin("gtm3").automaton;
        Automaton prod = product(g, g, Combine::Add);
        CHECK(prod.has_exact_output());
    }
}

TEST_CASE("shift by one") {
    for (const auto& name : builtin_names()) {
        Automaton a = make_builtin(name).automaton;
        Automaton shifted = shift_plus_one(a);
        for (std::uint64_t n = 0; n < 3000; ++n)
            CHECK(shifted.eval(n) == a.eval(n + 1));
    }
}

TEST_CASE("base change") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("l = 2 gives a base-4 automaton") {
        Automaton b4 = base_change(tm, 2);
        CHECK(b4.base == 4);
        for (std::uint64_t n = 0; n < 100000; ++n) CHECK(b4.eval(n) == tm.eval(n));
    }
    SUBCASE("l = 1 is an isomorphic copy") {
        CHECK(same_sequence(base_change(tm, 1), tm));
    }
    SUBCASE("log-length automaton stabilizes") {
        Automaton ll = make_builtin("log-length").automaton;
        Automaton b4 = base_change(ll, 2);
        CHECK(b4.base == 4);
        for (std::uint64_t n = 0; n < 20000; ++n) CHECK(b4.eval(n) == ll.eval(n));
    }
}

TEST_CASE("arithmetic progression restriction") {
    Automaton tm = make_builtin("thue-morse").automaton;
    SUBCASE("q=2 r=0 reproduces t") {
        Automaton r0 = restrict_ap(tm, 2, 0);
        for (std::uint64_t n = 0; n < 5000; ++n) CHECK(r0.eval(n) == tm.eval(n));
    }
    SUBCASE("q=2 r=1 reproduces -t") {
        Automaton r1 = restrict_ap(tm, 2, 1);
        for (std::uint64_t n = 0; n < 100000; ++n)
            CHECK(r1.eval(n).real() == -tm.eval(n).real());
    }
    SUBCASE("q=1 r=0 is the identity") {
        CHECK(same_sequence(restrict_ap(tm, 1, 0), tm));
    }
    SUBCASE("fidelity across builtins") {
        for (const auto& name : builtin_names()) {
            Automaton a = make_builtin(name).automaton;
            for (long q = 1; q <= 10; ++q)
                for (long r = 0; r < q; ++r) {
                    Automaton restr = restrict_ap(a, q, r);
                    for (std::uint64_t n = 0; n < 2000; ++n)
                        CHECK(restr.eval(n) == a.eval(q * n + r));
                }
        }
    }
}

TEST_CASE("kernel families") {
    SUBCASE("Thue-Morse kernel is {t, -t}") {
        Automaton tm = make_builtin("thue-morse").automaton;
        auto kernel = kernel_family(tm);
        CHECK(kernel.size() == 2);
        bool found_t = false, found_neg = false;
        for (const auto& member : kernel) {
            bool eq = true, neg = true;
            for (std::uint64_t n = 0; n < 256; ++n) {
                if (member.eval(n) != tm.eval(n)) eq = false;
                if (member.eval(n).real() != -tm.eval(n).real()) neg = false;
            }
            found_t |= eq;
            found_neg |= neg;
        }
        CHECK(found_t);
        CHECK(found_neg);
    }
    SUBCASE("constant kernel is a singleton") {
        CHECK(kernel_family(make_constant(2, OutputValue::from_int(1))).size() == 1);
    }
    SUBCASE("Rudin-Shapiro kernel has 4 members") {
        CHECK(kernel_family(make_builtin("rudin-shapiro").automaton).size() == 4);
    }
    SUBCASE("kernel members satisfy a(2n+m) relations") {
        Automaton rs = make_builtin("rudin-shapiro").automaton;
        for (const auto& member : kernel_family(rs)) {
            bool matched = false;
            for (std::uint64_t pw : {1, 2, 4, 8})
                for (std::uint64_t m = 0; m < pw && !matched; ++m) {
                    bool eq = true;
                    for (std::uint64_t n = 0; n < 512; ++n)
                        if (member.eval(n) != rs.eval(pw * n + m)) {
                            eq = false;
                            break;
                        }
                    matched = eq;
                }
            CHECK(matched);
        }
    }
}

TEST_CASE("co-kernel families") {
    SUBCASE("Thue-Morse co-kernel is {t, -t}") {
        CHECK(cokernel_family(make_builtin("thue-morse").automaton).size() == 2);
        CHECK(cokernel_output_variants(make_builtin("thue-morse").automaton).size() == 2);
    }
    SUBCASE("constant co-kernel is a singleton") {
        CHECK(cokernel_family(make_constant(2, OutputValue::from_int(1))).size() == 1);
    }
    SUBCASE("length-parity swap pair has 2 output variants") {
        Automaton swap;
        swap.base = 2;
        swap.state_names = {"odd", "even"};
        swap.delta = {{1, 1}, {0, 0}};
        swap.initial = 0;
        swap.output = {OutputValue::from_int(0), OutputValue::from_int(1)};
        CHECK(cokernel_output_variants(swap).size() == 2);
        // the raw automaton's transient start state adds a third variant
        CHECK(cokernel_output_variants(make_raw_length_parity()).size() == 3);
    }
}

TEST_CASE("periodic sequence construction") {
    std::vector<OutputValue> table = {OutputValue::from_int(1),
                                      OutputValue::from_int(0),
                                      OutputValue::from_int(-1)};
    for (int base : {2, 3}) {
        Automaton p = make_periodic(base, table);
        CHECK(p.normalized);
        for (std::uint64_t n = 0; n < 2000; ++n)
            CHECK(p.eval(n) == table[n % 3].approx);
    }
}
