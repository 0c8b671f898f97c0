#include "autoseq/sequence.hpp"

#include <map>

#include "autoseq/constructions.hpp"

namespace autoseq {

namespace {

Automaton thue_morse() {
    Automaton a;
    a.base = 2;
    a.state_names = {"even", "odd"};
    a.delta = {{0, 1}, {1, 0}};
    a.initial = 0;
    a.output = {OutputValue::from_int(1), OutputValue::from_int(-1)};
    a.normalized = true;
    return a;
}

// Rudin-Shapiro: (-1)^(number of "11" factors in binary).  State = (last
// digit read, parity so far); adjacent pairs are counted the same in either
// reading order.
Automaton rudin_shapiro() {
    Automaton a;
    a.base = 2;
    a.state_names = {"0+", "1+", "0-", "1-"};
    auto enc = [](int last, int par) { return last + 2 * par; };
    a.delta.assign(4, std::vector<int>(2));
    for (int last = 0; last < 2; ++last)
        for (int par = 0; par < 2; ++par)
            for (int j = 0; j < 2; ++j)
                a.delta[enc(last, par)][j] = enc(j, par ^ (last & j));
    a.initial = enc(0, 0);
    a.output = {OutputValue::from_int(1), OutputValue::from_int(1),
                OutputValue::from_int(-1), OutputValue::from_int(-1)};
    a.normalized = true;
    return a;
}

// (-1)^(2-adic valuation of n), with a(0) = 1.
Automaton nu2_parity() {
    Automaton a;
    a.base = 2;
    a.state_names = {"zeros-even", "zeros-odd", "done+", "done-"};
    a.delta = {{1, 2}, {0, 3}, {2, 2}, {3, 3}};
    a.initial = 0;
    a.output = {OutputValue::from_int(1), OutputValue::from_int(1),
                OutputValue::from_int(1), OutputValue::from_int(-1)};
    a.normalized = true;
    return a;
}

// floor(log2 n) mod 2, a(0) = 0: parity of (digit count - 1) on canonical
// expansions, made leading-zero blind by normalization.
Automaton log_length() {
    Automaton raw = make_raw_length_parity();
    Automaton norm = normalize_leading_zeros(raw);
    return norm;
}

// Regular paperfolding: for n = m 2^j with m odd, +1 if m = 1 mod 4 else -1;
// +1 at n = 0.
Automaton paperfold() {
    Automaton a;
    a.base = 2;
    a.state_names = {"zeros", "one", "plus", "minus"};
    a.delta = {{0, 1}, {2, 3}, {2, 2}, {3, 3}};
    a.initial = 0;
    a.output = {OutputValue::from_int(1), OutputValue::from_int(1),
                OutputValue::from_int(1), OutputValue::from_int(-1)};
    a.normalized = true;
    return a;
}

// Base-3 generalized Thue-Morse: real part of omega^(digit sum of n base 3),
// outputs {1, -1/2, -1/2} as exact rationals.
Automaton gtm3() {
    Automaton a;
    a.base = 3;
    a.state_names = {"r0", "r1", "r2"};
    a.delta.assign(3, std::vector<int>(3));
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 3; ++j) a.delta[r][j] = (r + j) % 3;
    a.initial = 0;
    a.output = {OutputValue::from_int(1),
                OutputValue::from_rat(mpq_class(-1, 2)),
                OutputValue::from_rat(mpq_class(-1, 2))};
    a.normalized = true;
    return a;
}

// (-1)^n: the lowest digit decides, later digits are absorbed.
Automaton parity() {
    Automaton a;
    a.base = 2;
    a.state_names = {"start", "even", "odd"};
    a.delta = {{1, 2}, {1, 1}, {2, 2}};
    a.initial = 0;
    a.output = {OutputValue::from_int(1), OutputValue::from_int(1),
                OutputValue::from_int(-1)};
    a.normalized = true;
    return a;
}

}  // namespace

Automaton make_raw_length_parity() {
    Automaton a;
    a.base = 2;
    a.state_names = {"empty", "len-odd", "len-even"};
    a.delta = {{1, 1}, {2, 2}, {1, 1}};
    a.initial = 0;
    // length odd means floor(log2) even, value 0
    a.output = {OutputValue::from_int(0), OutputValue::from_int(0),
                OutputValue::from_int(1)};
    a.normalized = false;
    return a;
}

Automaton make_constant(int base, const OutputValue& value) {
    Automaton a;
    a.base = base;
    a.state_names = {"c"};
    a.delta = {std::vector<int>(base, 0)};
    a.initial = 0;
    a.output = {value};
    a.normalized = true;
    return a;
}

Automaton make_periodic(int base, const std::vector<OutputValue>& table) {
    if (table.empty()) throw AutomatonError("empty period table");
    long p = static_cast<long>(table.size());
    // State (r, w): value-so-far mod p and digit weight base^i mod p.
    Automaton a;
    a.base = base;
    std::map<std::pair<long, long>, int> index;
    std::vector<std::pair<long, long>> states;
    auto intern = [&](long r, long w) {
        auto [it, fresh] = index.emplace(std::make_pair(r, w),
                                         static_cast<int>(states.size()));
        if (fresh) states.emplace_back(r, w);
        return it->second;
    };
    a.initial = intern(0, 1 % p);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [r, w] = states[i];
        a.state_names.push_back("(" + std::to_string(r) + "," + std::to_string(w) + ")");
        std::vector<int> row(base);
        for (int j = 0; j < base; ++j)
            row[j] = intern((r + j * w) % p, (w * base) % p);
        a.delta.push_back(std::move(row));
        a.output.push_back(table[static_cast<std::size_t>(r)]);
    }
    a.normalized = true;
    return a;
}

Automaton make_mod3_tracker(const std::vector<OutputValue>& outputs) {
    if (outputs.size() != 3) throw AutomatonError("mod-3 tracker needs 3 outputs");
    Automaton a;
    a.base = 2;
    a.delta.assign(6, std::vector<int>(2));
    // states (r, w) with w in {1, 2}: index r + 3*(w == 2)
    auto id = [](long r, bool w2) { return static_cast<int>(r) + (w2 ? 3 : 0); };
    for (long r = 0; r < 3; ++r)
        for (int w2 = 0; w2 < 2; ++w2) {
            long w = w2 ? 2 : 1;
            for (int j = 0; j < 2; ++j)
                a.delta[id(r, w2)][j] = id((r + j * w) % 3, !w2);
            a.state_names.push_back("(" + std::to_string(r) + "," + std::to_string(w) + ")");
        }
    a.initial = id(0, false);
    for (int i = 0; i < 6; ++i) a.output.push_back(outputs[i % 3]);
    a.normalized = true;
    return a;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "thue-morse", "rudin-shapiro", "nu2-parity", "log-length",
        "paperfold",  "gtm3",          "parity",
    };
    return names;
}

bool is_builtin(const std::string& name) {
    for (const auto& n : builtin_names())
        if (n == name) return true;
    return false;
}

SequenceHandle make_builtin(const std::string& name) {
    if (name == "thue-morse") return {thue_morse(), name};
    if (name == "rudin-shapiro") return {rudin_shapiro(), name};
    if (name == "nu2-parity") return {nu2_parity(), name};
    if (name == "log-length") return {log_length(), name};
    if (name == "paperfold") return {paperfold(), name};
    if (name == "gtm3") return {gtm3(), name};
    if (name == "parity") return {parity(), name};
    throw AutomatonError("unknown builtin: " + name);
}

}  // namespace autoseq
