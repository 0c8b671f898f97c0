#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/complexq.hpp"

namespace autoseq {

struct AutomatonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Digit expansions, least significant digit first.  digits(0) is the empty
/// word; canonical expansions never end (at the most significant side) in 0.
std::vector<int> digits_lsd(std::uint64_t n, int base);
std::uint64_t word_value(std::span<const int> digits, int base);

/// Finite k-automaton with optional initial state and optional output map.
/// Words are always read least-significant-digit first: delta(s, uv) first
/// consumes v (the low digits), then u.
struct Automaton {
    int base = 2;
    std::vector<std::string> state_names;
    std::vector<std::vector<int>> delta;  // delta[state][digit]
    int initial = -1;                     // -1: no initial state
    std::vector<OutputValue> output;      // empty: no output map
    bool normalized = false;              // tau(delta(s,0)) == tau(s) holds

    int num_states() const { return static_cast<int>(delta.size()); }
    bool has_initial() const { return initial >= 0; }
    bool has_output() const { return !output.empty(); }
    bool has_exact_output() const;

    int step(int state, int digit) const { return delta[state][digit]; }
    /// Run the automaton on an LSD-first digit list.
    int run(int state, std::span<const int> digits) const;
    /// State reached from the initial state on the canonical expansion of n.
    int state_of(std::uint64_t n) const;

    Complex eval(std::uint64_t n) const;
    ExactC eval_exact(std::uint64_t n) const;

    /// Check structural invariants; throws AutomatonError on violation.
    void validate() const;

    /// Restrict to states reachable from the initial state.
    Automaton pruned() const;

    /// Permutation of digit j on states, or empty if not a bijection.
    std::vector<int> digit_permutation(int digit) const;
};

/// Output-equivalent automaton with the minimum number of states
/// (partition refinement).  Requires initial and output.
Automaton minimize(const Automaton& a);

/// True if both automata produce the same sequence (after minimization,
/// canonical BFS numbering comparison).
bool same_sequence(const Automaton& a, const Automaton& b);

/// Canonical signature (BFS-ordered transitions + outputs) of the minimized
/// automaton; equal signatures == equal sequences.
std::string sequence_signature(const Automaton& a);

}  // namespace autoseq
