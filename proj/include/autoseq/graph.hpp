#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "autoseq/automaton.hpp"

namespace autoseq {

struct SccReport {
    std::vector<std::vector<int>> components;       // partition of states
    std::vector<bool> terminal;                     // per component
    std::vector<std::pair<int, int>> condensation;  // edges between components
    std::vector<int> component_of;                  // state -> component index

    int num_components() const { return static_cast<int>(components.size()); }
};

SccReport scc_analysis(const Automaton& a);
bool is_strongly_connected(const Automaton& a);

/// d_A = gcd{[u]_k - [v]_k : delta(s,u)=delta(s,v)=s, |u|=|v|}.  Requires a
/// strongly connected automaton; the result is state-independent and coprime
/// to the base.
long cycle_gcd(const Automaton& a, int state);

struct AperiodicityCertificate {
    bool strongly_aperiodic;   // by the sufficient test
    long d;                    // cycle gcd
    int zero_fixed_state;      // state with delta(s,0) == s, or -1
    std::string failed_condition;  // empty when the test passes
};

/// Sufficient test: d_A == 1 and some state fixed by digit 0.
AperiodicityCertificate check_aperiodic(const Automaton& a);

/// Exact state-visit frequencies pi(s'; r(q)) for gcd(q, base) == 1, from the
/// stationary behaviour of the walk on S x Z/q (digit weights tracked mod q).
struct FrequencyTable {
    long q;
    int block_length;                            // ord_q(k)
    std::vector<std::vector<mpq_class>> pi;      // pi[state][residue]
    std::vector<std::vector<double>> pi_approx;  // same, as doubles
};

FrequencyTable frequencies(const Automaton& a, long q);

struct GroupPresentation {
    std::vector<std::vector<int>> generators;  // digit action g(j), j in [0,k)
    std::vector<std::vector<int>> elements;    // all of G as permutations
    std::vector<int> element_of_generator;     // index of g(j) in elements
    std::vector<OutputValue> projection;       // pi: G -> C, per element
    int identity;                              // index of id in elements

    int mul(int x, int y) const;  // element index of elements[x] o elements[y]
};

/// Generalized Thue-Morse representation when every digit acts as a
/// permutation of states and digit 0 acts as the identity.
std::optional<GroupPresentation> invertibility(const Automaton& a);

struct AperiodicDecomposition {
    long k_prime;  // new base (a power of the original)
    long q;        // cycle gcd of the automaton
    std::vector<Automaton> parts;  // parts[r] produces n -> a(qn + r)
};

/// Constructive decomposition: base-change until the 0-action is idempotent
/// and the state set is stable, then split along residues mod d_A so that
/// every terminal component of every part passes check_aperiodic.
AperiodicDecomposition decompose_aperiodic(const Automaton& a);

}  // namespace autoseq
