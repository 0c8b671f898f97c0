#pragma once

#include <functional>
#include <vector>

#include "autoseq/automaton.hpp"

namespace autoseq {

/// Equivalent automaton satisfying tau(delta(s,0)) == tau(s) on all reachable
/// states.  Pair-state construction (current, state after the last nonzero
/// digit), pruned and minimized.
Automaton normalize_leading_zeros(const Automaton& a);

enum class Combine { Multiply, Add, Subtract };

/// Pair automaton computing combine(a(n), b(n)).  Exactness is preserved when
/// both factors carry exact outputs.
Automaton product(const Automaton& a, const Automaton& b, Combine combine);
Automaton product(const Automaton& a, const Automaton& b,
                  const std::function<Complex(Complex, Complex)>& combine);

/// Base-change to k^l: delta'(s, [u]_k) = delta(s, u) for u of length l,
/// restricted to states reachable by paths of length divisible by l.
Automaton base_change(const Automaton& a, int l);

/// Automaton for n -> a(qn + r) via the S x [q] carry construction.
Automaton restrict_ap(const Automaton& a, long q, long r);

/// The k-kernel: subsequences n -> a(k^l n + m), m < k^l, realized as
/// initial-state variants.  Deduplicated by produced sequence.
std::vector<Automaton> kernel_family(const Automaton& a);

/// The co-kernel as output vectors: closure of tau under tau -> tau o
/// delta(.,j).  Each entry is an output map over the states of `a`.
std::vector<std::vector<OutputValue>> cokernel_output_variants(const Automaton& a);

/// Co-kernel as sequence handles (output variants, re-normalized).
std::vector<Automaton> cokernel_family(const Automaton& a);

/// Automaton for n -> a(n + 1), via an add-one carry coordinate.
Automaton shift_plus_one(const Automaton& a);

}  // namespace autoseq
