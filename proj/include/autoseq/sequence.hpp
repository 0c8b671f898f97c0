#pragma once

#include <string>
#include <vector>

#include "autoseq/automaton.hpp"

namespace autoseq {

/// An evaluable automatic sequence: normalized automaton plus a label.
struct SequenceHandle {
    Automaton automaton;
    std::string label;

    Complex eval(std::uint64_t n) const { return automaton.eval(n); }
    ExactC eval_exact(std::uint64_t n) const { return automaton.eval_exact(n); }
};

/// Names accepted by make_builtin, in registration order.
const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);
SequenceHandle make_builtin(const std::string& name);

/// Constant sequence c in the given base.
Automaton make_constant(int base, const OutputValue& value);

/// Periodic sequence n -> table[n mod table.size()].
Automaton make_periodic(int base, const std::vector<OutputValue>& table);

/// Base-2 automaton tracking n mod 3 with a weight coordinate; cycle gcd 3.
/// Output (r, w) -> outputs[r].
Automaton make_mod3_tracker(const std::vector<OutputValue>& outputs);

/// The raw 2-state digit-count-parity automaton (not normalized); the
/// log-length builtin is its formula-exact, normalized refinement.
Automaton make_raw_length_parity();

}  // namespace autoseq
