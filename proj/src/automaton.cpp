#include "autoseq/automaton.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace autoseq {

std::vector<int> digits_lsd(std::uint64_t n, int base) {
    std::vector<int> d;
    while (n > 0) {
        d.push_back(static_cast<int>(n % base));
        n /= base;
    }
    return d;
}

std::uint64_t word_value(std::span<const int> digits, int base) {
    std::uint64_t v = 0, w = 1;
    for (int d : digits) {
        v += w * static_cast<std::uint64_t>(d);
        w *= base;
    }
    return v;
}

bool Automaton::has_exact_output() const {
    if (!has_output()) return false;
    return std::all_of(output.begin(), output.end(),
                       [](const OutputValue& v) { return v.is_exact(); });
}

int Automaton::run(int state, std::span<const int> digits) const {
    for (int d : digits) state = delta[state][d];
    return state;
}

int Automaton::state_of(std::uint64_t n) const {
    if (!has_initial()) throw AutomatonError("incomplete automaton");
    return run(initial, digits_lsd(n, base));
}

Complex Automaton::eval(std::uint64_t n) const {
    if (!has_initial() || !has_output())
        throw AutomatonError("incomplete automaton");
    return output[state_of(n)].approx;
}

ExactC Automaton::eval_exact(std::uint64_t n) const {
    if (!has_initial() || !has_output())
        throw AutomatonError("incomplete automaton");
    const OutputValue& v = output[state_of(n)];
    if (!v.exact) throw AutomatonError("automaton has no exact outputs");
    return *v.exact;
}

void Automaton::validate() const {
    if (base < 2) throw AutomatonError("base must be >= 2");
    int n = num_states();
    if (static_cast<int>(state_names.size()) != n)
        throw AutomatonError("state name count mismatch");
    for (const auto& row : delta) {
        if (static_cast<int>(row.size()) != base)
            throw AutomatonError("delta is not total");
        for (int t : row)
            if (t < 0 || t >= n) throw AutomatonError("delta target out of range");
    }
    if (has_initial() && (initial < 0 || initial >= n))
        throw AutomatonError("initial state out of range");
    if (has_output() && static_cast<int>(output.size()) != n)
        throw AutomatonError("output map is not total");
    if (normalized && has_initial() && has_output()) {
        Automaton p = pruned();
        for (int s = 0; s < p.num_states(); ++s)
            if (!(p.output[p.delta[s][0]] == p.output[s]))
                throw AutomatonError("normalized flag set but tau(delta(s,0)) != tau(s)");
    }
}

Automaton Automaton::pruned() const {
    if (!has_initial()) return *this;
    int n = num_states();
    std::vector<int> remap(n, -1);
    std::vector<int> order;
    std::queue<int> bfs;
    remap[initial] = 0;
    order.push_back(initial);
    bfs.push(initial);
    while (!bfs.empty()) {
        int s = bfs.front();
        bfs.pop();
        for (int j = 0; j < base; ++j) {
            int t = delta[s][j];
            if (remap[t] < 0) {
                remap[t] = static_cast<int>(order.size());
                order.push_back(t);
                bfs.push(t);
            }
        }
    }
    Automaton r;
    r.base = base;
    r.initial = 0;
    r.normalized = normalized;
    for (int s : order) {
        r.state_names.push_back(state_names[s]);
        std::vector<int> row(base);
        for (int j = 0; j < base; ++j) row[j] = remap[delta[s][j]];
        r.delta.push_back(std::move(row));
        if (has_output()) r.output.push_back(output[s]);
    }
    return r;
}

std::vector<int> Automaton::digit_permutation(int digit) const {
    int n = num_states();
    std::vector<int> perm(n), seen(n, 0);
    for (int s = 0; s < n; ++s) {
        int t = delta[s][digit];
        if (seen[t]) return {};
        seen[t] = 1;
        perm[s] = t;
    }
    return perm;
}

namespace {

// Moore partition refinement: initial partition by output value, refine by
// transition block vectors until stable.
std::vector<int> output_partition(const Automaton& a) {
    int n = a.num_states();
    std::vector<int> cls(n);
    std::vector<OutputValue> reps;
    for (int s = 0; s < n; ++s) {
        int c = -1;
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (reps[i] == a.output[s]) { c = static_cast<int>(i); break; }
        if (c < 0) {
            c = static_cast<int>(reps.size());
            reps.push_back(a.output[s]);
        }
        cls[s] = c;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::vector<int>, int> sig_to_new;
        std::vector<int> next(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig;
            sig.push_back(cls[s]);
            for (int j = 0; j < a.base; ++j) sig.push_back(cls[a.delta[s][j]]);
            auto [it, inserted] =
                sig_to_new.emplace(std::move(sig), static_cast<int>(sig_to_new.size()));
            next[s] = it->second;
        }
        if (next != cls) {
            changed = true;
            cls = std::move(next);
        }
    }
    return cls;
}

}  // namespace

Automaton minimize(const Automaton& a) {
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    Automaton p = a.pruned();
    std::vector<int> cls = output_partition(p);
    int m = *std::max_element(cls.begin(), cls.end()) + 1;
    Automaton r;
    r.base = p.base;
    r.normalized = p.normalized;
    r.state_names.assign(m, "");
    r.delta.assign(m, std::vector<int>(p.base, -1));
    r.output.assign(m, OutputValue{});
    for (int s = 0; s < p.num_states(); ++s) {
        int c = cls[s];
        if (r.state_names[c].empty()) r.state_names[c] = p.state_names[s];
        for (int j = 0; j < p.base; ++j) r.delta[c][j] = cls[p.delta[s][j]];
        r.output[c] = p.output[s];
    }
    r.initial = cls[p.initial];
    return r.pruned();
}

std::string sequence_signature(const Automaton& a) {
    Automaton m = minimize(a);  // pruned + BFS-canonical numbering
    std::ostringstream os;
    os << m.base << '|' << m.initial << '|';
    for (int s = 0; s < m.num_states(); ++s) {
        for (int j = 0; j < m.base; ++j) os << m.delta[s][j] << ',';
        const OutputValue& v = m.output[s];
        if (v.exact)
            os << 'q' << v.exact->re.get_str() << '+' << v.exact->im.get_str() << 'i';
        else {
            // bit pattern, so equality means identical values
            auto bits = [](double d) {
                std::uint64_t u;
                static_assert(sizeof(u) == sizeof(d));
                std::memcpy(&u, &d, sizeof(u));
                return u;
            };
            os << 'f' << bits(v.approx.real()) << '+' << bits(v.approx.imag());
        }
        os << ';';
    }
    return os.str();
}

bool same_sequence(const Automaton& a, const Automaton& b) {
    return sequence_signature(a) == sequence_signature(b);
}

std::string format_complex(Complex z, int significant_digits) {
    std::ostringstream os;
    os.precision(significant_digits);
    os << z.real();
    if (z.imag() != 0.0) {
        os << (z.imag() < 0 ? "-" : "+");
        os << std::abs(z.imag()) << "i";
    }
    return os.str();
}

}  // namespace autoseq
