#include "autoseq/constructions.hpp"

#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace autoseq {

namespace {

std::string pair_name(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

OutputValue combine_values(const OutputValue& x, const OutputValue& y, Combine c) {
    OutputValue r;
    switch (c) {
        case Combine::Multiply:
            r.approx = x.approx * y.approx;
            if (x.exact && y.exact) r = OutputValue(*x.exact * *y.exact);
            break;
        case Combine::Add:
            r.approx = x.approx + y.approx;
            if (x.exact && y.exact) r = OutputValue(*x.exact + *y.exact);
            break;
        case Combine::Subtract:
            r.approx = x.approx - y.approx;
            if (x.exact && y.exact) r = OutputValue(*x.exact - *y.exact);
            break;
    }
    return r;
}

// Generic reachable-product construction over pair states.
template <typename OutFn>
Automaton pair_automaton(const Automaton& a, const Automaton& b, OutFn out) {
    if (a.base != b.base) throw AutomatonError("base mismatch");
    if (!a.has_initial() || !b.has_initial() || !a.has_output() || !b.has_output())
        throw AutomatonError("incomplete automaton");
    Automaton r;
    r.base = a.base;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int sa, int sb) {
        auto [it, fresh] = index.emplace(std::make_pair(sa, sb),
                                         static_cast<int>(states.size()));
        if (fresh) states.emplace_back(sa, sb);
        return it->second;
    };
    r.initial = intern(a.initial, b.initial);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [sa, sb] = states[i];
        r.state_names.push_back(pair_name(a.state_names[sa], b.state_names[sb]));
        std::vector<int> row(r.base);
        for (int j = 0; j < r.base; ++j)
            row[j] = intern(a.delta[sa][j], b.delta[sb][j]);
        r.delta.push_back(std::move(row));
        r.output.push_back(out(sa, sb));
    }
    r.normalized = a.normalized && b.normalized;
    return r;
}

}  // namespace

Automaton product(const Automaton& a, const Automaton& b, Combine combine) {
    return pair_automaton(a, b, [&](int sa, int sb) {
        return combine_values(a.output[sa], b.output[sb], combine);
    });
}

Automaton product(const Automaton& a, const Automaton& b,
                  const std::function<Complex(Complex, Complex)>& combine) {
    return pair_automaton(a, b, [&](int sa, int sb) {
        return OutputValue(combine(a.output[sa].approx, b.output[sb].approx));
    });
}

Automaton normalize_leading_zeros(const Automaton& a) {
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    // States are (current, checkpoint): checkpoint is the state reached just
    // after the most recent nonzero digit; output reads the checkpoint, so
    // trailing (most-significant) zero digits never change the value.
    Automaton r;
    r.base = a.base;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int cur, int chk) {
        auto [it, fresh] = index.emplace(std::make_pair(cur, chk),
                                         static_cast<int>(states.size()));
        if (fresh) states.emplace_back(cur, chk);
        return it->second;
    };
    r.initial = intern(a.initial, a.initial);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [cur, chk] = states[i];
        r.state_names.push_back(pair_name(a.state_names[cur], a.state_names[chk]));
        std::vector<int> row(r.base);
        for (int j = 0; j < r.base; ++j) {
            int nxt = a.delta[cur][j];
            row[j] = intern(nxt, j == 0 ? chk : nxt);
        }
        r.delta.push_back(std::move(row));
        r.output.push_back(a.output[chk]);
    }
    r.normalized = true;
    Automaton m = minimize(r);
    m.normalized = true;
    return m;
}

Automaton base_change(const Automaton& a, int l) {
    if (l < 1) throw AutomatonError("base change exponent must be >= 1");
    if (!a.normalized)
        throw AutomatonError("base change requires a normalized automaton");
    long long newbase = 1;
    for (int i = 0; i < l; ++i) {
        newbase *= a.base;
        if (newbase > (1 << 20)) throw AutomatonError("base change overflow: k^l too large");
    }
    Automaton r;
    r.base = static_cast<int>(newbase);
    r.normalized = true;
    std::map<int, int> index;
    std::vector<int> states;
    auto intern = [&](int s) {
        auto [it, fresh] = index.emplace(s, static_cast<int>(states.size()));
        if (fresh) states.push_back(s);
        return it->second;
    };
    r.initial = intern(a.initial);
    for (std::size_t i = 0; i < states.size(); ++i) {
        int s = states[i];
        r.state_names.push_back(a.state_names[s]);
        std::vector<int> row(r.base);
        for (int m = 0; m < r.base; ++m) {
            int cur = s, v = m;
            for (int t = 0; t < l; ++t) {
                cur = a.delta[cur][v % a.base];
                v /= a.base;
            }
            row[m] = intern(cur);
        }
        r.delta.push_back(std::move(row));
        if (a.has_output()) r.output.push_back(a.output[s]);
    }
    return r;
}

Automaton restrict_ap(const Automaton& a, long q, long r0) {
    if (q < 1 || r0 < 0 || r0 >= q)
        throw AutomatonError("restriction requires 0 <= r < q, q >= 1");
    if (!a.normalized)
        throw AutomatonError("restriction requires a normalized automaton");
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    // States (s, m): s has consumed the low digits of qn+r read so far, m < q
    // is the pending carry.  Output flushes the carry through delta.
    Automaton r;
    r.base = a.base;
    std::map<std::pair<int, long>, int> index;
    std::vector<std::pair<int, long>> states;
    auto intern = [&](int s, long m) {
        auto [it, fresh] = index.emplace(std::make_pair(s, m),
                                         static_cast<int>(states.size()));
        if (fresh) states.emplace_back(s, m);
        return it->second;
    };
    r.initial = intern(a.initial, r0);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [s, m] = states[i];
        r.state_names.push_back(pair_name(a.state_names[s], std::to_string(m)));
        std::vector<int> row(r.base);
        for (int j = 0; j < r.base; ++j) {
            long v = q * j + m;
            row[j] = intern(a.delta[s][static_cast<int>(v % a.base)], v / a.base);
        }
        r.delta.push_back(std::move(row));
        int flushed = a.run(s, digits_lsd(static_cast<std::uint64_t>(m), a.base));
        r.output.push_back(a.output[flushed]);
    }
    r.normalized = true;
    return r;
}

std::vector<Automaton> kernel_family(const Automaton& a) {
    if (!a.normalized) throw AutomatonError("kernel family requires a normalized automaton");
    Automaton p = a.pruned();
    std::vector<Automaton> family;
    std::set<std::string> seen;
    for (int s = 0; s < p.num_states(); ++s) {
        Automaton v = p;
        v.initial = s;
        // initial-state variants of a normalized automaton stay normalized
        std::string sig = sequence_signature(v);
        if (seen.insert(sig).second) family.push_back(v.pruned());
    }
    return family;
}

std::vector<std::vector<OutputValue>> cokernel_output_variants(const Automaton& a) {
    if (!a.has_output()) throw AutomatonError("incomplete automaton");
    Automaton p = a.has_initial() ? a.pruned() : a;
    int n = p.num_states();
    auto key = [&](const std::vector<OutputValue>& v) {
        std::ostringstream os;
        for (const auto& x : v) {
            if (x.exact)
                os << 'q' << x.exact->re.get_str() << ',' << x.exact->im.get_str();
            else
                os << 'f' << x.approx.real() << ',' << x.approx.imag();
            os << ';';
        }
        return os.str();
    };
    std::vector<std::vector<OutputValue>> closure{p.output};
    std::set<std::string> seen{key(p.output)};
    for (std::size_t i = 0; i < closure.size(); ++i) {
        for (int j = 0; j < p.base; ++j) {
            std::vector<OutputValue> next(n);
            for (int s = 0; s < n; ++s) next[s] = closure[i][p.delta[s][j]];
            if (seen.insert(key(next)).second) closure.push_back(std::move(next));
        }
    }
    return closure;
}

std::vector<Automaton> cokernel_family(const Automaton& a) {
    Automaton p = a.pruned();
    std::vector<Automaton> family;
    std::set<std::string> seen;
    for (auto& tau : cokernel_output_variants(p)) {
        Automaton v = p;
        v.output = tau;
        v.normalized = false;
        Automaton norm = normalize_leading_zeros(v);
        std::string sig = sequence_signature(norm);
        if (seen.insert(sig).second) family.push_back(std::move(norm));
    }
    return family;
}

Automaton shift_plus_one(const Automaton& a) {
    if (!a.normalized) throw AutomatonError("shift requires a normalized automaton");
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    // State (s, c): s consumed the incremented low digits, c is the pending
    // add-one carry.  A final carry appends a high 1 digit, flushed in tau.
    Automaton r;
    r.base = a.base;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int s, int c) {
        auto [it, fresh] = index.emplace(std::make_pair(s, c),
                                         static_cast<int>(states.size()));
        if (fresh) states.emplace_back(s, c);
        return it->second;
    };
    r.initial = intern(a.initial, 1);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [s, c] = states[i];
        r.state_names.push_back(pair_name(a.state_names[s], std::to_string(c)));
        std::vector<int> row(r.base);
        for (int j = 0; j < r.base; ++j) {
            int v = j + c;
            row[j] = intern(a.delta[s][v % a.base], v / a.base);
        }
        r.delta.push_back(std::move(row));
        r.output.push_back(c == 0 ? a.output[s] : a.output[a.delta[s][1]]);
    }
    r.normalized = true;
    return r;
}

}  // namespace autoseq
