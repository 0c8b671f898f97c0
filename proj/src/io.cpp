#include "autoseq/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace autoseq {

namespace {

bool is_rational_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    bool slash = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '/') {
            if (slash || i + 1 == t.size()) return false;
            slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
            return false;
        }
    }
    return true;
}

mpq_class parse_rational(const std::string& t) {
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational " + t);
    q.canonicalize();
    return q;
}

// value := part | part(+|-)parti,  part := rational | float
OutputValue parse_value(const std::string& tok, int line) {
    std::string re = tok, im;
    if (!tok.empty() && tok.back() == 'i') {
        // split off the imaginary part at the last top-level +/- (not the
        // leading sign, not an exponent sign)
        std::string body = tok.substr(0, tok.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos)
            throw ParseError(line, "malformed complex value '" + tok + "'");
        re = body.substr(0, split);
        im = body.substr(split);  // keeps the sign
        if (im == "+" ) im = "1";
        else if (im == "-") im = "-1";
    }
    try {
        if (is_rational_token(re) && (im.empty() || is_rational_token(im))) {
            ExactC e{parse_rational(re), im.empty() ? mpq_class(0) : parse_rational(im)};
            return OutputValue(e);
        }
        double r = std::stod(re);
        double i = im.empty() ? 0.0 : std::stod(im);
        return OutputValue(Complex{r, i});
    } catch (const std::exception&) {
        throw ParseError(line, "malformed output value '" + tok + "'");
    }
}

}  // namespace

Automaton parse_automaton(std::istream& in) {
    Automaton a;
    a.base = 0;
    bool saw_reading = false;
    std::map<std::string, int> state_index;
    std::map<std::pair<int, int>, bool> seen_delta;
    std::vector<std::pair<std::string, OutputValue>> outputs;
    std::string line;
    int lineno = 0;

    auto state_of = [&](const std::string& id, int ln) {
        auto it = state_index.find(id);
        if (it == state_index.end())
            throw ParseError(ln, "unknown state '" + id + "'");
        return it->second;
    };

    std::vector<std::tuple<int, int, int>> transitions;  // (from, digit, to)
    std::string initial_name;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "reading:") {
            std::string conv;
            ls >> conv;
            if (conv != "lsd-first")
                throw ParseError(lineno, "unsupported reading convention '" + conv + "'");
            saw_reading = true;
        } else if (key == "base:") {
            if (!(ls >> a.base) || a.base < 2)
                throw ParseError(lineno, "invalid base");
        } else if (key == "states:") {
            std::string id;
            while (ls >> id) {
                if (state_index.count(id))
                    throw ParseError(lineno, "duplicate state '" + id + "'");
                state_index[id] = static_cast<int>(a.state_names.size());
                a.state_names.push_back(id);
            }
        } else if (key == "initial:") {
            if (!(ls >> initial_name))
                throw ParseError(lineno, "missing initial state id");
        } else if (key == "output:") {
            std::string item;
            while (ls >> item) {
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw ParseError(lineno, "output entry needs '<id>=<value>'");
                outputs.emplace_back(item.substr(0, eq),
                                     parse_value(item.substr(eq + 1), lineno));
            }
        } else if (key == "delta:") {
            std::string from, arrow, to;
            int digit;
            if (!(ls >> from >> digit >> arrow >> to) || arrow != "->")
                throw ParseError(lineno, "malformed delta line (want '<id> <digit> -> <id>')");
            transitions.emplace_back(lineno, digit, -1);
            // store names for later resolution
            std::get<2>(transitions.back()) = -1;
            // resolve immediately; states must be declared before delta lines
            int f = state_of(from, lineno), t = state_of(to, lineno);
            transitions.back() = {f, digit, t};
            if (a.base > 0 && (digit < 0 || digit >= a.base))
                throw ParseError(lineno, "digit out of range");
            if (seen_delta.count({f, digit}))
                throw ParseError(lineno, "duplicate transition for (" + from + ", " +
                                             std::to_string(digit) + ")");
            seen_delta[{f, digit}] = true;
        } else {
            throw ParseError(lineno, "unknown directive '" + key + "'");
        }
    }

    if (!saw_reading)
        throw ParseError(0, "missing mandatory header 'reading: lsd-first'");
    if (a.base < 2) throw ParseError(0, "missing 'base:' line");
    if (a.state_names.empty()) throw ParseError(0, "missing 'states:' line");

    int n = static_cast<int>(a.state_names.size());
    a.delta.assign(n, std::vector<int>(a.base, -1));
    for (auto [f, d, t] : transitions) {
        if (d < 0 || d >= a.base) throw ParseError(0, "digit out of range");
        a.delta[f][d] = t;
    }
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < a.base; ++j)
            if (a.delta[s][j] < 0)
                throw ParseError(0, "delta is not total: missing (" +
                                        a.state_names[s] + ", " + std::to_string(j) + ")");

    if (!initial_name.empty()) a.initial = state_of(initial_name, 0);
    if (!outputs.empty()) {
        a.output.assign(n, OutputValue{});
        std::vector<bool> have(n, false);
        for (auto& [id, v] : outputs) {
            int s = state_of(id, 0);
            a.output[s] = v;
            have[s] = true;
        }
        for (int s = 0; s < n; ++s)
            if (!have[s])
                throw ParseError(0, "output map is not total: missing " + a.state_names[s]);
    }

    a.validate();

    // Detect the ignores-leading-0's property on the reachable part.
    if (a.has_initial() && a.has_output()) {
        Automaton p = a.pruned();
        bool norm = true;
        for (int s = 0; s < p.num_states() && norm; ++s)
            norm = p.output[p.delta[s][0]] == p.output[s];
        a.normalized = norm;
    }
    return a;
}

Automaton parse_automaton_string(const std::string& text) {
    std::istringstream in(text);
    return parse_automaton(in);
}

Automaton parse_automaton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AutomatonError("cannot open file: " + path);
    return parse_automaton(in);
}

namespace {

std::string emit_value(const OutputValue& v) {
    std::ostringstream os;
    if (v.exact) {
        os << v.exact->re.get_str();
        if (v.exact->im != 0) {
            if (v.exact->im > 0) os << '+';
            os << v.exact->im.get_str() << 'i';
        }
    } else {
        os.precision(17);
        os << v.approx.real();
        if (v.approx.imag() != 0.0) {
            if (v.approx.imag() > 0) os << '+';
            os << v.approx.imag() << 'i';
        }
    }
    return os.str();
}

}  // namespace

std::string emit_automaton(const Automaton& a) {
    std::ostringstream os;
    os << "reading: lsd-first\n";
    os << "base: " << a.base << "\n";
    os << "states:";
    for (const auto& s : a.state_names) os << ' ' << s;
    os << "\n";
    if (a.has_initial()) os << "initial: " << a.state_names[a.initial] << "\n";
    if (a.has_output()) {
        os << "output:";
        for (int s = 0; s < a.num_states(); ++s)
            os << ' ' << a.state_names[s] << '=' << emit_value(a.output[s]);
        os << "\n";
    }
    for (int s = 0; s < a.num_states(); ++s)
        for (int j = 0; j < a.base; ++j)
            os << "delta: " << a.state_names[s] << ' ' << j << " -> "
               << a.state_names[a.delta[s][j]] << "\n";
    return os.str();
}

void write_automaton_file(const Automaton& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw AutomatonError("cannot write file: " + path);
    out << emit_automaton(a);
}

}  // namespace autoseq
