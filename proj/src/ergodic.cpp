#include "autoseq/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "autoseq/analysis.hpp"
#include "autoseq/numutil.hpp"
#include "autoseq/sequence.hpp"

namespace autoseq {

namespace {

double frac(double x) { return x - std::floor(x); }

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

TorusPoint DynSystem::iterate(const TorusPoint& x, unsigned __int128 m) const {
    switch (kind) {
        case Kind::Identity:
            return x;
        case Kind::RationalRotation: {
            // exact: m p / q mod 1
            mpz_class q = alpha_exact.get_den();
            mpz_class p = alpha_exact.get_num();
            unsigned long qu = q.get_ui();
            unsigned long mr = static_cast<unsigned long>(
                m % static_cast<unsigned __int128>(qu));
            mpz_class num = (mpz_class(static_cast<unsigned long>(mr)) * p) % q;
            if (num < 0) num += q;
            return {frac(x[0] + mpq_class(num, q).get_d()), 0.0};
        }
        case Kind::Rotation:
            return {frac(x[0] + mulmod1_big(m, alpha)), 0.0};
        case Kind::Skew: {
            // T(x, y) = (x + alpha, y + x); T^m(x, y) =
            // (x + m alpha, y + m x + m(m-1)/2 alpha)
            double xm = frac(x[0] + mulmod1_big(m, alpha));
            unsigned __int128 tri = (m % 2 == 0) ? (m / 2) * (m - 1) : m * ((m - 1) / 2);
            double ym = x[1];
            ym += mulmod1_big(m, x[0]);
            ym += mulmod1_big(tri, alpha);
            return {xm, frac(ym)};
        }
    }
    return x;
}

std::string DynSystem::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Rotation: os << "rotation:alpha=" << alpha; break;
        case Kind::RationalRotation: os << "rational:" << alpha_exact.get_str(); break;
        case Kind::Skew: os << "skew:alpha=" << alpha; break;
    }
    return os.str();
}

DynSystem DynSystem::rotation(double a) {
    DynSystem s;
    s.kind = Kind::Rotation;
    s.alpha = a;
    return s;
}

DynSystem DynSystem::rational_rotation(const mpq_class& pq) {
    DynSystem s;
    s.kind = Kind::RationalRotation;
    s.alpha_exact = pq;
    s.alpha_exact.canonicalize();
    s.alpha = s.alpha_exact.get_d();
    return s;
}

DynSystem DynSystem::skew(double a) {
    DynSystem s;
    s.kind = Kind::Skew;
    s.alpha = a;
    return s;
}

DynSystem DynSystem::identity() { return DynSystem{}; }

DynSystem DynSystem::parse(const std::string& spec) {
    if (spec == "identity") return identity();
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw AutomatonError("bad system spec: " + spec);
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (kind == "rational") {
        mpq_class q(rest);
        return rational_rotation(q);
    }
    if (kind == "rotation" || kind == "skew") {
        const std::string prefix = "alpha=";
        if (rest.rfind(prefix, 0) != 0)
            throw AutomatonError("expected alpha=<value> in system spec");
        double a = parse_real(rest.substr(prefix.size()));
        return kind == "rotation" ? rotation(a) : skew(a);
    }
    throw AutomatonError("unknown system kind: " + kind);
}

bool Observable::mean_zero() const {
    for (const auto& t : terms)
        if (t.freq[0] == 0 && t.freq[1] == 0 && t.coeff != Complex(0.0, 0.0))
            return false;
    return true;
}

double Observable::sup_norm_bound() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.coeff);
    return s;
}

Complex Observable::integral() const {
    Complex c(0.0, 0.0);
    for (const auto& t : terms)
        if (t.freq[0] == 0 && t.freq[1] == 0) c += t.coeff;
    return c;
}

Complex Observable::eval(const TorusPoint& x) const {
    Complex acc(0.0, 0.0);
    for (const auto& t : terms) {
        double ph = frac(t.freq[0] * x[0]) + frac(t.freq[1] * x[1]);
        double er, ei;
        e_of(ph, er, ei);
        acc += t.coeff * Complex(er, ei);
    }
    return acc;
}

std::string Observable::describe() const {
    if (terms.size() == 1 && terms[0].coeff == Complex(1.0, 0.0)) {
        std::ostringstream os;
        os << "char:" << terms[0].freq[0];
        if (terms[0].freq[1] != 0) os << ":" << terms[0].freq[1];
        return os.str();
    }
    std::ostringstream os;
    os << "trig:";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << ",";
        os << terms[i].freq[0];
        if (terms[i].freq[1] != 0) os << ":" << terms[i].freq[1];
        os << "=" << terms[i].coeff.real();
        if (terms[i].coeff.imag() != 0) os << "+" << terms[i].coeff.imag() << "i";
    }
    return os.str();
}

Observable Observable::character(long m, long m2) {
    Observable f;
    f.terms.push_back({{m, m2}, Complex(1.0, 0.0)});
    return f;
}

Observable Observable::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw AutomatonError("bad observable spec: " + spec);
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    auto parse_freq = [](const std::string& text, std::array<long, 2>& freq) {
        auto sep = text.find(':');
        freq[1] = 0;
        if (sep == std::string::npos) {
            freq[0] = std::stol(text);
        } else {
            freq[0] = std::stol(text.substr(0, sep));
            freq[1] = std::stol(text.substr(sep + 1));
        }
    };
    if (kind == "char") {
        std::array<long, 2> freq{};
        parse_freq(rest, freq);
        return character(freq[0], freq[1]);
    }
    if (kind == "trig") {
        Observable f;
        std::istringstream is(rest);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw AutomatonError("trig term needs freq=coeff: " + tok);
            Term t;
            parse_freq(tok.substr(0, eq), t.freq);
            std::string val = tok.substr(eq + 1);
            double re = 0, im = 0;
            auto ipos = val.find('i');
            if (ipos != std::string::npos) {
                auto plus = val.rfind('+', ipos);
                auto minus = val.rfind('-', ipos);
                std::size_t split = std::string::npos;
                if (plus != std::string::npos && plus > 0) split = plus;
                if (minus != std::string::npos && minus > 0 &&
                    (split == std::string::npos || minus > split))
                    split = minus;
                if (split == std::string::npos)
                    throw AutomatonError("bad complex literal: " + val);
                re = std::stod(val.substr(0, split));
                im = std::stod(val.substr(split, ipos - split));
            } else {
                re = std::stod(val);
            }
            t.coeff = Complex(re, im);
            f.terms.push_back(t);
        }
        if (f.terms.empty()) throw AutomatonError("empty trig observable");
        return f;
    }
    throw AutomatonError("unknown observable kind: " + kind);
}

double AverageTrace::max_abs(std::size_t checkpoint) const {
    double m = 0.0;
    for (const auto& row : values) m = std::max(m, std::abs(row[checkpoint]));
    return m;
}

double AverageTrace::l2_estimate(std::size_t checkpoint) const {
    double s = 0.0;
    for (const auto& row : values) s += std::norm(row[checkpoint]);
    return values.empty() ? 0.0 : std::sqrt(s / values.size());
}

AverageTrace weighted_average(const DynSystem& sys, const Observable& f,
                              const Automaton& a, const PhasePolynomial& p,
                              const std::vector<TorusPoint>& starts,
                              const std::vector<std::uint64_t>& checkpoints) {
    if (checkpoints.empty()) throw AutomatonError("no checkpoints");
    if (!p.integer_coefficients())
        throw AutomatonError("exponent polynomial must have integer coefficients");
    std::uint64_t N_max = *std::max_element(checkpoints.begin(), checkpoints.end());
    std::vector<std::uint64_t> order(checkpoints);
    std::sort(order.begin(), order.end());

    // nonnegativity: coefficient sign analysis, then an explicit scan
    {
        bool all_nonneg = true;
        for (double c : p.coeff)
            if (c < 0) all_nonneg = false;
        if (!all_nonneg) {
            std::uint64_t scan = std::min<std::uint64_t>(N_max, 1u << 20);
            for (std::uint64_t n = 0; n <= scan; ++n) p.eval_integer(n);
            // degree >= 1 with positive leading coefficient grows past the
            // scanned range; eval_integer throws on any negative value
        }
    }

    double amax = 0.0;
    for (const auto& v : a.output) amax = std::max(amax, std::abs(v.approx));
    double fbound = f.sup_norm_bound();

    std::vector<Complex> avals;
    bool table = N_max <= (1ull << 22);
    Automaton pruned = a.pruned();
    if (table) avals = sequence_values(pruned, N_max);

    AverageTrace trace;
    trace.checkpoints = order;
    trace.starts = starts;
    trace.values.assign(starts.size(), std::vector<Complex>(order.size()));
    for (std::size_t xi = 0; xi < starts.size(); ++xi) {
        Kahan re, im;
        std::size_t ci = 0;
        for (std::uint64_t n = 0; n < N_max && ci < order.size(); ++n) {
            while (ci < order.size() && order[ci] == n) {
                Complex v = Complex(re.sum, im.sum) / static_cast<double>(n ? n : 1);
                trace.values[xi][ci] = v;
                ++ci;
            }
            if (ci >= order.size()) break;
            Complex an = table ? avals[n] : pruned.eval(n);
            TorusPoint pt = sys.iterate(starts[xi], p.eval_integer(n));
            Complex term = an * f.eval(pt);
            re.add(term.real());
            im.add(term.imag());
        }
        while (ci < order.size()) {
            std::uint64_t N = order[ci];
            Complex v = Complex(re.sum, im.sum) / static_cast<double>(N);
            if (std::abs(v) > amax * fbound + 1e-9)
                throw AutomatonError("trace value exceeds the analytic bound");
            trace.values[xi][ci] = v;
            ++ci;
        }
    }
    return trace;
}

Complex spectral_oracle(const DynSystem& sys, long m, const Automaton& a,
                        const PhasePolynomial& p, std::uint64_t N,
                        const TorusPoint& x0) {
    if (sys.kind != DynSystem::Kind::Rotation &&
        sys.kind != DynSystem::Kind::RationalRotation)
        throw AutomatonError("spectral oracle requires a rotation system");
    if (m == 0) {
        OutputValue s = partial_sum(a, N);
        return s.approx / static_cast<double>(N);
    }
    double er, ei;
    e_of(mulmod1(static_cast<double>(std::llabs(m)), x0[0]) * (m < 0 ? -1.0 : 1.0),
         er, ei);
    Complex front(er, ei);
    if (p.degree() == 1 && p.coeff[0] == 0.0 &&
        (!p.exact || (*p.exact)[0] == 0)) {
        double c1 = p.coeff[1];
        double beta = mulmod1(static_cast<double>(std::llabs(m)), sys.alpha * c1);
        if (m < 0) beta = frac(-beta);
        return front * exp_sum_interval(a, beta, N).mean;
    }
    // higher degree: modulate the phase polynomial by m alpha
    PhasePolynomial q;
    q.coeff.resize(p.coeff.size());
    for (std::size_t i = 0; i < p.coeff.size(); ++i)
        q.coeff[i] = p.coeff[i] * static_cast<double>(m) * sys.alpha;
    return front * exp_sum_direct(a, q, N).mean;
}

std::vector<TorusPoint> sample_points(int count, int dim, std::uint64_t seed) {
    std::vector<TorusPoint> pts;
    int kron = count / 2;
    const double g1 = 0.61803398874989484820;
    const double g2 = 0.41421356237309504880;
    for (int j = 0; j < kron; ++j)
        pts.push_back({frac((j + 1) * g1), dim > 1 ? frac((j + 1) * g2) : 0.0});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int j = kron; j < count; ++j)
        pts.push_back({unif(rng), dim > 1 ? unif(rng) : 0.0});
    return pts;
}

ConvergenceReport convergence_report(const DynSystem& sys, const Observable& f,
                                     const Automaton& a, const PhasePolynomial& p,
                                     int x_samples, std::uint64_t seed,
                                     const std::vector<std::uint64_t>& schedule) {
    ConvergenceReport rep;
    auto starts = sample_points(x_samples, sys.dim(), seed);
    rep.trace = weighted_average(sys, f, a, p, starts, schedule);
    std::size_t c = rep.trace.checkpoints.size();
    for (std::size_t i = 0; i < c; ++i) {
        rep.sup_abs.push_back(rep.trace.max_abs(i));
        rep.l2.push_back(rep.trace.l2_estimate(i));
    }
    if (c >= 1) {
        // a flat tail is not evidence of convergence; demand genuine decrease
        // over the last recorded steps (or a tail that is already negligible)
        bool decreasing = c >= 2 && rep.l2[c - 1] < 0.99 * rep.l2[c - 2];
        if (c >= 3) decreasing = decreasing && rep.l2[c - 2] < 0.99 * rep.l2[c - 3];
        rep.consistent_with_zero = decreasing || rep.l2[c - 1] < 1e-6;
    }
    return rep;
}

CounterexampleReport counterexample_demo(std::uint64_t N_max) {
    CounterexampleReport rep;
    SequenceHandle seq = make_builtin("log-length");

    for (std::uint64_t N = 2; N <= N_max; N *= 2) rep.checkpoints.push_back(N);
    for (std::uint64_t N : rep.checkpoints) {
        OutputValue s = partial_sum(seq.automaton, N);
        mpq_class mean = s.exact->re / mpq_class(static_cast<unsigned long>(N));
        mean.canonicalize();
        rep.means.push_back(mean);
    }
    rep.halving_exact = true;
    for (std::size_t i = 0; i + 1 < rep.means.size(); ++i) {
        // [2^L, 2^(L+1)) carries value 0 exactly when L is even
        std::uint64_t L = i + 1;  // checkpoints[i] = 2^(L)
        if (L % 2 == 0 && rep.means[i + 1] * 2 != rep.means[i])
            rep.halving_exact = false;
    }
    double lim_hi = 0.0, lim_lo = 1.0;
    std::size_t tail = rep.means.size() > 8 ? rep.means.size() - 8 : 0;
    for (std::size_t i = tail; i < rep.means.size(); ++i) {
        double v = rep.means[i].get_d();
        lim_hi = std::max(lim_hi, v);
        lim_lo = std::min(lim_lo, v);
    }
    rep.limsup_estimate = lim_hi;
    rep.liminf_estimate = lim_lo;

    // convergent coboundary case: f = h - h o T for the character h on an
    // irrational rotation; summation by parts bounds the weighted average by
    // (2 log2 N + 2)/N since the weight changes value only at powers of 2
    DynSystem rot = DynSystem::rotation(0.61803398874989484820);
    TorusPoint x0{0.25, 0.0};
    std::uint64_t cap = std::min<std::uint64_t>(N_max, 1ull << 20);
    rep.coboundary_ok = true;
    Kahan re, im;
    std::uint64_t next = 2;
    std::vector<Complex> avals = sequence_values(seq.automaton, cap);
    for (std::uint64_t n = 0; n < cap; ++n) {
        TorusPoint pn = rot.iterate(x0, n);
        TorusPoint pn1 = rot.iterate(x0, n + 1);
        double er, ei, fr, fi;
        e_of(pn[0], er, ei);
        e_of(pn1[0], fr, fi);
        Complex term = avals[n] * (Complex(er, ei) - Complex(fr, fi));
        re.add(term.real());
        im.add(term.imag());
        if (n + 1 == next) {
            double avg = std::abs(Complex(re.sum, im.sum)) / static_cast<double>(next);
            double bound = (2.0 * std::log2(static_cast<double>(next)) + 2.0) /
                           static_cast<double>(next);
            rep.coboundary_N.push_back(next);
            rep.coboundary_abs.push_back(avg);
            rep.coboundary_bound.push_back(bound);
            if (avg > bound) rep.coboundary_ok = false;
            next *= 2;
        }
    }
    return rep;
}

}  // namespace autoseq
