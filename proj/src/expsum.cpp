#include "autoseq/expsum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "autoseq/analysis.hpp"
#include "autoseq/constructions.hpp"
#include "autoseq/numutil.hpp"

namespace autoseq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::uint64_t kTableLimit = 1ull << 22;
constexpr std::uint64_t kFftLimit = 1ull << 25;

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

int PhasePolynomial::degree() const {
    int d = 0;
    for (std::size_t i = 1; i < coeff.size(); ++i)
        if (coeff[i] != 0.0 || (exact && (*exact)[i] != 0)) d = static_cast<int>(i);
    return d;
}

double PhasePolynomial::eval_mod1(std::uint64_t n) const {
    double f = 0.0;
    unsigned __int128 pw = 1;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        if (coeff[i] != 0.0) {
            f += mulmod1_big(pw, coeff[i]);
            f -= std::floor(f);
        }
        if (i + 1 < coeff.size()) pw *= n;
    }
    return f;
}

bool PhasePolynomial::integer_coefficients() const {
    if (!exact) {
        for (double c : coeff)
            if (c != std::floor(c)) return false;
        return true;
    }
    for (const auto& c : *exact)
        if (c.get_den() != 1) return false;
    return true;
}

unsigned __int128 PhasePolynomial::eval_integer(std::uint64_t n) const {
    if (!integer_coefficients())
        throw AutomatonError("phase polynomial must have integer coefficients");
    __int128 acc = 0;
    __int128 pw = 1;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        long c = exact ? static_cast<long>((*exact)[i].get_num().get_si())
                       : static_cast<long>(std::llround(coeff[i]));
        acc += static_cast<__int128>(c) * pw;
        pw *= static_cast<__int128>(n);
    }
    if (acc < 0) throw AutomatonError("phase polynomial takes a negative value");
    return static_cast<unsigned __int128>(acc);
}

std::string PhasePolynomial::describe() const {
    std::ostringstream os;
    if (exact && degree() == 1 && (*exact)[0] == 0) {
        os << "rat:" << (*exact)[1].get_str();
        return os.str();
    }
    os << "poly:";
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        if (i) os << ",";
        if (exact)
            os << (*exact)[i].get_str();
        else
            os << coeff[i];
    }
    return os.str();
}

PhasePolynomial PhasePolynomial::linear(double alpha) {
    PhasePolynomial p;
    p.coeff = {0.0, alpha};
    return p;
}

PhasePolynomial PhasePolynomial::rational_linear(const mpq_class& alpha) {
    PhasePolynomial p;
    p.coeff = {0.0, alpha.get_d()};
    p.exact = std::vector<mpq_class>{mpq_class(0), alpha};
    return p;
}

PhasePolynomial PhasePolynomial::from_coeffs(std::vector<double> c) {
    if (c.empty()) c.push_back(0.0);
    PhasePolynomial p;
    p.coeff = std::move(c);
    return p;
}

double parse_real(const std::string& text) {
    if (text == "golden") return 0.61803398874989484820458683436564;
    if (text == "sqrt2") return 0.41421356237309504880168872420970;
    std::size_t pos = 0;
    double v;
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(text.substr(0, slash), &pos);
        double den = std::stod(text.substr(slash + 1));
        if (den == 0) throw AutomatonError("zero denominator in real literal");
        return num / den;
    }
    v = std::stod(text, &pos);
    if (pos != text.size()) throw AutomatonError("bad real literal: " + text);
    return v;
}

PhasePolynomial parse_phase(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw AutomatonError("phase spec must be lin:, poly: or rat:");
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (kind == "lin") return PhasePolynomial::linear(parse_real(rest));
    if (kind == "rat") {
        auto slash = rest.find('/');
        if (slash == std::string::npos) throw AutomatonError("rat: needs p/q");
        mpq_class q(rest);
        q.canonicalize();
        return PhasePolynomial::rational_linear(q);
    }
    if (kind == "poly") {
        std::vector<double> c;
        std::istringstream is(rest);
        std::string tok;
        while (std::getline(is, tok, ',')) c.push_back(parse_real(tok));
        if (c.empty()) throw AutomatonError("poly: needs coefficients");
        return PhasePolynomial::from_coeffs(std::move(c));
    }
    throw AutomatonError("unknown phase spec kind: " + kind);
}

std::vector<Complex> sequence_values(const Automaton& a, std::uint64_t N) {
    if (!a.normalized)
        throw AutomatonError("bulk evaluation requires a normalized automaton");
    if (!a.has_initial() || !a.has_output())
        throw AutomatonError("incomplete automaton");
    Automaton p = a.pruned();
    std::vector<Complex> out(N);
    std::uint64_t span = 1;
    int L = 0;
    while (span < N) {
        span *= static_cast<std::uint64_t>(p.base);
        ++L;
    }
    if (p.num_states() < 65536 && span <= 2 * kTableLimit) {
        std::vector<std::uint16_t> cur{static_cast<std::uint16_t>(p.initial)};
        std::uint64_t size = 1;
        for (int l = 0; l < L; ++l) {
            std::vector<std::uint16_t> next(size * p.base);
            for (std::uint64_t r = 0; r < size; ++r)
                for (int j = 0; j < p.base; ++j)
                    next[r + static_cast<std::uint64_t>(j) * size] =
                        static_cast<std::uint16_t>(p.delta[cur[r]][j]);
            cur = std::move(next);
            size *= p.base;
        }
        for (std::uint64_t n = 0; n < N; ++n) out[n] = p.output[cur[n]].approx;
    } else {
        for (std::uint64_t n = 0; n < N; ++n) out[n] = p.eval(n);
    }
    return out;
}

namespace {

// E_{n<N} values[n] * e(p(n)) with finite-difference phase propagation.
Complex phase_weighted_mean(const std::vector<Complex>& values,
                            const PhasePolynomial& p, std::uint64_t N) {
    int d = p.degree();
    std::vector<double> diff(d + 1);
    auto anchor = [&](std::uint64_t n) {
        // diff[i] = (Delta^i p)(n) mod 1 via binomial alternating sums
        std::vector<double> pv(d + 1);
        for (int j = 0; j <= d; ++j) pv[j] = p.eval_mod1(n + j);
        for (int i = 0; i <= d; ++i) {
            double acc = 0.0;
            long binom = 1;
            for (int j = 0; j <= i; ++j) {
                double term = binom * pv[j];
                acc += ((i - j) % 2 == 0) ? term : -term;
                binom = binom * (i - j) / (j + 1);
            }
            diff[i] = acc - std::floor(acc);
        }
    };
    Kahan re, im;
    for (std::uint64_t n = 0; n < N; ++n) {
        if ((n & 1023) == 0) anchor(n);
        double er, ei;
        e_of(diff[0], er, ei);
        const Complex& v = values[n];
        re.add(v.real() * er - v.imag() * ei);
        im.add(v.real() * ei + v.imag() * er);
        for (int i = 0; i < d; ++i) {
            diff[i] += diff[i + 1];
            diff[i] -= std::floor(diff[i]);
        }
    }
    return Complex(re.sum, im.sum) / static_cast<double>(N);
}

}  // namespace

ExpSumReport exp_sum_direct(const Automaton& a, const PhasePolynomial& p,
                            std::uint64_t N) {
    if (N < 1) throw AutomatonError("N must be >= 1");
    ExpSumReport rep;
    rep.N = N;
    rep.phase = p.describe();
    rep.method = "direct";
    if (p.degree() == 0) {
        // constant phase factors out of the exact partial sum
        OutputValue s = partial_sum(a, N);
        double er, ei;
        e_of(p.coeff.empty() ? 0.0 : p.coeff[0], er, ei);
        rep.mean = s.approx * Complex(er, ei) / static_cast<double>(N);
        rep.err = 1e-14;
        return rep;
    }
    if (N <= kTableLimit) {
        auto values = sequence_values(a, N);
        rep.mean = phase_weighted_mean(values, p, N);
    } else {
        Automaton pr = a.pruned();
        int d = p.degree();
        std::vector<double> diff(d + 1);
        Kahan re, im;
        for (std::uint64_t n = 0; n < N; ++n) {
            if ((n & 1023) == 0) {
                std::vector<double> pv(d + 1);
                for (int j = 0; j <= d; ++j) pv[j] = p.eval_mod1(n + j);
                for (int i = 0; i <= d; ++i) {
                    double acc = 0.0;
                    long binom = 1;
                    for (int j = 0; j <= i; ++j) {
                        double term = binom * pv[j];
                        acc += ((i - j) % 2 == 0) ? term : -term;
                        binom = binom * (i - j) / (j + 1);
                    }
                    diff[i] = acc - std::floor(acc);
                }
            }
            double er, ei;
            e_of(diff[0], er, ei);
            Complex v = pr.eval(n);
            re.add(v.real() * er - v.imag() * ei);
            im.add(v.real() * ei + v.imag() * er);
            for (int i = 0; i < d; ++i) {
                diff[i] += diff[i + 1];
                diff[i] -= std::floor(diff[i]);
            }
        }
        rep.mean = Complex(re.sum, im.sum) / static_cast<double>(N);
    }
    rep.err = 1e-11;
    return rep;
}

ExpSumReport exp_sum_transfer(const Automaton& a, double alpha, int L) {
    if (L < 0) throw AutomatonError("L must be >= 0");
    if (!a.normalized) throw AutomatonError("transfer method requires a normalized automaton");
    Automaton p = a.pruned();
    int n = p.num_states();
    std::vector<Complex> v(n, Complex(0.0, 0.0));
    v[p.initial] = 1.0;
    unsigned __int128 kpow = 1;
    for (int l = 0; l < L; ++l) {
        double beta = mulmod1_big(kpow, alpha);
        std::vector<Complex> phases(p.base);
        for (int j = 0; j < p.base; ++j) {
            double er, ei;
            e_of(j * beta, er, ei);
            phases[j] = Complex(er, ei);
        }
        std::vector<Complex> next(n, Complex(0.0, 0.0));
        for (int s = 0; s < n; ++s) {
            if (v[s] == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < p.base; ++j)
                next[p.delta[s][j]] += v[s] * phases[j];
        }
        v = std::move(next);
        kpow *= static_cast<unsigned>(p.base);
    }
    Complex sum(0.0, 0.0);
    for (int s = 0; s < n; ++s) sum += v[s] * p.output[s].approx;
    ExpSumReport rep;
    rep.N = 1;
    for (int l = 0; l < L; ++l) rep.N *= static_cast<std::uint64_t>(p.base);
    rep.phase = "lin:" + std::to_string(alpha);
    rep.mean = sum / static_cast<double>(rep.N);
    rep.method = "transfer";
    rep.err = 4e-15 * (L + 1) * (n + p.base);
    return rep;
}

ExpSumReport exp_sum_interval(const Automaton& a, double alpha, std::uint64_t N) {
    if (N < 1) throw AutomatonError("N must be >= 1");
    if (!a.normalized) throw AutomatonError("interval method requires a normalized automaton");
    Automaton p = a.pruned();
    int n = p.num_states();
    std::vector<int> d = digits_lsd(N, p.base);
    int L = static_cast<int>(d.size());
    // W[l][s] = sum over words w of length l from the initial state reaching
    // s of e([w] alpha)
    std::vector<std::vector<Complex>> W(L);
    W[0].assign(n, Complex(0.0, 0.0));
    W[0][p.initial] = 1.0;
    unsigned __int128 kpow = 1;
    for (int l = 0; l + 1 < L; ++l) {
        double beta = mulmod1_big(kpow, alpha);
        std::vector<Complex> phases(p.base);
        for (int j = 0; j < p.base; ++j) {
            double er, ei;
            e_of(j * beta, er, ei);
            phases[j] = Complex(er, ei);
        }
        W[l + 1].assign(n, Complex(0.0, 0.0));
        for (int s = 0; s < n; ++s) {
            if (W[l][s] == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < p.base; ++j)
                W[l + 1][p.delta[s][j]] += W[l][s] * phases[j];
        }
        kpow *= static_cast<unsigned>(p.base);
    }
    Kahan re, im;
    std::uint64_t hi = 0;
    unsigned __int128 kpow_i = 1;
    for (int l = 0; l < L; ++l) kpow_i *= static_cast<unsigned>(p.base);
    for (int i = L - 1; i >= 0; --i) {
        kpow_i /= static_cast<unsigned>(p.base);  // base^i
        for (int j = 0; j < d[i]; ++j) {
            std::uint64_t m = hi * static_cast<std::uint64_t>(p.base) +
                              static_cast<std::uint64_t>(j);
            std::vector<int> md = digits_lsd(m, p.base);
            double shift = mulmod1_big(static_cast<unsigned __int128>(m) * kpow_i, alpha);
            double er, ei;
            e_of(shift, er, ei);
            Complex block(0.0, 0.0);
            for (int s = 0; s < n; ++s) {
                if (W[i][s] == Complex(0.0, 0.0)) continue;
                block += W[i][s] * p.output[p.run(s, md)].approx;
            }
            block *= Complex(er, ei);
            re.add(block.real());
            im.add(block.imag());
        }
        hi = hi * static_cast<std::uint64_t>(p.base) + static_cast<std::uint64_t>(d[i]);
    }
    ExpSumReport rep;
    rep.N = N;
    rep.phase = "lin:" + std::to_string(alpha);
    rep.mean = Complex(re.sum, im.sum) / static_cast<double>(N);
    rep.method = "interval";
    rep.err = 1e-11;
    return rep;
}

SupResult sup_linear(const Automaton& a, std::uint64_t N, double target_error) {
    if (N < 2) throw AutomatonError("N must be >= 2");
    if (target_error <= 0) throw AutomatonError("target error must be positive");
    double needed = M_PI * static_cast<double>(N) / target_error;
    std::uint64_t M = 1;
    while (M < 4 * N || static_cast<double>(M) < needed) M <<= 1;
    if (M > kFftLimit) {
        std::ostringstream os;
        os << "target error requires a frequency grid of " << M
           << " points, beyond the memory budget (max " << kFftLimit
           << "); increase target_error";
        throw AutomatonError(os.str());
    }

    auto values = sequence_values(a, N);
    fftw_complex* buf = fftw_alloc_complex(M);
    for (std::uint64_t i = 0; i < M; ++i) buf[i][0] = buf[i][1] = 0.0;
    for (std::uint64_t n = 0; n < N; ++n) {
        buf[n][0] = values[n].real();
        buf[n][1] = values[n].imag();
    }
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(M), buf, buf,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    double grid_max = 0.0;
    std::vector<std::pair<double, std::uint64_t>> bins;
    bins.reserve(M / 64 + 16);
    for (std::uint64_t j = 0; j < M; ++j) {
        double mag = std::hypot(buf[j][0], buf[j][1]);
        if (mag > grid_max) grid_max = mag;
    }
    for (std::uint64_t j = 0; j < M; ++j) {
        double mag = std::hypot(buf[j][0], buf[j][1]);
        if (mag >= 0.7 * grid_max) bins.emplace_back(mag, j);
    }
    fftw_free(buf);
    std::sort(bins.begin(), bins.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    if (bins.size() > 64) bins.resize(64);

    auto eval_abs = [&](double alpha) {
        return std::abs(exp_sum_interval(a, alpha, N).mean);
    };

    double best_val = grid_max / static_cast<double>(N);
    double best_alpha = static_cast<double>(bins.empty() ? 0 : bins[0].second) /
                        static_cast<double>(M);
    const double inv_phi = 0.61803398874989484820;
    for (const auto& [mag, j] : bins) {
        double lo = (static_cast<double>(j) - 1.0) / static_cast<double>(M);
        double hi = (static_cast<double>(j) + 1.0) / static_cast<double>(M);
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = eval_abs(x1), f2 = eval_abs(x2);
        for (int it = 0; it < 48; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = eval_abs(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = eval_abs(x1);
            }
        }
        double val = std::max(f1, f2);
        double alpha = (f1 >= f2 ? x1 : x2);
        alpha -= std::floor(alpha);
        if (val > best_val + 1e-15 ||
            (val > best_val - 1e-15 && alpha < best_alpha)) {
            best_val = std::max(val, best_val);
            best_alpha = alpha;
        }
    }

    SupResult res;
    res.alpha = best_alpha;
    res.value = best_val;
    res.err = M_PI * static_cast<double>(N) / static_cast<double>(M);
    res.grid = M;
    return res;
}

double tm_product_oracle(double alpha, int L) {
    double prod = 1.0;
    for (int l = 0; l < L; ++l) {
        double beta = mulmod1(static_cast<double>(1ull << l), alpha);
        prod *= std::abs(std::sin(M_PI * beta));
    }
    return prod;
}

ArcClassification classify_arc(double alpha, std::uint64_t N, double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw AutomatonError("delta must lie in (0, 1/2)");
    ArcClassification arc;
    arc.alpha = alpha;
    arc.N = N;
    arc.delta = delta;

    // continued-fraction convergents of alpha
    double x = alpha;
    long p0 = 1, q0 = 0;
    long p1 = static_cast<long>(std::floor(x));
    long q1 = 1;
    arc.convergents.emplace_back(p1, q1);
    double frac = x - std::floor(x);
    double tol = std::pow(delta, kArcExponent) / static_cast<double>(N);
    for (int it = 0; it < 48 && frac > 1e-15 && q1 < 2000000000L; ++it) {
        x = 1.0 / frac;
        long ai = static_cast<long>(std::floor(x));
        frac = x - std::floor(x);
        long p2 = ai * p1 + p0;
        long q2 = ai * q1 + q0;
        if (q2 < q1) break;  // overflow guard
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        arc.convergents.emplace_back(p1, q1);
    }
    for (const auto& [pc, qc] : arc.convergents) {
        if (qc < 1 || static_cast<double>(qc) > 1.0 / delta) continue;
        double dist = std::abs(alpha - static_cast<double>(pc) / static_cast<double>(qc));
        if (dist < tol) {
            arc.rational = true;
            arc.p = pc;
            arc.q = qc;
            arc.distance = dist;
            return arc;
        }
    }

    // empirical equidistribution against bucket-aligned intervals
    std::uint64_t sample = std::min<std::uint64_t>(N, 1ull << 22);
    int buckets = std::clamp(static_cast<int>(std::ceil(8.0 / delta)), 16, 4096);
    std::vector<std::uint64_t> hist(buckets, 0);
    for (std::uint64_t n = 0; n < sample; ++n) {
        double f = mulmod1(static_cast<double>(n), alpha);
        int b = std::min(buckets - 1, static_cast<int>(f * buckets));
        ++hist[b];
    }
    double hi = 0.0, lo = 0.0, acc = 0.0;
    double dmax = 0.0;
    for (int b = 0; b < buckets; ++b) {
        acc += static_cast<double>(hist[b]) / static_cast<double>(sample) -
               1.0 / buckets;
        hi = std::max(hi, acc);
        lo = std::min(lo, acc);
        dmax = std::max(dmax, hi - lo);
    }
    arc.discrepancy = dmax;
    arc.rational = false;
    return arc;
}

PartitionBoundResult partition_bound_check(double alpha, std::uint64_t N,
                                           const std::vector<int>& labels) {
    if (labels.size() < N) throw AutomatonError("partition labels shorter than N");
    int r = 0;
    for (std::uint64_t n = 0; n < N; ++n) r = std::max(r, labels[n] + 1);
    if (r < 1) throw AutomatonError("empty partition");
    double delta = 1.0 / (100.0 * r * r);
    ArcClassification arc = classify_arc(alpha, N, std::min(delta, 0.49));
    if (arc.rational || arc.discrepancy > delta)
        throw AutomatonError(
            "hypothesis not satisfied: (n alpha mod 1) is not 1/(100 r^2)-"
            "equidistributed at this scale");
    std::vector<Kahan> sr(r), si(r);
    std::vector<std::uint64_t> cnt(r, 0);
    for (std::uint64_t n = 0; n < N; ++n) {
        double er, ei;
        e_of(mulmod1(static_cast<double>(n), alpha), er, ei);
        sr[labels[n]].add(er);
        si[labels[n]].add(ei);
        ++cnt[labels[n]];
    }
    PartitionBoundResult res;
    res.parts = r;
    for (int i = 0; i < r; ++i)
        res.lhs += std::hypot(sr[i].sum, si[i].sum) / static_cast<double>(N);
    res.bound = 1.0 - 1.0 / (6.0 * r * r);
    res.margin = res.bound - res.lhs;
    res.holds = res.lhs <= res.bound;
    return res;
}

VdcResult vdc_check(const std::vector<Complex>& x, int H, std::uint64_t N) {
    if (H < 1 || static_cast<std::uint64_t>(H) >= N)
        throw AutomatonError("need 1 <= H < N");
    if (x.size() < N + static_cast<std::uint64_t>(H))
        throw AutomatonError("sequence must have length at least N + H");
    Kahan re, im;
    for (std::uint64_t n = 0; n < N; ++n) {
        re.add(x[n].real());
        im.add(x[n].imag());
    }
    VdcResult res;
    double mr = re.sum / static_cast<double>(N);
    double mi = im.sum / static_cast<double>(N);
    res.lhs = mr * mr + mi * mi;
    double acc = 0.0;
    for (int h = 0; h < H; ++h) {
        Kahan cr, ci;
        for (std::uint64_t n = 0; n < N; ++n) {
            Complex v = x[n + h] * std::conj(x[n]);
            cr.add(v.real());
            ci.add(v.imag());
        }
        acc += std::hypot(cr.sum, ci.sum) / static_cast<double>(N);
    }
    res.rhs = acc / H + kVdcConstant * static_cast<double>(H) / static_cast<double>(N);
    res.holds = res.lhs <= res.rhs;
    return res;
}

namespace {

// Exact evaluation for a fully rational phase with common denominator q:
// split [0, N) into the arithmetic progressions mod q and use exact partial
// sums of the restricted sequences.
Complex rational_phase_mean(const Automaton& a, const PhasePolynomial& p,
                            std::uint64_t N, long q) {
    Complex acc(0.0, 0.0);
    for (long r = 0; r < q; ++r) {
        std::uint64_t cnt = (N > static_cast<std::uint64_t>(r))
                                ? (N - r + q - 1) / q
                                : 0;
        if (cnt == 0) continue;
        Automaton restr = restrict_ap(a.pruned(), q, r);
        OutputValue s = partial_sum(restr, cnt);
        double er, ei;
        e_of(p.eval_mod1(static_cast<std::uint64_t>(r)), er, ei);
        acc += s.approx * Complex(er, ei);
    }
    return acc / static_cast<double>(N);
}

}  // namespace

std::vector<ExpSumReport> poly_sup_sample(const Automaton& a, int d,
                                          std::uint64_t N, const PolySupSpec& spec) {
    if (d < 1) throw AutomatonError("degree must be >= 1");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<PhasePolynomial> phases;
    for (int i = 0; i < spec.random_count; ++i) {
        std::vector<double> c(d + 1);
        for (double& v : c) v = unif(rng);
        phases.push_back(PhasePolynomial::from_coeffs(std::move(c)));
    }
    std::uniform_int_distribution<long> den(1, spec.max_denominator);
    for (int i = 0; i < spec.rational_count; ++i) {
        long q = den(rng);
        std::vector<mpq_class> ex(d + 1);
        std::vector<double> c(d + 1);
        for (int t = 0; t <= d; ++t) {
            long num = static_cast<long>(rng() % static_cast<std::uint64_t>(q));
            ex[t] = mpq_class(num, q);
            ex[t].canonicalize();
            c[t] = ex[t].get_d();
        }
        PhasePolynomial p;
        p.coeff = std::move(c);
        p.exact = std::move(ex);
        phases.push_back(std::move(p));
    }
    for (int i = 0; i < spec.near_rational_count; ++i) {
        long q = den(rng);
        std::vector<double> c(d + 1);
        for (int t = 0; t <= d; ++t) {
            long num = static_cast<long>(rng() % static_cast<std::uint64_t>(q));
            c[t] = static_cast<double>(num) / static_cast<double>(q) +
                   1e-7 * (unif(rng) - 0.5);
        }
        phases.push_back(PhasePolynomial::from_coeffs(std::move(c)));
    }

    std::vector<Complex> values;
    if (N <= kTableLimit) values = sequence_values(a, N);

    std::vector<ExpSumReport> reports;
    reports.reserve(phases.size());
    for (const auto& p : phases) {
        ExpSumReport rep;
        rep.N = N;
        rep.phase = p.describe();
        if (p.is_exact()) {
            mpz_class qz = 1;
            for (const auto& c : *p.exact) qz = lcm(qz, c.get_den());
            long q = static_cast<long>(qz.get_si());
            rep.mean = rational_phase_mean(a, p, N, q);
            rep.method = "interval";
            rep.err = 1e-13;
        } else if (!values.empty()) {
            rep.mean = phase_weighted_mean(values, p, N);
            rep.method = "direct";
            rep.err = 1e-11;
        } else {
            rep = exp_sum_direct(a, p, N);
        }
        reports.push_back(std::move(rep));
    }
    std::stable_sort(reports.begin(), reports.end(),
                     [](const ExpSumReport& x, const ExpSumReport& y) {
                         return std::abs(x.mean) > std::abs(y.mean);
                     });
    return reports;
}

}  // namespace autoseq
