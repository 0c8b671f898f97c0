#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

namespace autoseq {

using Complex = std::complex<double>;

/// Exact complex number with rational real and imaginary parts.
struct ExactC {
    mpq_class re, im;

    ExactC() : re(0), im(0) {}
    ExactC(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    Complex approx() const { return {re.get_d(), im.get_d()}; }

    friend ExactC operator+(const ExactC& a, const ExactC& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ExactC operator-(const ExactC& a, const ExactC& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ExactC operator*(const ExactC& a, const ExactC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ExactC operator*(const mpq_class& c, const ExactC& a) {
        return {c * a.re, c * a.im};
    }
    friend bool operator==(const ExactC& a, const ExactC& b) {
        return a.re == b.re && a.im == b.im;
    }
    bool is_zero() const { return re == 0 && im == 0; }
};

/// Automaton output value: double approximation, plus the exact rational
/// form when the source data was rational.
struct OutputValue {
    Complex approx{0.0, 0.0};
    std::optional<ExactC> exact;

    OutputValue() = default;
    explicit OutputValue(Complex v) : approx(v) {}
    explicit OutputValue(ExactC v) : approx(v.approx()), exact(std::move(v)) {}
    static OutputValue from_int(long v) {
        return OutputValue(ExactC{mpq_class(v), mpq_class(0)});
    }
    static OutputValue from_rat(const mpq_class& re, const mpq_class& im = 0) {
        return OutputValue(ExactC{re, im});
    }

    bool is_exact() const { return exact.has_value(); }

    friend bool operator==(const OutputValue& a, const OutputValue& b) {
        if (a.exact && b.exact) return *a.exact == *b.exact;
        // bit-exact comparison: constructed automata copy output values around,
        // they never round
        return a.approx.real() == b.approx.real() &&
               a.approx.imag() == b.approx.imag();
    }
};

std::string format_complex(Complex z, int significant_digits = 12);

}  // namespace autoseq
