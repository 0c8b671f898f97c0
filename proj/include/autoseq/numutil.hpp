#pragma once

#include <cmath>
#include <cstdint>

namespace autoseq {

/// m * a mod 1 with full double precision for integer m < 2^53: the exact
/// product is split into hi + lo via fma, the integer part of hi is dropped
/// exactly, and lo re-enters below the rounding boundary.
inline double mulmod1(double m, double a) {
    double hi = m * a;
    double lo = std::fma(m, a, -hi);
    double f = hi - std::floor(hi) + lo;
    f -= std::floor(f);
    return f;
}

/// m * a mod 1 for arbitrarily large unsigned integers, by 32-bit limbs:
/// m = sum c_i 2^(32 i), and (2^32)^i * a mod 1 is tracked exactly-scaled.
inline double mulmod1_big(unsigned __int128 m, double a) {
    double f = 0.0;
    double base = a - std::floor(a);
    while (m != 0) {
        std::uint64_t limb = static_cast<std::uint64_t>(m & 0xffffffffu);
        if (limb != 0) {
            f += mulmod1(static_cast<double>(limb), base);
            f -= std::floor(f);
        }
        m >>= 32;
        // scaling by 2^32 is exact; the fractional part is then exact too
        double scaled = base * 4294967296.0;
        base = scaled - std::floor(scaled);
    }
    return f;
}

/// e(x) = exp(2 pi i x) on the fractional part of x.
inline void e_of(double x, double& re, double& im) {
    double f = x - std::floor(x);
    double t = 6.283185307179586476925286766559 * f;
    re = std::cos(t);
    im = std::sin(t);
}

}  // namespace autoseq
