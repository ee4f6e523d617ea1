#pragma once

#include <complex>
#include <limits>
#include <utility>

namespace kgl {

// Complex number stored as (log-modulus, argument). log_mod == -inf encodes
// an exact zero, with arg pinned to 0. Multiplication and integer powers act
// directly on the log-modulus, so orbits whose moduli decay like |a|^(n(n-1)/2)
// or r^(p^n) remain representable for any iteration depth.
struct ScaledComplex {
    double log_mod = -std::numeric_limits<double>::infinity();
    double arg = 0.0;

    static ScaledComplex zero() { return {}; }
    static ScaledComplex one() { return {0.0, 0.0}; }
    static ScaledComplex from_complex(std::complex<double> z);
    // Normalizes the argument; a -inf log-modulus collapses to the canonical zero.
    static ScaledComplex make(double log_mod, double arg);

    bool is_zero() const { return log_mod == -std::numeric_limits<double>::infinity(); }
    // exp(log_mod) may flush to 0 or inf outside double range; log-space
    // comparisons should use log_mod directly.
    std::complex<double> to_complex() const;
};

// Reduce an angle into (-pi, pi].
double wrap_angle(double a);

ScaledComplex mul(ScaledComplex x, ScaledComplex y);
ScaledComplex pow_uint(ScaledComplex x, long long n);  // n >= 0

// Rescales both terms to the larger log-modulus before adding. When the gap
// exceeds 745 (where exp underflows past the last denormal) the dominant term
// is returned unchanged, matching what IEEE addition of the rescaled values
// would produce.
ScaledComplex add(ScaledComplex x, ScaledComplex y);

inline ScaledComplex operator*(ScaledComplex x, ScaledComplex y) { return mul(x, y); }
inline ScaledComplex operator+(ScaledComplex x, ScaledComplex y) { return add(x, y); }

using ScPair = std::pair<ScaledComplex, ScaledComplex>;
using CPair = std::pair<std::complex<double>, std::complex<double>>;

inline ScPair to_scaled(const CPair& p) {
    return {ScaledComplex::from_complex(p.first), ScaledComplex::from_complex(p.second)};
}
inline CPair to_complex(const ScPair& p) {
    return {p.first.to_complex(), p.second.to_complex()};
}

}  // namespace kgl
