#include "kgl/scaled_complex.hpp"

#include <cmath>
#include <numbers>

namespace kgl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest exponent gap that still contributes in double addition.
constexpr double kUnderflowGap = 745.0;
}  // namespace

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
    return r;
}

ScaledComplex ScaledComplex::make(double log_mod, double arg) {
    if (log_mod == -kInf) return zero();
    return {log_mod, wrap_angle(arg)};
}

ScaledComplex ScaledComplex::from_complex(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) return zero();
    return make(std::log(std::abs(z)), std::arg(z));
}

std::complex<double> ScaledComplex::to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    return std::polar(std::exp(log_mod), arg);
}

ScaledComplex mul(ScaledComplex x, ScaledComplex y) {
    if (x.is_zero() || y.is_zero()) return ScaledComplex::zero();
    return ScaledComplex::make(x.log_mod + y.log_mod, x.arg + y.arg);
}

ScaledComplex pow_uint(ScaledComplex x, long long n) {
    if (n == 0) return ScaledComplex::one();
    if (x.is_zero()) return ScaledComplex::zero();
    return ScaledComplex::make(static_cast<double>(n) * x.log_mod,
                               static_cast<double>(n) * x.arg);
}

ScaledComplex add(ScaledComplex x, ScaledComplex y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const ScaledComplex& hi = (x.log_mod >= y.log_mod) ? x : y;
    const ScaledComplex& lo = (x.log_mod >= y.log_mod) ? y : x;
    const double gap = lo.log_mod - hi.log_mod;  // <= 0
    if (gap < -kUnderflowGap) return hi;
    // Rotate so the dominant term is the real unit; aligned and antipodal
    // terms then combine on the real axis, and exact cancellation is exact.
    const double delta = wrap_angle(lo.arg - hi.arg);
    std::complex<double> sum;
    if (delta == 0.0)
        sum = {1.0 + std::exp(gap), 0.0};
    else if (delta == std::numbers::pi)
        sum = {1.0 - std::exp(gap), 0.0};
    else
        sum = 1.0 + std::polar(std::exp(gap), delta);
    if (sum == std::complex<double>(0.0, 0.0)) return ScaledComplex::zero();
    return ScaledComplex::make(hi.log_mod + std::log(std::abs(sum)),
                               hi.arg + std::arg(sum));
}

}  // namespace kgl
