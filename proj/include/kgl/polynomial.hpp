#pragma once

#include <complex>
#include <vector>

#include "kgl/scaled_complex.hpp"

namespace kgl {

// Polynomial with no constant term: Q(z) = c_1 z + c_2 z^2 + ... + c_d z^d.
// coeffs[k] multiplies z^(k+1); trailing zeros are permitted.
struct Polynomial {
    std::vector<std::complex<double>> coeffs;

    // Highest power with a nonzero coefficient; 0 for the zero polynomial.
    int degree() const;
    bool is_zero() const { return degree() == 0; }

    std::complex<double> eval(std::complex<double> z) const;
    // Term-by-term evaluation with rescaled addition; safe for extreme |z|.
    ScaledComplex eval_scaled(ScaledComplex z) const;
    // Q(z)/z as a polynomial in z (well defined since Q(0) = 0).
    std::complex<double> eval_over_z(std::complex<double> z) const;
};

}  // namespace kgl
