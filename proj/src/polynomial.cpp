#include "kgl/polynomial.hpp"

namespace kgl {

int Polynomial::degree() const {
    for (int k = static_cast<int>(coeffs.size()); k > 0; --k) {
        if (coeffs[k - 1] != std::complex<double>(0.0, 0.0)) return k;
    }
    return 0;
}

std::complex<double> Polynomial::eval(std::complex<double> z) const {
    return z * eval_over_z(z);
}

std::complex<double> Polynomial::eval_over_z(std::complex<double> z) const {
    // Horner on c_1 + c_2 z + ... + c_d z^(d-1).
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ScaledComplex Polynomial::eval_scaled(ScaledComplex z) const {
    ScaledComplex acc = ScaledComplex::zero();
    ScaledComplex zpow = ScaledComplex::one();
    for (const auto& c : coeffs) {
        zpow = mul(zpow, z);
        if (c == std::complex<double>(0.0, 0.0)) continue;
        acc = add(acc, mul(ScaledComplex::from_complex(c), zpow));
    }
    return acc;
}

}  // namespace kgl
