#include "kgl/matrix2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgl/error.hpp"

namespace kgl {

namespace {

const IntMatrix2 kS{0, 1, 1, 1};
const IntMatrix2 kT{1, 1, 0, 1};
const IntMatrix2 kListed1{0, 1, 1, 1};
const IntMatrix2 kListed2{0, 1, 1, 2};

std::int64_t checked_entry(unsigned __int128 v) {
    if (v > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
        throw Error("Overflow", "matrix entry exceeds 63-bit range");
    return static_cast<std::int64_t>(v);
}

}  // namespace

IntMatrix2 mul(IntMatrix2 x, IntMatrix2 y) {
    // Entries are nonnegative, so products accumulate without cancellation.
    auto u = [](std::int64_t v) { return static_cast<unsigned __int128>(v); };
    return {checked_entry(u(x.a) * u(y.a) + u(x.b) * u(y.c)),
            checked_entry(u(x.a) * u(y.b) + u(x.b) * u(y.d)),
            checked_entry(u(x.c) * u(y.a) + u(x.d) * u(y.c)),
            checked_entry(u(x.c) * u(y.b) + u(x.d) * u(y.d))};
}

IntMatrix2 matrix_power(IntMatrix2 m, int n) {
    IntMatrix2 acc{};
    for (int k = 0; k < n; ++k) acc = mul(acc, m);
    return acc;
}

IntMatrix2 word_to_matrix(std::string_view word) {
    if (word.empty()) throw Error("InvalidParameter", "empty word");
    IntMatrix2 acc{};
    for (char letter : word) {
        switch (letter) {
            case 'S': acc = mul(acc, kS); break;
            case 'T': acc = mul(acc, kT); break;
            default:
                throw Error("InvalidParameter",
                            std::string("word letter must be S or T, got '") + letter + "'");
        }
    }
    return acc;
}

bool is_perfect_square(std::int64_t v) {
    if (v < 0) return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    // sqrt rounds; settle the root exactly before squaring back. Widened
    // arithmetic keeps (r+1)^2 from overflowing near the int64 edge.
    using W = __int128;
    while (r > 0 && W(r) * r > v) --r;
    while (W(r + 1) * (r + 1) <= v) ++r;
    return W(r) * r == v;
}

EigenData eigen_data(IntMatrix2 m) {
    EigenData ed;
    ed.det = m.det();
    const std::int64_t tr = m.trace();
    const __int128 disc_wide = static_cast<__int128>(tr) * tr - 4 * ed.det;
    if (disc_wide > std::numeric_limits<std::int64_t>::max())
        throw Error("Overflow", "trace^2 - 4 det exceeds 63-bit range");
    ed.disc = static_cast<std::int64_t>(disc_wide);
    if (ed.disc <= 0)
        throw Error("DegenerateSpectrum", "trace^2 - 4 det is not positive");
    if (is_perfect_square(ed.disc))
        throw Error("DegenerateSpectrum", "rational spectrum: disc is a perfect square");
    const double root = std::sqrt(static_cast<double>(ed.disc));
    ed.lambda1 = 0.5 * (static_cast<double>(tr) + root);
    // Stable against cancellation when |lambda2| << lambda1.
    ed.lambda2 = static_cast<double>(ed.det) / ed.lambda1;
    // A^t (1, beta)^t = lambda (1, beta)^t with first row (a, c):
    // beta = (lambda - a)/c. Valid words have c >= 1, since c = 0 would make
    // the spectrum integral.
    if (m.c == 0)
        throw Error("DegenerateSpectrum", "lower-left entry is zero");
    ed.beta1 = (ed.lambda1 - static_cast<double>(m.a)) / static_cast<double>(m.c);
    ed.beta2 = (ed.lambda2 - static_cast<double>(m.a)) / static_cast<double>(m.c);
    return ed;
}

const char* to_string(TraceClass c) {
    switch (c) {
        case TraceClass::StrictlyExpanding: return "StrictlyExpanding";
        case TraceClass::ListedException: return "ListedException";
        case TraceClass::CyclicException: return "CyclicException";
    }
    return "?";
}

TraceClass trace_dichotomy(std::string_view word) {
    const IntMatrix2 m = word_to_matrix(word);
    if (m.trace() > 2) return TraceClass::StrictlyExpanding;
    if (m == kListed1 || m == kListed2) return TraceClass::ListedException;
    // The trace is invariant under cyclic rotation of the word, and every
    // valid word with trace <= 2 is a rotation of "S" or "ST".
    std::string rotated(word);
    for (std::size_t k = 1; k < rotated.size(); ++k) {
        std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
        const IntMatrix2 r = word_to_matrix(rotated);
        if (r == kListed1 || r == kListed2) return TraceClass::CyclicException;
    }
    throw Error("DegenerateSpectrum",
                "trace <= 2 word is not cyclically equivalent to a listed exception");
}

double phi(const EigenData& ed, int index, std::complex<double> z, std::complex<double> w) {
    if (z == std::complex<double>(0.0, 0.0) || w == std::complex<double>(0.0, 0.0))
        throw Error("ZeroCoordinate", "phi needs both coordinates nonzero; use the log path");
    return phi_log(ed, index, to_scaled({z, w}));
}

double phi_log(const EigenData& ed, int index, const ScPair& p) {
    const double beta = (index == 1) ? ed.beta1 : ed.beta2;
    const double lz = p.first.log_mod;
    const double lw = p.second.log_mod;
    // alpha = 1 > 0; a zero coordinate contributes -inf or +inf by the sign
    // of its coefficient.
    const double term_z = lz;
    const double term_w = std::isinf(lw) ? (beta > 0 ? lw : -lw) : beta * lw;
    return term_z + term_w;
}

}  // namespace kgl
