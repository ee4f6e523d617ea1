#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "kgl/scaled_complex.hpp"

namespace kgl {

// 2x2 integer matrix [[a, b], [c, d]] with nonnegative entries; products of
// the two generator matrices S = [[0,1],[1,1]] and T = [[1,1],[0,1]].
struct IntMatrix2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t trace() const { return a + d; }
    std::int64_t det() const { return a * d - b * c; }
    bool operator==(const IntMatrix2&) const = default;
};

// Exact integer product; throws Error("Overflow", ...) past the 63-bit range.
IntMatrix2 mul(IntMatrix2 x, IntMatrix2 y);
IntMatrix2 matrix_power(IntMatrix2 m, int n);

// Left-to-right product of the letter matrices: A = M(w[0]) * M(w[1]) * ...
// Letters outside {S, T} are rejected.
IntMatrix2 word_to_matrix(std::string_view word);

bool is_perfect_square(std::int64_t v);

// Spectral data of A^t for a word matrix A. Eigenvectors are normalized to
// first component 1, which forces beta1 > 0 and beta2 < 0 whenever the word
// is valid (disc a positive non-square).
struct EigenData {
    double lambda1 = 0;  // > 1
    double lambda2 = 0;
    double beta1 = 0;    // v1 = (1, beta1), A^t v1 = lambda1 v1
    double beta2 = 0;    // v2 = (1, beta2), A^t v2 = lambda2 v2
    std::int64_t det = 0;
    std::int64_t disc = 0;  // trace^2 - 4 det

    std::pair<double, double> v1() const { return {1.0, beta1}; }
    std::pair<double, double> v2() const { return {1.0, beta2}; }
};

// lambda1 = (tr + sqrt(disc))/2, lambda2 = det/lambda1. Throws
// Error("DegenerateSpectrum", ...) when disc <= 0 or disc is a perfect
// square; neither occurs for matrices of valid words.
EigenData eigen_data(IntMatrix2 m);

enum class TraceClass { StrictlyExpanding, ListedException, CyclicException };
const char* to_string(TraceClass c);

// trace > 2 => StrictlyExpanding. The two small exceptions [[0,1],[1,1]] and
// [[0,1],[1,2]] are reported as ListedException; any other trace <= 2 matrix
// is a cyclic rotation of an exception word and is reported as such.
TraceClass trace_dichotomy(std::string_view word);

// phi_i(z, w) = alpha_i log|z| + beta_i log|w| with alpha_i = 1.
// The complex-argument overload throws Error("ZeroCoordinate", ...) at exact
// zeros; the log-space overload returns +-inf by sign instead.
double phi(const EigenData& ed, int index, std::complex<double> z, std::complex<double> w);
double phi_log(const EigenData& ed, int index, const ScPair& p);

}  // namespace kgl
