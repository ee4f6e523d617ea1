#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kgl/matrix2.hpp"
#include "kgl/polynomial.hpp"
#include "kgl/scaled_complex.hpp"

namespace kgl {

// f(z, w) = (alpha z, w z^s + Q(z)) with 0 < |alpha| < 1, s >= 1,
// deg Q <= s, Q(0) = 0. Defined on all of C^2.
struct EnokiGerm {
    std::complex<double> alpha;
    int s = 1;
    Polynomial q;
};

// f(z, w) = (z^p, lambda w z^s + Q(z)) on the unit-disc times C, with
// Q(z) = sum a_m z^m (m = 1..s) + a z^(p s/(p-1)). The low coefficients must
// satisfy gcd{p, m | a_m != 0} = 1, and a may be nonzero only when
// (p-1) | s and lambda = 1.
struct IntermediateGerm {
    int p = 2;
    int s = 1;
    std::complex<double> lambda{1.0, 0.0};
    std::vector<std::complex<double>> low;  // a_1 .. a_s
    std::complex<double> a{0.0, 0.0};

    bool has_exceptional_term() const { return a != std::complex<double>(0.0, 0.0); }
    long long exceptional_exponent() const {
        return static_cast<long long>(p) * s / (p - 1);
    }
    // Low part plus the exceptional term, as one polynomial.
    Polynomial full_q() const;
};

// Word over {S, T} with at least one S; S -> [[0,1],[1,1]], T -> [[1,1],[0,1]].
struct IHWord {
    std::string letters;
};

// Monomial map f(z, w) = (z^a w^b, z^c w^d), exponents from the word matrix.
struct IHGerm {
    IHWord word;
    IntMatrix2 m;
};

using Germ = std::variant<EnokiGerm, IntermediateGerm, IHGerm>;

enum class Family { Enoki, Intermediate, IH };
Family family_of(const Germ& g);
const char* to_string(Family f);

// ---- validation ------------------------------------------------------------

struct ValidationIssue {
    std::string code;    // AlphaOutOfDisc, DegreeTooHigh, GcdCondition, ...
    std::string detail;
};

struct ValidationResult {
    std::optional<Germ> germ;  // present iff issues is empty
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Every violated condition is reported, not just the first.
ValidationResult validate_enoki(std::complex<double> alpha, long long s,
                                std::vector<std::complex<double>> q_coeffs);
ValidationResult validate_intermediate(long long p, long long s,
                                       std::complex<double> lambda,
                                       std::vector<std::complex<double>> low,
                                       std::complex<double> a);
ValidationResult validate_ih(std::string_view word);

// ---- evaluation ------------------------------------------------------------

// Exact substitution into the normal form. The intermediate family throws
// Error("DomainViolation", ...) at |z| >= 1 (strict check, no tolerance).
CPair eval(const Germ& g, const CPair& point);

// Same map in log-polar coordinates; the w-update for the Enoki and
// intermediate families uses rescaled addition.
ScPair eval_scaled(const Germ& g, const ScPair& point);

// Monomial action in log coordinates: log-moduli transform by the exact
// integer matrix, arguments by the matrix mod 2pi. Total (zero coordinates
// absorb through log_mod = -inf).
ScPair eval_log(const IHGerm& g, const ScPair& point);

// trajectory[0] = point, trajectory[k+1] = f(trajectory[k]); n + 1 entries.
// Runs in log-polar coordinates throughout, so deep orbits stay representable.
std::vector<ScPair> iterate(const Germ& g, const ScPair& start, int n);
std::vector<ScPair> iterate(const Germ& g, const CPair& start, int n);

}  // namespace kgl
