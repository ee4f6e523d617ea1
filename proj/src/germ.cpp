#include "kgl/germ.hpp"

#include <cmath>
#include <numeric>

#include "kgl/error.hpp"

namespace kgl {

namespace {

bool finite(std::complex<double> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(std::vector<ValidationIssue>& issues, std::complex<double> z,
                    const char* name) {
    if (!finite(z))
        issues.push_back({"InvalidParameter", std::string(name) + " is not finite"});
}

}  // namespace

Polynomial IntermediateGerm::full_q() const {
    Polynomial q;
    q.coeffs = low;
    if (has_exceptional_term()) {
        const auto e = static_cast<std::size_t>(exceptional_exponent());
        if (q.coeffs.size() < e) q.coeffs.resize(e, {0.0, 0.0});
        q.coeffs[e - 1] += a;
    }
    return q;
}

Family family_of(const Germ& g) {
    if (std::holds_alternative<EnokiGerm>(g)) return Family::Enoki;
    if (std::holds_alternative<IntermediateGerm>(g)) return Family::Intermediate;
    return Family::IH;
}

const char* to_string(Family f) {
    switch (f) {
        case Family::Enoki: return "enoki";
        case Family::Intermediate: return "intermediate";
        case Family::IH: return "ih";
    }
    return "?";
}

ValidationResult validate_enoki(std::complex<double> alpha, long long s,
                                std::vector<std::complex<double>> q_coeffs) {
    ValidationResult r;
    require_finite(r.issues, alpha, "alpha");
    for (const auto& c : q_coeffs) require_finite(r.issues, c, "Q coefficient");
    const double mod = std::abs(alpha);
    if (!(mod > 0.0 && mod < 1.0))
        r.issues.push_back({"AlphaOutOfDisc", "|alpha| must lie in (0, 1)"});
    if (s < 1) r.issues.push_back({"InvalidParameter", "s must be >= 1"});
    Polynomial q{std::move(q_coeffs)};
    if (s >= 1 && q.degree() > s)
        r.issues.push_back({"DegreeTooHigh", "deg Q exceeds s"});
    if (r.ok()) r.germ = EnokiGerm{alpha, static_cast<int>(s), std::move(q)};
    return r;
}

ValidationResult validate_intermediate(long long p, long long s,
                                       std::complex<double> lambda,
                                       std::vector<std::complex<double>> low,
                                       std::complex<double> a) {
    ValidationResult r;
    require_finite(r.issues, lambda, "lambda");
    require_finite(r.issues, a, "a");
    for (const auto& c : low) require_finite(r.issues, c, "low coefficient");
    if (p < 2) r.issues.push_back({"InvalidParameter", "p must be >= 2"});
    if (s < 1) r.issues.push_back({"InvalidParameter", "s must be >= 1"});
    if (lambda == std::complex<double>(0.0, 0.0))
        r.issues.push_back({"InvalidParameter", "lambda must be nonzero"});
    if (s >= 1 && static_cast<long long>(low.size()) > s)
        r.issues.push_back({"DegreeTooHigh", "more than s low coefficients"});
    // The gcd and a-term conditions are only meaningful once p, s and the
    // coefficient layout make sense.
    if (p < 2 || s < 1 || static_cast<long long>(low.size()) > s) return r;

    low.resize(static_cast<std::size_t>(s), {0.0, 0.0});
    long long g = p;
    for (long long m = 1; m <= s; ++m) {
        if (low[static_cast<std::size_t>(m - 1)] != std::complex<double>(0.0, 0.0))
            g = std::gcd(g, m);
    }
    if (g != 1)
        r.issues.push_back({"GcdCondition",
                            "gcd{p, m | a_m != 0} = " + std::to_string(g) + ", expected 1"});
    if (a != std::complex<double>(0.0, 0.0)) {
        if (s % (p - 1) != 0 || lambda != std::complex<double>(1.0, 0.0))
            r.issues.push_back({"ForbiddenA",
                                "a != 0 requires (p-1) | s and lambda = 1"});
        if ((p * s) % (p - 1) != 0)
            r.issues.push_back({"NonIntegerExponent", "p s/(p-1) is not an integer"});
    }
    if (r.ok())
        r.germ = IntermediateGerm{static_cast<int>(p), static_cast<int>(s), lambda,
                                  std::move(low), a};
    return r;
}

ValidationResult validate_ih(std::string_view word) {
    ValidationResult r;
    if (word.empty()) {
        r.issues.push_back({"InvalidParameter", "word must be nonempty"});
        return r;
    }
    bool has_s = false;
    for (char letter : word) {
        if (letter == 'S') has_s = true;
        else if (letter != 'T') {
            r.issues.push_back({"InvalidParameter",
                                std::string("word letter must be S or T, got '") + letter + "'"});
            return r;
        }
    }
    if (!has_s) r.issues.push_back({"NoSFactor", "word has no S letter"});
    if (!r.ok()) return r;
    IntMatrix2 m;
    try {
        m = word_to_matrix(word);
    } catch (const Error& e) {
        r.issues.push_back({e.code(), e.what()});
        return r;
    }
    const auto det = m.det();
    if (det != 1 && det != -1)
        r.issues.push_back({"InvalidParameter", "matrix determinant is not +-1"});
    if (r.ok()) r.germ = IHGerm{IHWord{std::string(word)}, m};
    return r;
}

// ---- evaluation ------------------------------------------------------------

namespace {

std::complex<double> ipow(std::complex<double> z, std::int64_t n) {
    std::complex<double> acc(1.0, 0.0);
    for (std::int64_t k = 0; k < n; ++k) acc *= z;
    return acc;
}

CPair eval_enoki(const EnokiGerm& g, const CPair& pt) {
    const auto& [z, w] = pt;
    return {g.alpha * z, w * ipow(z, g.s) + g.q.eval(z)};
}

CPair eval_intermediate(const IntermediateGerm& g, const CPair& pt) {
    const auto& [z, w] = pt;
    if (!(std::abs(z) < 1.0))
        throw Error("DomainViolation", "intermediate germ requires |z| < 1");
    return {ipow(z, g.p), g.lambda * w * ipow(z, g.s) + g.full_q().eval(z)};
}

CPair eval_ih(const IHGerm& g, const CPair& pt) {
    const auto& [z, w] = pt;
    return {ipow(z, g.m.a) * ipow(w, g.m.b), ipow(z, g.m.c) * ipow(w, g.m.d)};
}

ScPair eval_scaled_enoki(const EnokiGerm& g, const ScPair& pt) {
    const auto& [z, w] = pt;
    const ScaledComplex zs = mul(ScaledComplex::from_complex(g.alpha), z);
    const ScaledComplex ws = add(mul(w, pow_uint(z, g.s)), g.q.eval_scaled(z));
    return {zs, ws};
}

ScPair eval_scaled_intermediate(const IntermediateGerm& g, const ScPair& pt) {
    const auto& [z, w] = pt;
    if (!(z.log_mod < 0.0))
        throw Error("DomainViolation", "intermediate germ requires |z| < 1");
    const ScaledComplex zs = pow_uint(z, g.p);
    const ScaledComplex lam = ScaledComplex::from_complex(g.lambda);
    const ScaledComplex ws =
        add(mul(lam, mul(w, pow_uint(z, g.s))), g.full_q().eval_scaled(z));
    return {zs, ws};
}

}  // namespace

ScPair eval_log(const IHGerm& g, const ScPair& pt) {
    const auto& [z, w] = pt;
    // 0 * (-inf) must drop out: a zero exponent means the coordinate does not
    // participate.
    auto combine = [](std::int64_t kz, const ScaledComplex& x, std::int64_t kw,
                      const ScaledComplex& y) {
        double lm = 0.0, ar = 0.0;
        if (kz != 0) {
            lm += static_cast<double>(kz) * x.log_mod;
            ar += static_cast<double>(kz) * x.arg;
        }
        if (kw != 0) {
            lm += static_cast<double>(kw) * y.log_mod;
            ar += static_cast<double>(kw) * y.arg;
        }
        return ScaledComplex::make(lm, ar);
    };
    return {combine(g.m.a, z, g.m.b, w), combine(g.m.c, z, g.m.d, w)};
}

CPair eval(const Germ& g, const CPair& point) {
    return std::visit(
        [&](const auto& germ) -> CPair {
            using T = std::decay_t<decltype(germ)>;
            if constexpr (std::is_same_v<T, EnokiGerm>) return eval_enoki(germ, point);
            else if constexpr (std::is_same_v<T, IntermediateGerm>)
                return eval_intermediate(germ, point);
            else return eval_ih(germ, point);
        },
        g);
}

ScPair eval_scaled(const Germ& g, const ScPair& point) {
    return std::visit(
        [&](const auto& germ) -> ScPair {
            using T = std::decay_t<decltype(germ)>;
            if constexpr (std::is_same_v<T, EnokiGerm>)
                return eval_scaled_enoki(germ, point);
            else if constexpr (std::is_same_v<T, IntermediateGerm>)
                return eval_scaled_intermediate(germ, point);
            else return eval_log(germ, point);
        },
        g);
}

std::vector<ScPair> iterate(const Germ& g, const ScPair& start, int n) {
    std::vector<ScPair> orbit;
    orbit.reserve(static_cast<std::size_t>(n) + 1);
    orbit.push_back(start);
    for (int k = 0; k < n; ++k) orbit.push_back(eval_scaled(g, orbit.back()));
    return orbit;
}

std::vector<ScPair> iterate(const Germ& g, const CPair& start, int n) {
    return iterate(g, to_scaled(start), n);
}

}  // namespace kgl
