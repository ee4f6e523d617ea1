#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgl/germ.hpp"
#include "kgl/invariant.hpp"
#include "kgl/report.hpp"
#include "kgl/rng.hpp"

namespace kgl::verify {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// ---- regions ----------------------------------------------------------------

struct Region {
    enum class Kind { Polydisc, Sublevel, Band, Ball };
    Kind kind = Kind::Polydisc;
    double r1 = 0.0, r2 = 0.0;       // polydisc radii / ball radius in r1
    double rho = 0.0;                // sublevel threshold
    int p = 2;                       // sublevel exponent
    double c1 = 0.0, delta = 1.0, c2 = 0.0;  // band parameters

    static Region polydisc(double r1, double r2);
    static Region sublevel(double rho, int p);
    static Region band(double c1, double delta, double c2);  // delta >= 1
    static Region ball(double r);
    Json to_json() const;
};

// phi_1 in [-c1 delta, -c1] and phi_2 in [-c2, c2].
bool band_contains(const Region& band, const EigenData& ed, const ScPair& point);

// ---- evaluable handles -------------------------------------------------------

using LogField = std::function<double(const ScPair&)>;
using Field = std::function<double(std::complex<double>, std::complex<double>)>;

// What a suite needs to know about a candidate invariant function. Built from
// an InvariantFunction; falsification tests wrap the evaluator.
struct UHandle {
    Family family = Family::Enoki;
    double c = 0.0;
    std::optional<EigenData> eigen;
    LogField eval_log;

    double eval(std::complex<double> z, std::complex<double> w) const {
        return eval_log(to_scaled({z, w}));
    }
};

UHandle handle(const invariant::InvariantFunction& u);
// u + coef * |w|^2; breaks every invariance the suites test for.
UHandle tamper_add_wsq(UHandle base, double coef = 0.1);

// ---- samplers ----------------------------------------------------------------

// In-domain sample with the wide margins used by exact-identity checks:
// enoki/intermediate |z| in [0.05, 0.9], |w| in [1e-3, 10]; ih by inverting
// (phi_1, phi_2) drawn from [-10, -0.1] x [-5, 5]. Arguments uniform.
ScPair sample_wide(Rng& rng, Family family, const std::optional<EigenData>& ed);

// Tighter ranges for finite-difference checks, keeping the h^2 truncation
// term of the Levi stencil well below the 1e-4 eigenvalue tolerance.
ScPair sample_fd(Rng& rng, Family family, const std::optional<EigenData>& ed);

struct SampleDump {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string to_csv() const;
};

// ---- suites ------------------------------------------------------------------

// max over samples of |u(f(x)) - u(x) - c|.
VerificationReport invariance_residual(const UHandle& u, const Germ& g, int samples,
                                       std::uint64_t seed, double tol = 1e-9,
                                       SampleDump* dump = nullptr);

// Complex Hessian by central differences in the four real coordinates;
// reports the smallest eigenvalue seen over all samples.
VerificationReport levi_psd_check(const UHandle& u, int samples, double h,
                                  std::uint64_t seed, double tol = 1e-4,
                                  SampleDump* dump = nullptr);

// Same stencil for an arbitrary field over a modulus box (calibration inputs).
struct BoxSampler {
    double z_lo = 0.3, z_hi = 1.2, w_lo = 0.3, w_hi = 1.2;
};
VerificationReport levi_psd_field(const Field& u, const BoxSampler& box,
                                  const std::string& label, int samples, double h,
                                  std::uint64_t seed, double tol = 1e-4);

// Mixed-derivative vanishing across the invariant foliation plus constancy of
// u along sampled leaf segments. For the ih family the stencil acts in the
// foliation-adapted log coordinates (the leaves are alpha zeta + beta omega =
// const, not w = const).
VerificationReport foliation_check(const UHandle& u, int samples, double h,
                                   std::uint64_t seed, double tol_mixed = 1e-6,
                                   double tol_leaf = 1e-10, SampleDump* dump = nullptr);

VerificationReport foliation_field(const Field& u, const BoxSampler& box,
                                   const std::string& label, int samples, double h,
                                   std::uint64_t seed, double tol = 1e-6);

// max over |z| = 1 of |Q(z)/z|, by circle scan plus golden-section refinement.
double compute_C1(const Polynomial& q);

// f^n(P(1, R2)) against the polydisc with radii
// |alpha|^n and |alpha|^(n(n-1)/2) (R2 + C1) + |alpha|^(n-1) C1/(1-|alpha|).
VerificationReport enoki_containment(const EnokiGerm& g, double r2, int n_max,
                                     int samples, std::uint64_t seed,
                                     SampleDump* dump = nullptr);

// f^n(P(r, r')) against {|z|^2 + |w|^(2p) < 2 C1 r^(p^n)}; reports the first n
// from which containment holds for every sample, and passes iff that
// threshold is <= n_min.
VerificationReport intermediate_containment(const IntermediateGerm& g, double r,
                                            double r_prime, int n_min, int n_max,
                                            int samples, std::uint64_t seed,
                                            SampleDump* dump = nullptr);

// Images of the band D(c1, delta, c2) against the four exponential bounds on
// |z|, |w| and the ball of radius r_n, all evaluated in log coordinates.
VerificationReport ih_box_check(const IHGerm& g, const EigenData& ed, double c1,
                                double delta, double c2, int n_max, int samples,
                                std::uint64_t seed, SampleDump* dump = nullptr);

// phi_i o f = lambda_i phi_i on log-space samples, i = 1, 2.
VerificationReport phi_equivariance(const IHGerm& g, const EigenData& ed, int samples,
                                    std::uint64_t seed, double tol = 1e-10);

// Max-on-sphere slope estimate of the Lelong number at `center`. The slope
// sequence decays like 1/|log r| for the families at hand, so nu_hat
// extrapolates the last two slopes linearly in 1/|log r| (for a constant
// slope sequence this reduces to the last slope).
struct LelongResult {
    std::vector<double> slopes;
    double nu_hat = 0.0;
};
LelongResult lelong_estimate(const Field& u, const CPair& center,
                             const std::vector<double>& radii,
                             int sphere_samples = 512,
                             std::uint64_t seed = kDefaultSeed);

VerificationReport lelong_report(const Field& u, const std::string& label,
                                 const CPair& center, const std::vector<double>& radii,
                                 double expected_nu, double tol,
                                 std::uint64_t seed = kDefaultSeed);

}  // namespace kgl::verify
