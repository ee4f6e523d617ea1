#pragma once

#include <optional>
#include <string>

#include "kgl/germ.hpp"
#include "kgl/kcone.hpp"
#include "kgl/matrix2.hpp"

namespace kgl::invariant {

// u o f = u + c; the sign of c is baked in per family.
struct AutomorphySpec {
    double c = 0.0;
    std::string relation;  // e.g. "u o f = u - log p"
};

// Evaluable handle for the invariant plurisubharmonic function of a germ:
//   enoki:         u(z, w) = log|z|                          on C^2
//   intermediate:  u(z, w) = -log(-log|z|) - psi(log(-log|z|)) on |z| < 1
//   ih:            u(z, w) = -log(-phi) - psi(log(-phi)),
//                  phi = log|z| + beta1 log|w|,              on {phi < 0}
struct InvariantFunction {
    Family family = Family::Enoki;
    std::optional<kcone::PeriodicFunction> psi;  // absent for enoki
    std::optional<EigenData> eigen;              // ih only
    double c = 0.0;                              // additive constant of u o f

    // Primary path; -inf exactly at the singular locus (z = 0, resp.
    // phi = -inf). Throws Error("OutOfDomain", ...) outside the domain.
    double eval_log(const ScPair& point) const;
    // Converts through log-polar coordinates, so |z| within 1e-300 of zero is
    // still resolved; -inf only at exact zeros.
    double eval(std::complex<double> z, std::complex<double> w) const;
};

// Period the cone member must carry: log p (intermediate) or log lambda1 (ih).
double canonical_period(const Germ& g);

// psi must be absent for enoki (UnexpectedPsi) and present otherwise
// (MissingPsi); its period must match the canonical one (PeriodMismatch,
// relative 1e-9, after which the canonical value is adopted exactly) and it
// must pass the cone membership check (NotInCone).
InvariantFunction build(const Germ& g, std::optional<kcone::PeriodicFunction> psi);

AutomorphySpec automorphy_spec(const InvariantFunction& u);

}  // namespace kgl::invariant
