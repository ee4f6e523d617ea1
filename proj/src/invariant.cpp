#include "kgl/invariant.hpp"

#include <cmath>
#include <limits>

#include "kgl/error.hpp"

namespace kgl::invariant {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double psi_chain(const kcone::PeriodicFunction& psi, double neg_level) {
    // u = -log(L) - psi(log L) for the positive level L = -log|z| or -phi.
    const double t = std::log(neg_level);
    return -t - psi.eval(t);
}
}  // namespace

double InvariantFunction::eval_log(const ScPair& point) const {
    const double lz = point.first.log_mod;
    switch (family) {
        case Family::Enoki:
            return lz;
        case Family::Intermediate: {
            if (!(lz < 0.0)) throw Error("OutOfDomain", "intermediate u requires |z| < 1");
            if (lz == -kInf) return -kInf;
            return psi_chain(*psi, -lz);
        }
        case Family::IH: {
            const double ph = phi_log(*eigen, 1, point);
            if (ph == -kInf) return -kInf;
            if (!(ph < 0.0)) throw Error("OutOfDomain", "ih u requires phi < 0");
            return psi_chain(*psi, -ph);
        }
    }
    throw Error("InvalidParameter", "unknown family");
}

double InvariantFunction::eval(std::complex<double> z, std::complex<double> w) const {
    return eval_log(to_scaled({z, w}));
}

double canonical_period(const Germ& g) {
    if (const auto* im = std::get_if<IntermediateGerm>(&g))
        return std::log(static_cast<double>(im->p));
    if (const auto* ih = std::get_if<IHGerm>(&g))
        return std::log(eigen_data(ih->m).lambda1);
    throw Error("UnexpectedPsi", "the enoki family carries no periodic part");
}

InvariantFunction build(const Germ& g, std::optional<kcone::PeriodicFunction> psi) {
    InvariantFunction u;
    u.family = family_of(g);

    if (u.family == Family::Enoki) {
        if (psi.has_value())
            throw Error("UnexpectedPsi", "the enoki invariant function takes no psi");
        u.c = std::log(std::abs(std::get<EnokiGerm>(g).alpha));
        return u;
    }

    if (!psi.has_value())
        throw Error("MissingPsi", "this family requires a periodic part (psi = 0 is valid)");

    const double period = canonical_period(g);
    if (std::abs(psi->period - period) > 1e-9 * period)
        throw Error("PeriodMismatch",
                    "psi period " + std::to_string(psi->period) + " does not match " +
                        std::to_string(period));
    psi->period = period;  // adopt exactly; the functional equation relies on it

    const auto mem = kcone::membership(*psi);
    if (!mem.pass)
        throw Error("NotInCone", "psi fails -psi'' + psi' + 1 >= 0 (grid minimum " +
                                     std::to_string(mem.min_value) + ")");

    u.psi = std::move(psi);
    if (u.family == Family::Intermediate) {
        u.c = -period;  // -log p
    } else {
        u.eigen = eigen_data(std::get<IHGerm>(g).m);
        u.c = -period;  // -log lambda1
    }
    return u;
}

AutomorphySpec automorphy_spec(const InvariantFunction& u) {
    switch (u.family) {
        case Family::Enoki: return {u.c, "u o f = u + log|alpha|"};
        case Family::Intermediate: return {u.c, "u o f = u - log p"};
        case Family::IH: return {u.c, "u o f = u - log lambda1"};
    }
    throw Error("InvalidParameter", "unknown family");
}

}  // namespace kgl::invariant
