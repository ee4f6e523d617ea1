#include "kgl/kcone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kgl/error.hpp"
#include "kgl/numeric.hpp"

namespace kgl::kcone {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double PeriodicFunction::eval(double t, int order) const {
    const double w0 = 2.0 * std::numbers::pi / period;
    double acc = (order == 0) ? a0 : 0.0;
    for (std::size_t k = 0; k < harmonics.size(); ++k) {
        const double w = w0 * static_cast<double>(k + 1);
        const auto [a, b] = harmonics[k];
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        switch (order) {
            case 0: acc += a * c + b * s; break;
            case 1: acc += w * (-a * s + b * c); break;
            case 2: acc += -w * w * (a * c + b * s); break;
            default: throw Error("InvalidParameter", "derivative order must be 0, 1 or 2");
        }
    }
    return acc;
}

bool PeriodicFunction::is_zero() const {
    if (a0 != 0.0) return false;
    for (const auto& [a, b] : harmonics)
        if (a != 0.0 || b != 0.0) return false;
    return true;
}

PeriodicFunction PeriodicFunction::scaled(double factor) const {
    PeriodicFunction out{period, factor * a0, harmonics};
    for (auto& [a, b] : out.harmonics) {
        a *= factor;
        b *= factor;
    }
    return out;
}

PeriodicFunction combine(double c1, const PeriodicFunction& f, double c2,
                         const PeriodicFunction& g) {
    if (f.period != g.period)
        throw Error("PeriodMismatch", "combining series of different periods");
    PeriodicFunction out{f.period, c1 * f.a0 + c2 * g.a0, {}};
    out.harmonics.resize(std::max(f.harmonics.size(), g.harmonics.size()), {0.0, 0.0});
    for (std::size_t k = 0; k < f.harmonics.size(); ++k) {
        out.harmonics[k].first += c1 * f.harmonics[k].first;
        out.harmonics[k].second += c1 * f.harmonics[k].second;
    }
    for (std::size_t k = 0; k < g.harmonics.size(); ++k) {
        out.harmonics[k].first += c2 * g.harmonics[k].first;
        out.harmonics[k].second += c2 * g.harmonics[k].second;
    }
    return out;
}

double lipschitz_bound(const PeriodicFunction& psi) {
    // g' = -psi''' + psi''; each harmonic contributes (w^3 + w^2) |coef|.
    const double w0 = 2.0 * std::numbers::pi / psi.period;
    double bound = 0.0;
    for (std::size_t k = 0; k < psi.harmonics.size(); ++k) {
        const double w = w0 * static_cast<double>(k + 1);
        const double amp = std::hypot(psi.harmonics[k].first, psi.harmonics[k].second);
        bound += (w * w * w + w * w) * amp;
    }
    return bound;
}

MembershipResult membership(const PeriodicFunction& psi, int grid_n, double tol) {
    if (grid_n < 1024) throw Error("InvalidParameter", "grid_n must be >= 1024");
    MembershipResult r;
    r.min_value = kInf;
    const double step = psi.period / static_cast<double>(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double t = step * static_cast<double>(i);
        const double g = -psi.eval(t, 2) + psi.eval(t, 1) + 1.0;
        if (g < r.min_value) r.min_value = g;
    }
    r.grid_slack = lipschitz_bound(psi) * step;
    r.pass = r.min_value >= -tol - r.grid_slack;
    return r;
}

double max_scale(const PeriodicFunction& phi, int grid_n) {
    if (grid_n < 1024) throw Error("InvalidParameter", "grid_n must be >= 1024");
    auto m = [&phi](double t) { return phi.eval(t, 2) - phi.eval(t, 1); };
    const double step = phi.period / static_cast<double>(grid_n);
    double best = -kInf;
    int best_i = 0;
    for (int i = 0; i < grid_n; ++i) {
        const double v = m(step * static_cast<double>(i));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double refined = golden_max(m, step * static_cast<double>(best_i - 1),
                                      step * static_cast<double>(best_i + 1));
    const double peak = std::max(best, refined);
    if (!(peak > 0.0)) return kInf;
    return 1.0 / peak;
}

}  // namespace kgl::kcone
