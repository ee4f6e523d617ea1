#pragma once

#include <utility>
#include <vector>

namespace kgl::kcone {

// Finite trigonometric series of period alpha:
//   psi(t) = a0 + sum_k (a_k cos(2 pi k t/alpha) + b_k sin(2 pi k t/alpha)).
// psi, psi', psi'' all come from the same coefficients in closed form.
struct PeriodicFunction {
    double period = 1.0;
    double a0 = 0.0;
    std::vector<std::pair<double, double>> harmonics;  // (a_k, b_k), k = 1..K

    double eval(double t, int order = 0) const;
    bool is_zero() const;

    static PeriodicFunction zero(double period) { return {period, 0.0, {}}; }
    PeriodicFunction scaled(double factor) const;
};

// c1 * f + c2 * g; both inputs must share the period.
PeriodicFunction combine(double c1, const PeriodicFunction& f, double c2,
                         const PeriodicFunction& g);

// Upper bound for |g'| with g = -psi'' + psi' + 1, from the coefficients.
double lipschitz_bound(const PeriodicFunction& psi);

struct MembershipResult {
    double min_value = 0.0;  // grid minimum of -psi'' + psi' + 1
    bool pass = false;
    double grid_slack = 0.0;  // Lipschitz allowance L * (period/grid_n)
};

// Certified grid check of -psi'' + psi' + 1 >= 0 over one period:
// pass iff min_value >= -tol - grid_slack.
MembershipResult membership(const PeriodicFunction& psi, int grid_n = 8192,
                            double tol = 1e-9);

// Largest factor eps such that eps * phi satisfies the cone inequality:
// eps* = 1/max_t(phi'' - phi') when that max is positive, +inf otherwise.
// Grid scan plus golden-section refinement of the bracketing interval.
double max_scale(const PeriodicFunction& phi, int grid_n = 8192);

}  // namespace kgl::kcone
