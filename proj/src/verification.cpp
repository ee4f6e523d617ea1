#include "kgl/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "kgl/error.hpp"
#include "kgl/germ_io.hpp"
#include "kgl/numeric.hpp"

namespace kgl::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Boundary-class samples sit on a shell inset by this relative amount, so the
// stated containments hold with genuinely positive margins in floating point.
constexpr double kBoundaryInset = 1e-6;

Json double_array(const std::vector<double>& xs) {
    Json arr = Json::array();
    for (double x : xs) arr.push(x);
    return arr;
}

}  // namespace

// ---- regions -----------------------------------------------------------------

Region Region::polydisc(double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw Error("InvalidParameter", "polydisc radii must be positive");
    Region r;
    r.kind = Kind::Polydisc;
    r.r1 = r1;
    r.r2 = r2;
    return r;
}

Region Region::sublevel(double rho, int p) {
    if (!(rho > 0.0)) throw Error("InvalidParameter", "sublevel threshold must be positive");
    Region r;
    r.kind = Kind::Sublevel;
    r.rho = rho;
    r.p = p;
    return r;
}

Region Region::band(double c1, double delta, double c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw Error("InvalidParameter", "band levels must be positive");
    if (!(delta >= 1.0)) throw Error("InvalidParameter", "band delta must be >= 1");
    Region r;
    r.kind = Kind::Band;
    r.c1 = c1;
    r.delta = delta;
    r.c2 = c2;
    return r;
}

Region Region::ball(double radius) {
    if (!(radius > 0.0)) throw Error("InvalidParameter", "ball radius must be positive");
    Region r;
    r.kind = Kind::Ball;
    r.r1 = radius;
    return r;
}

Json Region::to_json() const {
    Json j = Json::object();
    switch (kind) {
        case Kind::Polydisc:
            j.set("kind", "polydisc").set("r1", r1).set("r2", r2);
            break;
        case Kind::Sublevel:
            j.set("kind", "sublevel").set("rho", rho).set("p", p);
            break;
        case Kind::Band:
            j.set("kind", "band").set("c1", c1).set("delta", delta).set("c2", c2);
            break;
        case Kind::Ball:
            j.set("kind", "ball").set("r", r1);
            break;
    }
    return j;
}

bool band_contains(const Region& band, const EigenData& ed, const ScPair& point) {
    const double p1 = phi_log(ed, 1, point);
    const double p2 = phi_log(ed, 2, point);
    return p1 >= -band.c1 * band.delta && p1 <= -band.c1 && p2 >= -band.c2 &&
           p2 <= band.c2;
}

// ---- handles -----------------------------------------------------------------

UHandle handle(const invariant::InvariantFunction& u) {
    UHandle h;
    h.family = u.family;
    h.c = u.c;
    h.eigen = u.eigen;
    h.eval_log = [u](const ScPair& p) { return u.eval_log(p); };
    return h;
}

UHandle tamper_add_wsq(UHandle base, double coef) {
    LogField inner = base.eval_log;
    base.eval_log = [inner, coef](const ScPair& p) {
        const double lw = p.second.log_mod;
        const double wsq = (lw == -kInf) ? 0.0 : std::exp(2.0 * lw);
        return inner(p) + coef * wsq;
    };
    return base;
}

// ---- samplers ----------------------------------------------------------------

namespace {

ScPair sample_moduli_box(Rng& rng, double z_lo, double z_hi, double w_lo, double w_hi) {
    const double mz = rng.uniform(z_lo, z_hi);
    const double mw = rng.uniform(w_lo, w_hi);
    return {ScaledComplex::make(std::log(mz), rng.angle()),
            ScaledComplex::make(std::log(mw), rng.angle())};
}

ScPair invert_phi(const EigenData& ed, double p1, double p2, double arg_z, double arg_w) {
    const double lw = (p1 - p2) / (ed.beta1 - ed.beta2);
    const double lz = p1 - ed.beta1 * lw;
    return {ScaledComplex::make(lz, arg_z), ScaledComplex::make(lw, arg_w)};
}

}  // namespace

ScPair sample_wide(Rng& rng, Family family, const std::optional<EigenData>& ed) {
    switch (family) {
        case Family::Enoki:
        case Family::Intermediate:
            return sample_moduli_box(rng, 0.05, 0.9, 1e-3, 10.0);
        case Family::IH: {
            const double p1 = rng.uniform(-10.0, -0.1);
            const double p2 = rng.uniform(-5.0, 5.0);
            return invert_phi(*ed, p1, p2, rng.angle(), rng.angle());
        }
    }
    throw Error("InvalidParameter", "unknown family");
}

ScPair sample_fd(Rng& rng, Family family, const std::optional<EigenData>& ed) {
    switch (family) {
        case Family::Enoki:
            return sample_moduli_box(rng, 0.1, 0.9, 0.2, 2.0);
        case Family::Intermediate:
            return sample_moduli_box(rng, 0.1, 0.85, 0.2, 2.0);
        case Family::IH: {
            const double l_lo = std::log(0.25), l_hi = std::log(0.85);
            // Feasible phi_1 range over the modulus box; aim for a band where
            // neither 1/|phi| nor the coordinate moduli amplify the stencil
            // truncation error.
            const double feas_lo = (1.0 + ed->beta1) * l_lo;
            const double feas_hi = (1.0 + ed->beta1) * l_hi;
            double lo = std::max(-8.0, feas_lo);
            double hi = std::min(-1.5, feas_hi);
            if (!(lo < hi)) {
                lo = feas_lo + 0.35 * (feas_hi - feas_lo);
                hi = feas_lo + 0.65 * (feas_hi - feas_lo);
            }
            for (;;) {
                const double lz = rng.uniform(l_lo, l_hi);
                const double lw = rng.uniform(l_lo, l_hi);
                const double p1 = lz + ed->beta1 * lw;
                if (p1 >= lo && p1 <= hi)
                    return {ScaledComplex::make(lz, rng.angle()),
                            ScaledComplex::make(lw, rng.angle())};
            }
        }
    }
    throw Error("InvalidParameter", "unknown family");
}

std::string SampleDump::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

// ---- invariance ----------------------------------------------------------------

VerificationReport invariance_residual(const UHandle& u, const Germ& g, int samples,
                                       std::uint64_t seed, double tol,
                                       SampleDump* dump) {
    VerificationReport r;
    r.check = "invariance_residual";
    r.inputs = Json::object();
    r.inputs.set("germ", io::germ_to_json(g)).set("c", u.c);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    r.metric_name = "max_residual";
    if (dump) dump->header = {"re_z", "im_z", "re_w", "im_w", "u", "u_of_f", "residual"};

    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const ScPair x = sample_wide(rng, u.family, u.eigen);
        const ScPair fx = eval_scaled(g, x);
        const double ux = u.eval_log(x);
        const double ufx = u.eval_log(fx);
        const double res = std::abs(ufx - ux - u.c);
        worst = std::max(worst, res);
        if (dump) {
            const CPair xc = to_complex(x);
            dump->rows.push_back({xc.first.real(), xc.first.imag(), xc.second.real(),
                                  xc.second.imag(), ux, ufx, res});
        }
    }
    r.metric = worst;
    r.pass = worst <= tol;
    return r;
}

// ---- finite-difference Levi form ----------------------------------------------

namespace {

struct LeviEntries {
    double min_eig = 0.0;
    double mixed_abs = 0.0;  // |u_{z wbar}|
};

// Central differences in the four real coordinates of (z, w); steps are
// relative to the local moduli.
template <typename F>
LeviEntries levi_stencil(const F& u, std::complex<double> z, std::complex<double> w,
                         double sz, double sw) {
    auto U = [&](double dx, double dy, double dxi, double deta) {
        return u(z + std::complex<double>(dx, dy), w + std::complex<double>(dxi, deta));
    };
    const double u0 = U(0, 0, 0, 0);
    const double uxx = (U(sz, 0, 0, 0) - 2 * u0 + U(-sz, 0, 0, 0)) / (sz * sz);
    const double uyy = (U(0, sz, 0, 0) - 2 * u0 + U(0, -sz, 0, 0)) / (sz * sz);
    const double uff = (U(0, 0, sw, 0) - 2 * u0 + U(0, 0, -sw, 0)) / (sw * sw);
    const double uee = (U(0, 0, 0, sw) - 2 * u0 + U(0, 0, 0, -sw)) / (sw * sw);
    auto cross = [&](bool zx, bool wf) {
        // d^2 u / d(zx ? x : y) d(wf ? xi : eta)
        auto at = [&](double a, double b) {
            return U(zx ? a : 0, zx ? 0 : a, wf ? b : 0, wf ? 0 : b);
        };
        return (at(sz, sw) - at(sz, -sw) - at(-sz, sw) + at(-sz, -sw)) / (4 * sz * sw);
    };
    const double uxf = cross(true, true);
    const double uxe = cross(true, false);
    const double uyf = cross(false, true);
    const double uye = cross(false, false);

    const double a = 0.25 * (uxx + uyy);  // u_{z zbar}
    const double b = 0.25 * (uff + uee);  // u_{w wbar}
    const std::complex<double> off(0.25 * (uxf + uye), 0.25 * (uxe - uyf));  // u_{z wbar}

    const double mean = 0.5 * (a + b);
    const double half = 0.5 * (a - b);
    const double rad = std::sqrt(half * half + std::norm(off));
    return {mean - rad, std::abs(off)};
}

}  // namespace

VerificationReport levi_psd_check(const UHandle& u, int samples, double h,
                                  std::uint64_t seed, double tol, SampleDump* dump) {
    VerificationReport r;
    r.check = "levi_psd_check";
    r.inputs = Json::object();
    r.inputs.set("family", to_string(u.family)).set("h", h);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    r.metric_name = "min_eigenvalue";
    if (dump) dump->header = {"re_z", "im_z", "re_w", "im_w", "min_eigenvalue"};

    auto field = [&u](std::complex<double> z, std::complex<double> w) {
        return u.eval(z, w);
    };
    Rng rng(seed);
    double min_eig = kInf;
    for (int i = 0; i < samples; ++i) {
        const ScPair x = sample_fd(rng, u.family, u.eigen);
        const CPair xc = to_complex(x);
        const double sz = h * std::abs(xc.first);
        const double sw = h * std::abs(xc.second);
        const LeviEntries e = levi_stencil(field, xc.first, xc.second, sz, sw);
        min_eig = std::min(min_eig, e.min_eig);
        if (dump)
            dump->rows.push_back({xc.first.real(), xc.first.imag(), xc.second.real(),
                                  xc.second.imag(), e.min_eig});
    }
    r.metric = min_eig;
    r.pass = min_eig >= -tol;
    return r;
}

VerificationReport levi_psd_field(const Field& u, const BoxSampler& box,
                                  const std::string& label, int samples, double h,
                                  std::uint64_t seed, double tol) {
    VerificationReport r;
    r.check = "levi_psd_check";
    r.inputs = Json::object();
    r.inputs.set("function", label).set("h", h);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    r.metric_name = "min_eigenvalue";

    Rng rng(seed);
    double min_eig = kInf;
    for (int i = 0; i < samples; ++i) {
        const ScPair x = sample_moduli_box(rng, box.z_lo, box.z_hi, box.w_lo, box.w_hi);
        const CPair xc = to_complex(x);
        const double sz = h * std::abs(xc.first);
        const double sw = h * std::abs(xc.second);
        min_eig = std::min(min_eig, levi_stencil(u, xc.first, xc.second, sz, sw).min_eig);
    }
    r.metric = min_eig;
    r.pass = min_eig >= -tol;
    return r;
}

// ---- foliation -----------------------------------------------------------------

namespace {

// Mixed derivative of u across/along the ih foliation, taken in the log
// coordinates (xi, tau) = (zeta + beta1 omega, zeta + beta2 omega) where the
// leaves are {xi = const}.
struct AdaptedEval {
    const UHandle* u;
    double beta1, beta2;

    double operator()(std::complex<double> xi, std::complex<double> tau) const {
        const std::complex<double> omega = (xi - tau) / (beta1 - beta2);
        const std::complex<double> zeta = xi - beta1 * omega;
        return u->eval_log({ScaledComplex::make(zeta.real(), zeta.imag()),
                            ScaledComplex::make(omega.real(), omega.imag())});
    }
};

template <typename F>
double mixed_abs_stencil(const F& u, std::complex<double> a, std::complex<double> b,
                         double sa, double sb) {
    return levi_stencil(u, a, b, sa, sb).mixed_abs;
}

}  // namespace

VerificationReport foliation_check(const UHandle& u, int samples, double h,
                                   std::uint64_t seed, double tol_mixed,
                                   double tol_leaf, SampleDump* dump) {
    VerificationReport r;
    r.check = "foliation_check";
    r.inputs = Json::object();
    r.inputs.set("family", to_string(u.family)).set("h", h);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = tol_mixed;
    r.metric_name = "max_mixed_abs";
    if (dump) dump->header = {"re_z", "im_z", "re_w", "im_w", "mixed_abs", "leaf_variation"};

    Rng rng(seed);
    double max_mixed = 0.0;
    double max_leaf = 0.0;
    for (int i = 0; i < samples; ++i) {
        const ScPair x = sample_fd(rng, u.family, u.eigen);
        double mixed = 0.0, leaf = 0.0;
        CPair xc = to_complex(x);
        if (u.family == Family::IH) {
            const AdaptedEval w{&u, u.eigen->beta1, u.eigen->beta2};
            const std::complex<double> zeta(x.first.log_mod, x.first.arg);
            const std::complex<double> omega(x.second.log_mod, x.second.arg);
            const std::complex<double> xi = zeta + u.eigen->beta1 * omega;
            const std::complex<double> tau = zeta + u.eigen->beta2 * omega;
            mixed = mixed_abs_stencil(w, xi, tau, h, h);
            // u along the leaf {xi = const}.
            double lo = kInf, hi = -kInf;
            for (int k = 0; k < 8; ++k) {
                const auto off = std::polar(0.4, 0.25 * std::numbers::pi * k);
                const double v = w(xi, tau + off);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            leaf = hi - lo;
        } else {
            auto field = [&u](std::complex<double> z, std::complex<double> w) {
                return u.eval(z, w);
            };
            mixed = mixed_abs_stencil(field, xc.first, xc.second, h * std::abs(xc.first),
                                      h * std::abs(xc.second));
            // Leaves are {z = const}; sweep w around the sample.
            double lo = kInf, hi = -kInf;
            for (int k = 0; k < 8; ++k) {
                const auto wk = xc.second * std::polar(0.5 + 0.15 * k, 0.7 * k);
                const double v = field(xc.first, wk);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            leaf = hi - lo;
        }
        max_mixed = std::max(max_mixed, mixed);
        max_leaf = std::max(max_leaf, leaf);
        if (dump)
            dump->rows.push_back({xc.first.real(), xc.first.imag(), xc.second.real(),
                                  xc.second.imag(), mixed, leaf});
    }
    r.metric = max_mixed;
    r.pass = max_mixed <= tol_mixed && max_leaf <= tol_leaf;
    r.details = Json::object();
    r.details.set("max_leaf_variation", max_leaf).set("tol_leaf", tol_leaf);
    return r;
}

VerificationReport foliation_field(const Field& u, const BoxSampler& box,
                                   const std::string& label, int samples, double h,
                                   std::uint64_t seed, double tol) {
    VerificationReport r;
    r.check = "foliation_check";
    r.inputs = Json::object();
    r.inputs.set("function", label).set("h", h);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    r.metric_name = "max_mixed_abs";

    Rng rng(seed);
    double max_mixed = 0.0;
    for (int i = 0; i < samples; ++i) {
        const ScPair x = sample_moduli_box(rng, box.z_lo, box.z_hi, box.w_lo, box.w_hi);
        const CPair xc = to_complex(x);
        max_mixed = std::max(max_mixed, mixed_abs_stencil(u, xc.first, xc.second,
                                                          h * std::abs(xc.first),
                                                          h * std::abs(xc.second)));
    }
    r.metric = max_mixed;
    r.pass = max_mixed <= tol;
    return r;
}

// ---- containments ----------------------------------------------------------------

double compute_C1(const Polynomial& q) {
    if (q.degree() == 0) return 0.0;
    auto f = [&q](double th) { return std::abs(q.eval_over_z(std::polar(1.0, th))); };
    const int n = 512;
    const double step = 2.0 * std::numbers::pi / n;
    double best = -kInf;
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        const double v = f(step * i);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    return std::max(best, golden_max(f, step * (best_i - 1), step * (best_i + 1)));
}

VerificationReport enoki_containment(const EnokiGerm& g, double r2, int n_max,
                                     int samples, std::uint64_t seed, SampleDump* dump) {
    if (n_max < 0 || n_max > 60)
        throw Error("InvalidParameter", "n_max must lie in [0, 60]");
    const Region start = Region::polydisc(1.0, r2);
    const double c1 = compute_C1(g.q);
    const double la = std::log(std::abs(g.alpha));

    VerificationReport r;
    r.check = "enoki_containment";
    r.inputs = Json::object();
    r.inputs.set("germ", io::germ_to_json(Germ{g}))
        .set("region", start.to_json())
        .set("C1", c1)
        .set("n_max", n_max);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = 0.0;
    r.metric_name = "min_margin";
    if (dump) dump->header = {"n", "max_log_z", "bound_log_z", "max_log_w", "bound_log_w"};

    Rng rng(seed);
    std::vector<double> max_lz(n_max + 1, -kInf), max_lw(n_max + 1, -kInf);
    for (int i = 0; i < samples; ++i) {
        const bool boundary = rng.bernoulli(0.7);
        const double mz = boundary ? 1.0 - kBoundaryInset
                                   : rng.uniform(0.0, 1.0 - kBoundaryInset);
        const double mw = boundary ? r2 * (1.0 - kBoundaryInset)
                                   : rng.uniform(0.0, r2 * (1.0 - kBoundaryInset));
        ScPair x{ScaledComplex::make(std::log(mz), rng.angle()),
                 ScaledComplex::make(std::log(mw), rng.angle())};
        const auto orbit = iterate(Germ{g}, x, n_max);
        for (int n = 0; n <= n_max; ++n) {
            max_lz[n] = std::max(max_lz[n], orbit[n].first.log_mod);
            max_lw[n] = std::max(max_lw[n], orbit[n].second.log_mod);
        }
    }

    // Bound accumulators mirror the orbit's one-multiplication-per-step sums.
    std::vector<double> bound_lz(n_max + 1), bound_lw(n_max + 1);
    {
        double acc = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            bound_lz[n] = acc;
            acc += la;
        }
    }
    const double log_r2c1 = std::log(r2 + c1);
    const double log_c1_geo =
        (c1 > 0.0) ? std::log(c1) - std::log1p(-std::abs(g.alpha)) : -kInf;
    bound_lw[0] = std::log(r2);
    for (int n = 1; n <= n_max; ++n) {
        const double sigma = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
        bound_lw[n] = log_sum_exp(sigma * la + log_r2c1,
                                  static_cast<double>(n - 1) * la + log_c1_geo);
    }

    std::vector<double> margin_z(n_max + 1), margin_w(n_max + 1);
    double min_margin = kInf;
    for (int n = 0; n <= n_max; ++n) {
        margin_z[n] = bound_lz[n] - max_lz[n];
        margin_w[n] = bound_lw[n] - max_lw[n];
        min_margin = std::min({min_margin, margin_z[n], margin_w[n]});
        if (dump) dump->rows.push_back({static_cast<double>(n), max_lz[n], bound_lz[n],
                                        max_lw[n], bound_lw[n]});
    }
    r.metric = min_margin;
    r.pass = min_margin >= 0.0;
    r.details = Json::object();
    r.details.set("margin_log_z", double_array(margin_z))
        .set("margin_log_w", double_array(margin_w));
    return r;
}

VerificationReport intermediate_containment(const IntermediateGerm& g, double r,
                                            double r_prime, int n_min, int n_max,
                                            int samples, std::uint64_t seed,
                                            SampleDump* dump) {
    if (!(r > 0.0 && r < 1.0))
        throw Error("InvalidParameter", "initial radius must satisfy 0 < r < 1");
    const Region start = Region::polydisc(r, r_prime);
    const double c1 = compute_C1(g.full_q());
    if (c1 == 0.0)
        throw Error("Degenerate", "C1 = 0: all coefficients vanish");

    VerificationReport rep;
    rep.check = "intermediate_containment";
    rep.inputs = Json::object();
    rep.inputs.set("germ", io::germ_to_json(Germ{g}))
        .set("region", start.to_json())
        .set("C1", c1)
        .set("n_min", n_min)
        .set("n_max", n_max);
    rep.n_samples = samples;
    rep.seed = seed;
    rep.tolerance = 0.0;
    rep.metric_name = "min_margin";
    if (dump) dump->header = {"n", "max_lhs", "rhs", "margin"};

    Rng rng(seed);
    std::vector<double> max_lhs(n_max + 1, -kInf);
    for (int i = 0; i < samples; ++i) {
        const bool boundary = rng.bernoulli(0.7);
        const double mz =
            boundary ? r * (1.0 - kBoundaryInset) : rng.uniform(0.0, r * (1.0 - kBoundaryInset));
        const double mw = boundary ? r_prime * (1.0 - kBoundaryInset)
                                   : rng.uniform(0.0, r_prime * (1.0 - kBoundaryInset));
        ScPair x{ScaledComplex::make(std::log(mz), rng.angle()),
                 ScaledComplex::make(std::log(mw), rng.angle())};
        const auto orbit = iterate(Germ{g}, x, n_max);
        for (int n = 0; n <= n_max; ++n) {
            const double lhs = log_sum_exp(2.0 * orbit[n].first.log_mod,
                                           2.0 * static_cast<double>(g.p) *
                                               orbit[n].second.log_mod);
            max_lhs[n] = std::max(max_lhs[n], lhs);
        }
    }

    const double log_2c1 = std::log(2.0 * c1);
    const double log_r = std::log(r);
    std::vector<double> margins(n_max + 1);
    double pn = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        const double rhs = log_2c1 + pn * log_r;
        margins[n] = rhs - max_lhs[n];
        if (dump) dump->rows.push_back({static_cast<double>(n), max_lhs[n], rhs, margins[n]});
        pn *= static_cast<double>(g.p);
    }

    // First n from which containment holds for every sample through n_max.
    int threshold = -1;
    for (int n = n_max; n >= 0; --n) {
        if (margins[n] > 0.0) threshold = n;
        else break;
    }
    double min_requested = kInf;
    for (int n = n_min; n <= n_max; ++n) min_requested = std::min(min_requested, margins[n]);
    double worst_after = kInf;
    if (threshold >= 0)
        for (int n = threshold; n <= n_max; ++n) worst_after = std::min(worst_after, margins[n]);

    rep.metric = min_requested;
    rep.pass = threshold >= 0 && threshold <= n_min;
    rep.details = Json::object();
    rep.details.set("threshold_n", threshold)
        .set("worst_margin_after_threshold", threshold >= 0 ? worst_after : 0.0)
        .set("margins", double_array(margins));
    return rep;
}

VerificationReport ih_box_check(const IHGerm& g, const EigenData& ed, double c1,
                                double delta, double c2, int n_max, int samples,
                                std::uint64_t seed, SampleDump* dump) {
    const Region band = Region::band(c1, delta, c2);
    const double lam = ed.lambda1;
    const double b1 = ed.beta1, b2 = ed.beta2;
    const double dd = b1 - b2;  // alpha2 beta1 - alpha1 beta2 with alphas = 1

    VerificationReport r;
    r.check = "ih_box_check";
    r.inputs = Json::object();
    r.inputs.set("germ", io::germ_to_json(Germ{g}))
        .set("region", band.to_json())
        .set("lambda1", lam)
        .set("n_max", n_max);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = 0.0;
    r.metric_name = "min_margin";
    if (dump)
        dump->header = {"n", "min_margin_z", "min_margin_w", "min_margin_ball"};

    Rng rng(seed);
    std::vector<ScPair> starts;
    starts.reserve(static_cast<std::size_t>(samples));
    const double p1_lo = -c1 * delta, p1_hi = -c1;
    const double in1 = kBoundaryInset * (p1_hi - p1_lo);
    const double in2 = kBoundaryInset * (2.0 * c2);
    for (int i = 0; i < samples; ++i) {
        double p1, p2;
        if (rng.bernoulli(0.7)) {
            switch (static_cast<int>(rng.uniform(0.0, 4.0))) {
                case 0: p1 = p1_lo + in1; p2 = rng.uniform(-c2 + in2, c2 - in2); break;
                case 1: p1 = p1_hi - in1; p2 = rng.uniform(-c2 + in2, c2 - in2); break;
                case 2: p1 = rng.uniform(p1_lo + in1, p1_hi - in1); p2 = -c2 + in2; break;
                default: p1 = rng.uniform(p1_lo + in1, p1_hi - in1); p2 = c2 - in2; break;
            }
        } else {
            p1 = rng.uniform(p1_lo + in1, p1_hi - in1);
            p2 = rng.uniform(-c2 + in2, c2 - in2);
        }
        starts.push_back(invert_phi(ed, p1, p2, rng.angle(), rng.angle()));
    }

    double min_margin = kInf;
    std::vector<double> per_n(n_max + 1, kInf);
    std::vector<ScPair> pts = starts;
    double lam_n = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        const double an = lam_n * c1 * delta;
        const double bn = lam_n * c1;
        const double en = c2 / lam_n;
        const double lz_hi = (bn * b2 + en * b1) / dd;
        const double lz_lo = (an * b2 - en * b1) / dd;
        const double lw_hi = (-bn + en) / dd;
        const double lw_lo = (-an - en) / dd;
        const double log_rn2 = log_sum_exp(2.0 * lz_hi, 2.0 * lw_hi);
        double mz = kInf, mw = kInf, mb = kInf;
        for (const auto& pt : pts) {
            const double lz = pt.first.log_mod, lw = pt.second.log_mod;
            mz = std::min({mz, lz_hi - lz, lz - lz_lo});
            mw = std::min({mw, lw_hi - lw, lw - lw_lo});
            mb = std::min(mb, log_rn2 - log_sum_exp(2.0 * lz, 2.0 * lw));
        }
        per_n[n] = std::min({mz, mw, mb});
        min_margin = std::min(min_margin, per_n[n]);
        if (dump) dump->rows.push_back({static_cast<double>(n), mz, mw, mb});
        if (n < n_max)
            for (auto& pt : pts) pt = eval_log(g, pt);
        lam_n *= lam;
    }

    // Rounding allowance for degenerate bands sampled exactly on the boundary.
    const double slack = 1e-9 * std::max(1.0, lam_n * c1 * delta);
    r.metric = min_margin;
    r.pass = min_margin >= -slack;
    r.details = Json::object();
    r.details.set("margins", double_array(per_n)).set("round_slack", slack);
    return r;
}

VerificationReport phi_equivariance(const IHGerm& g, const EigenData& ed, int samples,
                                    std::uint64_t seed, double tol) {
    VerificationReport r;
    r.check = "phi_equivariance";
    r.inputs = Json::object();
    r.inputs.set("germ", io::germ_to_json(Germ{g}))
        .set("lambda1", ed.lambda1)
        .set("lambda2", ed.lambda2);
    r.n_samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    r.metric_name = "max_residual";

    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const ScPair x{ScaledComplex::make(rng.uniform(-3.0, 3.0), rng.angle()),
                       ScaledComplex::make(rng.uniform(-3.0, 3.0), rng.angle())};
        const ScPair fx = eval_log(g, x);
        worst = std::max(worst,
                         std::abs(phi_log(ed, 1, fx) - ed.lambda1 * phi_log(ed, 1, x)));
        worst = std::max(worst,
                         std::abs(phi_log(ed, 2, fx) - ed.lambda2 * phi_log(ed, 2, x)));
    }
    r.metric = worst;
    r.pass = worst <= tol;
    return r;
}

// ---- Lelong numbers ---------------------------------------------------------------

LelongResult lelong_estimate(const Field& u, const CPair& center,
                             const std::vector<double>& radii, int sphere_samples,
                             std::uint64_t seed) {
    if (radii.size() < 2)
        throw Error("InvalidParameter", "need at least two radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 1e-8))
            throw Error("InvalidParameter", "radii must be >= 1e-8");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw Error("InvalidParameter", "radii must be strictly decreasing");
    }

    // One direction set reused across radii, so direction bias cancels in the
    // slopes.
    Rng rng(seed);
    auto normal = [&rng]() {
        double u1 = rng.uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = rng.uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    };
    std::vector<std::array<double, 4>> dirs;
    dirs.reserve(static_cast<std::size_t>(sphere_samples));
    while (static_cast<int>(dirs.size()) < sphere_samples) {
        std::array<double, 4> d{normal(), normal(), normal(), normal()};
        const double nrm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
        if (nrm < 1e-6) continue;
        for (auto& v : d) v /= nrm;
        dirs.push_back(d);
    }

    std::vector<double> maxima;
    maxima.reserve(radii.size());
    for (double rad : radii) {
        double m = -kInf;
        for (const auto& d : dirs) {
            const std::complex<double> z = center.first + rad * std::complex<double>(d[0], d[1]);
            const std::complex<double> w = center.second + rad * std::complex<double>(d[2], d[3]);
            m = std::max(m, u(z, w));
        }
        maxima.push_back(m);
    }

    LelongResult out;
    for (std::size_t j = 0; j + 1 < radii.size(); ++j) {
        out.slopes.push_back((maxima[j + 1] - maxima[j]) /
                             (std::log(radii[j + 1]) - std::log(radii[j])));
    }
    if (out.slopes.size() == 1) {
        out.nu_hat = out.slopes[0];
    } else {
        // slope_j = nu + C/|log r| + o(...); eliminate the 1/log term from the
        // last two slopes.
        auto xmid = [&radii](std::size_t j) {
            return 2.0 / std::abs(std::log(radii[j]) + std::log(radii[j + 1]));
        };
        const std::size_t J = out.slopes.size();
        const double sp = out.slopes[J - 2], sl = out.slopes[J - 1];
        const double xp = xmid(J - 2), xl = xmid(J - 1);
        const double slope_c = (sp - sl) / (xp - xl);
        out.nu_hat = sl - slope_c * xl;
    }
    return out;
}

VerificationReport lelong_report(const Field& u, const std::string& label,
                                 const CPair& center, const std::vector<double>& radii,
                                 double expected_nu, double tol, std::uint64_t seed) {
    const LelongResult lr = lelong_estimate(u, center, radii, 512, seed);
    VerificationReport r;
    r.check = "lelong_estimate";
    r.inputs = Json::object();
    r.inputs.set("function", label)
        .set("center", Json::array().push(center.first.real()).push(center.second.real()))
        .set("radii", double_array(radii))
        .set("expected_nu", expected_nu);
    r.n_samples = 512;
    r.seed = seed;
    r.tolerance = tol;
    r.metric_name = "nu_hat";
    r.metric = lr.nu_hat;
    r.pass = std::abs(lr.nu_hat - expected_nu) <= tol;
    r.details = Json::object();
    r.details.set("slopes", double_array(lr.slopes));
    return r;
}

}  // namespace kgl::verify
