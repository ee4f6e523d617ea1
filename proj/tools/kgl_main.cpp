// kgl: batch front end for the contracting-germ families, their invariant
// plurisubharmonic functions, and the numerical verification suites.
//
// Exit codes: 0 all checks passed, 1 at least one suite failed,
// 2 input or validation error.

#include <CLI11.hpp>

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kgl/error.hpp"
#include "kgl/germ.hpp"
#include "kgl/germ_io.hpp"
#include "kgl/invariant.hpp"
#include "kgl/kcone.hpp"
#include "kgl/report.hpp"
#include "kgl/svg.hpp"
#include "kgl/verification.hpp"

namespace {

using namespace kgl;
namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --germ/--psi accept inline JSON or a path to a JSON file.
std::string load_spec(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw Error("InputError", "cannot read spec file: " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("OutputError", "cannot write " + path.string());
    out << content;
}

int input_error(const std::string& code, const std::string& message) {
    Json j = Json::object();
    j.set("error", code).set("message", message);
    std::cout << j.dump(2);
    return 2;
}

Json issues_json(const ValidationResult& vr) {
    Json errors = Json::array();
    Json details = Json::array();
    for (const auto& issue : vr.issues) {
        errors.push(issue.code);
        details.push(Json::object().set("code", issue.code).set("detail", issue.detail));
    }
    Json j = Json::object();
    j.set("valid", vr.ok()).set("errors", errors).set("details", details);
    return j;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("KGL_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 0);
        if (end != env && *end == '\0') return v;
    }
    return verify::kDefaultSeed;
}

struct VerifyOptions {
    std::string germ_arg, psi_arg, suites, out_dir = ".", tamper;
    int samples = 1000;
    std::uint64_t seed = verify::kDefaultSeed;
    double tol = 1e-9;
    double fd_step = 1e-3;
    bool dump = false;
    // containment parameters
    double r2 = 2.0;
    double radius = 0.5, r_prime = 1.0;
    int n_min = 4, n_max = -1;  // -1: family default
    double c1 = 1.0, delta = std::exp(1.0), c2 = 1.0;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<double> default_radii() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

int run_validate(const std::string& germ_arg) {
    ValidationResult vr;
    try {
        vr = io::germ_from_json(load_spec(germ_arg));
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    std::cout << issues_json(vr).dump(2);
    return vr.ok() ? 0 : 2;
}

int run_analyze(const std::string& germ_arg, const std::string& out_dir) {
    ValidationResult vr;
    try {
        vr = io::germ_from_json(load_spec(germ_arg));
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    if (!vr.ok()) {
        std::cout << issues_json(vr).dump(2);
        return 2;
    }
    const Germ& g = *vr.germ;
    Json j = Json::object();
    j.set("germ", io::germ_to_json(g));
    if (const auto* ih = std::get_if<IHGerm>(&g)) {
        const auto ed = eigen_data(ih->m);
        Json matrix = Json::array();
        matrix.push(Json::array().push(ih->m.a).push(ih->m.b));
        matrix.push(Json::array().push(ih->m.c).push(ih->m.d));
        j.set("matrix", matrix);
        j.set("det", ih->m.det());
        j.set("disc", ed.disc);
        j.set("eigen", io::eigen_to_json(ed));
        j.set("classification", to_string(trace_dichotomy(ih->word.letters)));
        j.set("automorphy_constant", -std::log(ed.lambda1));
        j.set("psi_period", std::log(ed.lambda1));
    } else if (const auto* im = std::get_if<IntermediateGerm>(&g)) {
        j.set("automorphy_constant", -std::log(static_cast<double>(im->p)));
        j.set("psi_period", std::log(static_cast<double>(im->p)));
        j.set("C1", verify::compute_C1(im->full_q()));
    } else {
        const auto& e = std::get<EnokiGerm>(g);
        j.set("automorphy_constant", std::log(std::abs(e.alpha)));
        j.set("C1", verify::compute_C1(e.q));
    }
    const std::string text = j.dump(2);
    std::cout << text;
    if (!out_dir.empty()) write_file(fs::path(out_dir) / "analyze.json", text);
    return 0;
}

kcone::PeriodicFunction default_psi(const Germ& g) {
    return kcone::PeriodicFunction::zero(invariant::canonical_period(g));
}

int run_verify(const VerifyOptions& opt) {
    ValidationResult vr;
    try {
        vr = io::germ_from_json(load_spec(opt.germ_arg));
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    if (!vr.ok()) {
        std::cout << issues_json(vr).dump(2);
        return 2;
    }
    const Germ& g = *vr.germ;
    const Family family = family_of(g);

    std::optional<kcone::PeriodicFunction> psi;
    try {
        if (!opt.psi_arg.empty())
            psi = io::psi_from_json(load_spec(opt.psi_arg));
        else if (family != Family::Enoki)
            psi = default_psi(g);

        if (opt.tamper == "overscale-psi") {
            if (family == Family::Enoki)
                return input_error("InvalidParameter",
                                   "overscale-psi needs a family with a psi part");
            kcone::PeriodicFunction base = *psi;
            if (base.is_zero()) base = {base.period, 0.0, {{0.0, 1.0}}};
            psi = base.scaled(1.1 * kcone::max_scale(base));
        }
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }

    invariant::InvariantFunction u;
    try {
        u = invariant::build(g, psi);
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }

    verify::UHandle h;
    if (opt.tamper == "perturb-eigenvector") {
        if (family != Family::IH)
            return input_error("InvalidParameter", "perturb-eigenvector needs an ih germ");
        u.eigen->beta1 += 0.05;
        h = verify::handle(u);
    } else if (opt.tamper == "add-wsq") {
        h = verify::tamper_add_wsq(verify::handle(u));
    } else if (opt.tamper.empty() || opt.tamper == "overscale-psi") {
        h = verify::handle(u);
    } else {
        return input_error("InvalidParameter", "unknown tamper hook: " + opt.tamper);
    }

    const auto suites = split_csv(opt.suites);
    for (const auto& s : suites)
        if (s != "invariance" && s != "levi" && s != "foliation" && s != "containment" &&
            s != "lelong" && s != "equivariance")
            return input_error("InvalidParameter", "unknown suite: " + s);

    Json summary_suites = Json::array();
    bool all_pass = true;
    for (const auto& suite : suites) {
        VerificationReport rep;
        verify::SampleDump dump;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            verify::SampleDump* sink = opt.dump ? &dump : nullptr;
            if (suite == "invariance") {
                rep = verify::invariance_residual(h, g, opt.samples, opt.seed, opt.tol, sink);
            } else if (suite == "levi") {
                rep = verify::levi_psd_check(h, opt.samples, opt.fd_step, opt.seed, 1e-4, sink);
            } else if (suite == "foliation") {
                rep = verify::foliation_check(h, opt.samples, opt.fd_step, opt.seed, 1e-6,
                                              1e-10, sink);
            } else if (suite == "containment") {
                if (family == Family::Enoki) {
                    rep = verify::enoki_containment(std::get<EnokiGerm>(g), opt.r2,
                                                    opt.n_max < 0 ? 20 : opt.n_max,
                                                    opt.samples, opt.seed, sink);
                } else if (family == Family::Intermediate) {
                    rep = verify::intermediate_containment(
                        std::get<IntermediateGerm>(g), opt.radius, opt.r_prime, opt.n_min,
                        opt.n_max < 0 ? 40 : opt.n_max, opt.samples, opt.seed, sink);
                } else {
                    rep = verify::ih_box_check(std::get<IHGerm>(g), *u.eigen, opt.c1,
                                               opt.delta, opt.c2,
                                               opt.n_max < 0 ? 10 : opt.n_max, opt.samples,
                                               opt.seed, sink);
                }
            } else if (suite == "lelong") {
                auto field = [&h](std::complex<double> z, std::complex<double> w) {
                    return h.eval(z, w);
                };
                const double expected = family == Family::Enoki ? 1.0 : 0.0;
                const double tol = family == Family::Enoki ? 1e-3 : 1e-2;
                rep = verify::lelong_report(field, "u", {{0, 0}, {0, 0}}, default_radii(),
                                            expected, tol, opt.seed);
            } else {  // equivariance (ih only)
                if (family != Family::IH)
                    return input_error("InvalidParameter",
                                       "equivariance applies to ih germs only");
                rep = verify::phi_equivariance(std::get<IHGerm>(g), *u.eigen, opt.samples,
                                               opt.seed);
            }
        } catch (const Error& e) {
            rep.check = suite;
            rep.n_samples = opt.samples;
            rep.seed = opt.seed;
            rep.metric_name = "error";
            rep.metric = 0.0;
            rep.pass = false;
            rep.details = Json::object();
            rep.details.set("error", e.code()).set("message", e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        write_file(fs::path(opt.out_dir) / (suite + ".json"), rep.to_json_string());
        if (opt.dump && !dump.rows.empty()) {
            write_file(fs::path(opt.out_dir) / (suite + "_samples.csv"), dump.to_csv());
            if (suite == "invariance") {
                // sampled values of u alone: (re z, im z, re w, im w, u)
                verify::SampleDump uvals;
                uvals.header = {"re_z", "im_z", "re_w", "im_w", "u"};
                for (const auto& row : dump.rows)
                    uvals.rows.push_back({row[0], row[1], row[2], row[3], row[4]});
                write_file(fs::path(opt.out_dir) / "u_samples.csv", uvals.to_csv());
            }
        }

        all_pass = all_pass && rep.pass;
        std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << suite << " " << rep.metric_name
                  << "=" << fmt17(rep.metric) << "\n";
        std::cerr << "suite " << suite << ": " << rep.runtime_ms << " ms\n";

        summary_suites.push(Json::object()
                                .set("suite", suite)
                                .set("check", rep.check)
                                .set(rep.metric_name, rep.metric)
                                .set("pass", rep.pass));
    }

    Json summary = Json::object();
    summary.set("family", to_string(family));
    summary.set("germ", io::germ_to_json(g));
    if (u.psi) summary.set("psi", io::psi_to_json(*u.psi));
    if (u.eigen) summary.set("eigen", io::eigen_to_json(*u.eigen));
    summary.set("c", u.c);
    summary.set("seed", opt.seed);
    summary.set("samples", opt.samples);
    if (!opt.tamper.empty()) summary.set("tamper", opt.tamper);
    summary.set("suites", summary_suites);
    summary.set("all_pass", all_pass);
    write_file(fs::path(opt.out_dir) / "summary.json", summary.dump(2));

    return all_pass ? 0 : 1;
}

int run_kcone(const std::string& psi_arg, int grid_n, double tol) {
    kcone::PeriodicFunction psi;
    try {
        psi = io::psi_from_json(load_spec(psi_arg));
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    const auto mem = kcone::membership(psi, grid_n, tol);
    const double eps = kcone::max_scale(psi, grid_n);
    Json j = Json::object();
    j.set("period", psi.period)
        .set("min_value", mem.min_value)
        .set("grid_slack", mem.grid_slack)
        .set("tolerance", tol)
        .set("pass", mem.pass)
        .set("eps_star", std::isfinite(eps) ? Json(eps) : Json("inf"));
    std::cout << j.dump(2);
    return mem.pass ? 0 : 1;
}

int run_lelong(const std::string& germ_arg, const std::string& psi_arg,
               const std::string& out_dir, std::uint64_t seed) {
    ValidationResult vr;
    try {
        vr = io::germ_from_json(load_spec(germ_arg));
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    if (!vr.ok()) {
        std::cout << issues_json(vr).dump(2);
        return 2;
    }
    const Germ& g = *vr.germ;
    invariant::InvariantFunction u;
    try {
        std::optional<kcone::PeriodicFunction> psi;
        if (!psi_arg.empty()) psi = io::psi_from_json(load_spec(psi_arg));
        else if (family_of(g) != Family::Enoki) psi = default_psi(g);
        u = invariant::build(g, psi);
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    auto field = [&u](std::complex<double> z, std::complex<double> w) {
        return u.eval(z, w);
    };
    const double expected = u.family == Family::Enoki ? 1.0 : 0.0;
    const double tol = u.family == Family::Enoki ? 1e-3 : 1e-2;
    const auto rep =
        verify::lelong_report(field, "u", {{0, 0}, {0, 0}}, default_radii(), expected, tol, seed);
    const std::string text = rep.to_json_string();
    std::cout << text;
    if (!out_dir.empty()) write_file(fs::path(out_dir) / "lelong.json", text);
    return rep.pass ? 0 : 1;
}

int run_plot(const std::string& germ_arg, const std::string& psi_arg,
             const std::string& out_dir) {
    ValidationResult vr;
    try {
        vr = io::germ_from_json(load_spec(germ_arg));
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    if (!vr.ok()) {
        std::cout << issues_json(vr).dump(2);
        return 2;
    }
    const Germ& g = *vr.germ;
    invariant::InvariantFunction u;
    try {
        std::optional<kcone::PeriodicFunction> psi;
        if (!psi_arg.empty()) psi = io::psi_from_json(load_spec(psi_arg));
        else if (family_of(g) != Family::Enoki) psi = default_psi(g);
        u = invariant::build(g, psi);
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }

    try {
        const int n = 512;
        if (u.psi) {
            const auto& p = *u.psi;
            svg::Series s_psi{"psi(t)", "#1f77b4", {}};
            svg::Series s_g{"-psi'' + psi' + 1", "#d62728", {}};
            for (int i = 0; i <= n; ++i) {
                const double t = p.period * i / n;
                s_psi.points.emplace_back(t, p.eval(t, 0));
                s_g.points.emplace_back(t, -p.eval(t, 2) + p.eval(t, 1) + 1.0);
            }
            write_file(fs::path(out_dir) / "psi.svg",
                       svg::line_chart("periodic part over one period", "t", "value",
                                       {s_psi, s_g}));
        }
        if (u.family != Family::IH) {
            svg::Series s_v{"v(r) = u(r, .)", "#2ca02c", {}};
            for (int i = 1; i < n; ++i) {
                const double r = static_cast<double>(i) / n * 0.98;
                if (r <= 0.0) continue;
                s_v.points.emplace_back(r, u.eval({r, 0.0}, {1.0, 0.0}));
            }
            write_file(fs::path(out_dir) / "v_of_r.svg",
                       svg::line_chart("radial profile", "r", "v(r)", {s_v}));
        } else {
            // diagonal slice z = w = t; u plotted against log(-phi)
            svg::Series s_u{"u(t, t)", "#9467bd", {}};
            for (int i = 1; i < n; ++i) {
                const double t = static_cast<double>(i) / n * 0.95;
                const double lt = std::log(t);
                const double ph = lt + u.eigen->beta1 * lt;
                if (!(ph < 0.0)) continue;
                s_u.points.emplace_back(std::log(-ph),
                                        u.eval_log({ScaledComplex::make(lt, 0.0),
                                                    ScaledComplex::make(lt, 0.0)}));
            }
            write_file(fs::path(out_dir) / "u_slice.svg",
                       svg::line_chart("u along the diagonal slice", "log(-phi)", "u",
                                       {s_u}));
        }
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kgl: contracting germ normal forms, invariant plurisubharmonic "
                 "functions, and numerical verification suites"};
    app.require_subcommand(1);

    std::string germ_arg, psi_arg, out_dir;  // empty: print to stdout only
    VerifyOptions vopt;
    vopt.seed = default_seed();
    int grid_n = 8192;
    double kcone_tol = 1e-9;

    auto* c_validate = app.add_subcommand("validate", "check a germ spec");
    c_validate->add_option("--germ", germ_arg, "germ JSON (path or inline)")->required();

    auto* c_analyze = app.add_subcommand("analyze", "matrix/eigen analysis of a germ");
    c_analyze->add_option("--germ", germ_arg, "germ JSON (path or inline)")->required();
    c_analyze->add_option("--out", out_dir, "output directory");

    auto* c_verify = app.add_subcommand("verify", "run verification suites");
    c_verify->add_option("--germ", vopt.germ_arg, "germ JSON (path or inline)")->required();
    c_verify->add_option("--psi", vopt.psi_arg, "periodic part JSON (path or inline)");
    c_verify->add_option("--suites", vopt.suites,
                         "comma list from invariance,levi,foliation,containment,lelong,"
                         "equivariance");
    c_verify->add_option("--samples", vopt.samples, "samples per suite");
    c_verify->add_option("--seed", vopt.seed, "RNG seed (KGL_SEED overrides the default)");
    c_verify->add_option("--tol", vopt.tol, "invariance tolerance");
    c_verify->add_option("--fd-step", vopt.fd_step, "finite-difference step");
    c_verify->add_option("--out", vopt.out_dir, "report directory");
    c_verify->add_flag("--dump", vopt.dump, "write per-sample CSV dumps");
    c_verify->add_option("--tamper", vopt.tamper,
                         "falsification hook: add-wsq | perturb-eigenvector | overscale-psi");
    c_verify->add_option("--r2", vopt.r2, "enoki polydisc second radius");
    c_verify->add_option("--radius", vopt.radius, "intermediate polydisc |z| radius");
    c_verify->add_option("--rprime", vopt.r_prime, "intermediate polydisc |w| radius");
    c_verify->add_option("--nmin", vopt.n_min, "first iterate required to contain");
    c_verify->add_option("--nmax", vopt.n_max, "last iterate checked");
    c_verify->add_option("--c1", vopt.c1, "band level c1");
    c_verify->add_option("--delta", vopt.delta, "band width delta");
    c_verify->add_option("--c2", vopt.c2, "band level c2");

    auto* c_kcone = app.add_subcommand("kcone", "membership and critical scale of psi");
    c_kcone->add_option("--psi", psi_arg, "periodic part JSON (path or inline)")->required();
    c_kcone->add_option("--grid", grid_n, "grid points per period");
    c_kcone->add_option("--tol", kcone_tol, "membership tolerance");

    auto* c_lelong = app.add_subcommand("lelong", "Lelong number estimate at the origin");
    c_lelong->add_option("--germ", germ_arg, "germ JSON (path or inline)")->required();
    c_lelong->add_option("--psi", psi_arg, "periodic part JSON (path or inline)");
    c_lelong->add_option("--out", out_dir, "output directory");
    c_lelong->add_option("--seed", vopt.seed, "RNG seed");

    auto* c_plot = app.add_subcommand("plot", "emit SVG plots");
    c_plot->add_option("--germ", germ_arg, "germ JSON (path or inline)")->required();
    c_plot->add_option("--psi", psi_arg, "periodic part JSON (path or inline)");
    c_plot->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) return run_validate(germ_arg);
        if (c_analyze->parsed()) return run_analyze(germ_arg, out_dir);
        if (c_verify->parsed()) {
            if (vopt.suites.empty())
                vopt.suites = "invariance,levi,foliation,containment,lelong";
            if (vopt.out_dir.empty()) vopt.out_dir = ".";
            return run_verify(vopt);
        }
        if (c_kcone->parsed()) return run_kcone(psi_arg, grid_n, kcone_tol);
        if (c_lelong->parsed()) return run_lelong(germ_arg, psi_arg, out_dir, vopt.seed);
        if (c_plot->parsed())
            return run_plot(germ_arg, psi_arg, out_dir.empty() ? "." : out_dir);
    } catch (const Error& e) {
        return input_error(e.code(), e.what());
    } catch (const std::exception& e) {
        return input_error("InternalError", e.what());
    }
    return 0;
}
