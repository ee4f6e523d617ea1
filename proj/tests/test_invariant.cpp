#include <doctest.h>

#include <cmath>
#include <complex>

#include "kgl/error.hpp"
#include "kgl/invariant.hpp"
#include "kgl/kcone.hpp"
#include "kgl/rng.hpp"

using namespace kgl;
using invariant::build;
using invariant::InvariantFunction;
using kcone::PeriodicFunction;

namespace {

Germ enoki_germ() {
    auto v = validate_enoki({0.5, 0.0}, 1, {{1.0, 0.0}});
    REQUIRE(v.ok());
    return *v.germ;
}

Germ intermediate_germ(int p = 2) {
    auto v = validate_intermediate(p, 1, {1.0, 0.0}, {{1.0, 0.0}}, {0.0, 0.0});
    REQUIRE(v.ok());
    return *v.germ;
}

Germ ih_germ(const std::string& word) {
    auto v = validate_ih(word);
    REQUIRE(v.ok());
    return *v.germ;
}

PeriodicFunction small_psi(double period) {
    return {period, 0.0, {{0.0, 0.001}}};
}

}  // namespace

TEST_CASE("build validates the psi pairing") {
    CHECK_NOTHROW(build(enoki_germ(), std::nullopt));
    CHECK_THROWS_WITH_AS(build(enoki_germ(), PeriodicFunction::zero(1.0)),
                         doctest::Contains("UnexpectedPsi"), Error);
    CHECK_THROWS_WITH_AS(build(intermediate_germ(), std::nullopt),
                         doctest::Contains("MissingPsi"), Error);
    CHECK_THROWS_WITH_AS(build(intermediate_germ(), PeriodicFunction::zero(1.0)),
                         doctest::Contains("PeriodMismatch"), Error);
    // amplitude-1 sine is far outside the cone
    CHECK_THROWS_WITH_AS(
        build(intermediate_germ(), PeriodicFunction{std::log(2.0), 0.0, {{0.0, 1.0}}}),
        doctest::Contains("NotInCone"), Error);
    CHECK_NOTHROW(build(intermediate_germ(), PeriodicFunction::zero(std::log(2.0))));
}

TEST_CASE("canonical periods") {
    CHECK(invariant::canonical_period(intermediate_germ(3)) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-15));
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(invariant::canonical_period(ih_germ("S")) ==
          doctest::Approx(std::log(golden)).epsilon(1e-15));
    CHECK_THROWS_AS(invariant::canonical_period(enoki_germ()), Error);
}

TEST_CASE("point values of the three families") {
    const auto ue = build(enoki_germ(), std::nullopt);
    CHECK(ue.eval({0.5, 0.0}, {7.0, 0.0}) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(ue.eval({0.0, 0.0}, {3.0, 0.0}) == -std::numeric_limits<double>::infinity());

    const auto ui = build(intermediate_germ(), PeriodicFunction::zero(std::log(2.0)));
    // -log(-log|z|) at |z| = e^-1 is 0, for any w
    CHECK(ui.eval({std::exp(-1.0), 0.0}, {123.0, 0.0}) == doctest::Approx(0.0));
    // near the unit circle u is large positive but in-domain
    CHECK(ui.eval({0.999999, 0.0}, {0.0, 0.0}) == doctest::Approx(13.8155).epsilon(1e-3));
    CHECK(ui.eval({0.0, 0.0}, {1.0, 0.0}) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_WITH_AS(ui.eval({1.0, 0.0}, {0.0, 0.0}), doctest::Contains("OutOfDomain"),
                         Error);

    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const auto uh = build(ih_germ("S"), PeriodicFunction::zero(std::log(golden)));
    const double e1 = std::exp(-1.0);
    // phi(e^-1, e^-1) = -(1 + golden) so u = -log(1 + golden)
    CHECK(uh.eval({e1, 0.0}, {e1, 0.0}) ==
          doctest::Approx(-std::log(1.0 + golden)).epsilon(1e-12));
    CHECK(uh.eval({0.0, 0.0}, {0.5, 0.0}) == -std::numeric_limits<double>::infinity());
    // phi = -1 kills the outer log: u = -psi(0)
    const PeriodicFunction psi{std::log(golden), 0.25, {}};
    const auto uh2 = build(ih_germ("S"), psi);
    const ScPair at_phi_m1{ScaledComplex::make(-1.0, 0.0), ScaledComplex::one()};
    CHECK(uh2.eval_log(at_phi_m1) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(uh.eval({2.0, 0.0}, {3.0, 0.0}), doctest::Contains("OutOfDomain"),
                         Error);
}

TEST_CASE("automorphy constants per family") {
    const auto ue = build(enoki_germ(), std::nullopt);
    CHECK(invariant::automorphy_spec(ue).c == doctest::Approx(std::log(0.5)).epsilon(1e-15));

    const auto ui = build(intermediate_germ(), PeriodicFunction::zero(std::log(2.0)));
    CHECK(invariant::automorphy_spec(ui).c == doctest::Approx(-std::log(2.0)).epsilon(1e-15));

    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const auto uh = build(ih_germ("S"), PeriodicFunction::zero(std::log(golden)));
    CHECK(invariant::automorphy_spec(uh).c ==
          doctest::Approx(-0.4812118250596035).epsilon(1e-12));
}

TEST_CASE("functional equation u o f = u + c") {
    Rng rng(404);
    struct Case {
        Germ g;
        InvariantFunction u;
    };
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Case> cases;
    cases.push_back({enoki_germ(), build(enoki_germ(), std::nullopt)});
    cases.push_back({intermediate_germ(),
                     build(intermediate_germ(), small_psi(std::log(2.0)))});
    cases.push_back({ih_germ("S"), build(ih_germ("S"), small_psi(std::log(golden)))});

    for (const auto& [g, u] : cases) {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            ScPair x;
            if (u.family == Family::IH) {
                const auto& ed = *u.eigen;
                const double p1 = rng.uniform(-10.0, -0.1);
                const double p2 = rng.uniform(-5.0, 5.0);
                const double lw = (p1 - p2) / (ed.beta1 - ed.beta2);
                const double lz = p1 - ed.beta1 * lw;
                x = {ScaledComplex::make(lz, rng.angle()), ScaledComplex::make(lw, rng.angle())};
            } else {
                x = {ScaledComplex::make(std::log(rng.uniform(0.05, 0.9)), rng.angle()),
                     ScaledComplex::make(std::log(rng.uniform(0.001, 10.0)), rng.angle())};
            }
            const auto fx = eval_scaled(g, x);
            worst = std::max(worst, std::abs(u.eval_log(fx) - u.eval_log(x) - u.c));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("u is constant on the leaves") {
    Rng rng(505);
    const auto ue = build(enoki_germ(), std::nullopt);
    const auto ui = build(intermediate_germ(), small_psi(std::log(2.0)));
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> z = std::polar(rng.uniform(0.05, 0.9), rng.angle());
        const std::complex<double> w0 = std::polar(rng.uniform(0.01, 10.0), rng.angle());
        const std::complex<double> w1 = std::polar(rng.uniform(0.01, 10.0), rng.angle());
        CHECK(ue.eval(z, w0) == ue.eval(z, w1));
        CHECK(ui.eval(z, w0) == ui.eval(z, w1));
    }

    // ih: u constant on {alpha zeta + beta omega = const} in log coordinates
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const auto uh = build(ih_germ("S"), small_psi(std::log(golden)));
    const auto& ed = *uh.eigen;
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> zeta(rng.uniform(-3.0, -1.0), rng.angle());
        const std::complex<double> omega(rng.uniform(-3.0, -1.0), rng.angle());
        const double base =
            uh.eval_log({ScaledComplex::make(zeta.real(), zeta.imag()),
                         ScaledComplex::make(omega.real(), omega.imag())});
        // tangent direction (beta, -alpha) = (beta1, -1)
        const std::complex<double> t = std::polar(rng.uniform(0.0, 0.5), rng.angle());
        const auto zeta2 = zeta + ed.beta1 * t;
        const auto omega2 = omega - t;
        const double moved =
            uh.eval_log({ScaledComplex::make(zeta2.real(), zeta2.imag()),
                         ScaledComplex::make(omega2.real(), omega2.imag())});
        CHECK(std::abs(moved - base) <= 1e-10);
    }
}

TEST_CASE("intermediate u depends only on |z|") {
    Rng rng(606);
    const auto ui = build(intermediate_germ(), small_psi(std::log(2.0)));
    for (int i = 0; i < 100; ++i) {
        const double r = rng.uniform(0.05, 0.95);
        const double base = ui.eval({r, 0.0}, {1.0, 0.0});
        const double rotated = ui.eval(std::polar(r, rng.angle()), {-2.0, 0.3});
        CHECK(std::abs(rotated - base) <= 1e-12 * (1.0 + std::abs(base)));
    }
}

TEST_CASE("radial profile is strictly increasing for cone members") {
    // -psi'' + psi' + 1 >= 0 plus periodicity forces 1 + psi' > 0, hence
    // v'(r) = (1 + psi'(log(-log r)))/(r(-log r)) > 0.
    Rng rng(707);
    for (int trial = 0; trial < 10; ++trial) {
        PeriodicFunction psi{std::log(2.0), 0.0, {}};
        const int k = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        for (int i = 0; i < k; ++i)
            psi.harmonics.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        const double eps = kcone::max_scale(psi);
        if (std::isfinite(eps)) psi = psi.scaled(0.9 * eps);
        const auto u = build(intermediate_germ(), psi);
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 200; ++i) {
            const double r = 0.005 * i * 0.98;
            const double v = u.eval({r, 0.0}, {0.0, 0.0});
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("radial operator sign matches the cone inequality") {
    // v(r) = u(r, .); v'' + v'/r = (-psi'' + psi' + 1)(log(-log r)) / (r log r)^2,
    // checked by central differences against the closed form.
    const double h = 1e-4;
    auto check_germ = [&](const PeriodicFunction& psi, bool expect_all_nonneg) {
        InvariantFunction u;
        u.family = Family::Intermediate;
        u.psi = psi;
        u.c = -std::log(2.0);
        auto v = [&u](double r) { return u.eval({r, 0.0}, {0.0, 0.0}); };
        bool all_nonneg = true;
        for (int i = 0; i < 50; ++i) {
            const double r = 0.1 + 0.7 * i / 49.0;
            const double fd = (v(r + h) - 2.0 * v(r) + v(r - h)) / (h * h) +
                              (v(r + h) - v(r - h)) / (2.0 * h * r);
            const double L = -std::log(r);
            const double t = std::log(L);
            const double closed =
                (-psi.eval(t, 2) + psi.eval(t, 1) + 1.0) / (r * r * L * L);
            CHECK(std::abs(fd - closed) <= 1e-4 * std::max(1.0, std::abs(closed)));
            if (fd < -1e-4) all_nonneg = false;
        }
        CHECK(all_nonneg == expect_all_nonneg);
    };

    check_germ(PeriodicFunction::zero(std::log(2.0)), true);
    check_germ(small_psi(std::log(2.0)), true);
    // amplitude far beyond the critical scale turns the operator negative somewhere
    check_germ(PeriodicFunction{std::log(2.0), 0.0, {{0.0, 1.0}}}, false);
}
