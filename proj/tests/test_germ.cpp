#include <doctest.h>

#include <cmath>
#include <complex>

#include "kgl/error.hpp"
#include "kgl/germ.hpp"
#include "kgl/germ_io.hpp"
#include "kgl/rng.hpp"

using namespace kgl;

namespace {

bool has_issue(const ValidationResult& r, const std::string& code) {
    for (const auto& issue : r.issues)
        if (issue.code == code) return true;
    return false;
}

Germ enoki_qz(double alpha_mod = 0.5) {
    // f(z, w) = (alpha z, w z + z)
    auto v = validate_enoki({alpha_mod, 0.0}, 1, {{1.0, 0.0}});
    REQUIRE(v.ok());
    return *v.germ;
}

Germ intermediate_p2() {
    // f(z, w) = (z^2, w z + z)
    auto v = validate_intermediate(2, 1, {1.0, 0.0}, {{1.0, 0.0}}, {0.0, 0.0});
    REQUIRE(v.ok());
    return *v.germ;
}

Germ ih_word(const std::string& w) {
    auto v = validate_ih(w);
    REQUIRE(v.ok());
    return *v.germ;
}

}  // namespace

TEST_CASE("validation accepts the basic members of each family") {
    CHECK(validate_enoki({0.5, 0.0}, 1, {{1.0, 0.0}}).ok());
    CHECK(validate_intermediate(2, 1, {1.0, 0.0}, {{1.0, 0.0}}, {0.0, 0.0}).ok());
    CHECK(validate_ih("S").ok());
    CHECK(validate_ih("SST").ok());
}

TEST_CASE("validation rejects and reports every violated condition") {
    CHECK(has_issue(validate_enoki({1.5, 0.0}, 1, {}), "AlphaOutOfDisc"));
    CHECK(has_issue(validate_enoki({0.0, 0.0}, 1, {}), "AlphaOutOfDisc"));
    CHECK(has_issue(validate_enoki({0.5, 0.0}, 1, {{1, 0}, {1, 0}}), "DegreeTooHigh"));

    // gcd{2, 2} = 2
    CHECK(has_issue(validate_intermediate(2, 2, {1, 0}, {{0, 0}, {1, 0}}, {0, 0}),
                    "GcdCondition"));
    // all a_m zero forces gcd = p
    CHECK(has_issue(validate_intermediate(3, 2, {1, 0}, {}, {0, 0}), "GcdCondition"));
    // a != 0 with lambda != 1
    CHECK(has_issue(validate_intermediate(2, 1, {2, 0}, {{1, 0}}, {1, 0}), "ForbiddenA"));
    // a != 0 with (p-1) not dividing s: both conditions fire
    {
        const auto r = validate_intermediate(3, 1, {1, 0}, {{1, 0}}, {1, 0});
        CHECK(has_issue(r, "ForbiddenA"));
        CHECK(has_issue(r, "NonIntegerExponent"));
    }
    // a != 0 with (p-1) | s and lambda = 1 is legal
    CHECK(validate_intermediate(2, 1, {1, 0}, {{1, 0}}, {0.5, 0.0}).ok());

    CHECK(has_issue(validate_ih("TT"), "NoSFactor"));
    CHECK(has_issue(validate_ih(""), "InvalidParameter"));
    CHECK(has_issue(validate_ih("SXT"), "InvalidParameter"));

    // multiple violations reported together
    const auto multi = validate_enoki({2.0, 0.0}, 1, {{1, 0}, {1, 0}});
    CHECK(multi.issues.size() >= 2);
    const auto multi2 = validate_intermediate(2, 2, {0, 0}, {{0, 0}, {1, 0}}, {0, 0});
    CHECK(has_issue(multi2, "InvalidParameter"));
    CHECK(has_issue(multi2, "GcdCondition"));
}

TEST_CASE("eval substitutes into the normal forms") {
    const CPair p{{0.5, 0.0}, {1.0, 0.0}};

    const auto e = eval(enoki_qz(), p);
    CHECK(e.first == std::complex<double>(0.25, 0.0));
    CHECK(e.second == std::complex<double>(1.0, 0.0));

    // word "S": f(z, w) = (w, z w)
    const auto s = eval(ih_word("S"), {{0.5, 0.0}, {0.5, 0.0}});
    CHECK(s.first == std::complex<double>(0.5, 0.0));
    CHECK(s.second == std::complex<double>(0.25, 0.0));

    const auto m = eval(intermediate_p2(), p);
    CHECK(m.first == std::complex<double>(0.25, 0.0));
    CHECK(m.second == std::complex<double>(1.0, 0.0));
}

TEST_CASE("intermediate domain is strictly |z| < 1") {
    const auto g = intermediate_p2();
    CHECK_THROWS_AS(eval(g, {{1.0, 0.0}, {0.0, 0.0}}), Error);
    CHECK_THROWS_AS(eval_scaled(g, {ScaledComplex::one(), ScaledComplex::one()}), Error);
    CHECK_NOTHROW(eval(g, {{0.999999, 0.0}, {5.0, 0.0}}));
}

TEST_CASE("eval_log applies the integer matrix to log coordinates") {
    const auto g = std::get<IHGerm>(ih_word("S"));
    const ScPair p{ScaledComplex::make(-1.0, 0.0), ScaledComplex::make(-1.0, 0.0)};
    const auto fp = eval_log(g, p);
    CHECK(fp.first.log_mod == -1.0);
    CHECK(fp.second.log_mod == -2.0);

    // zero-absorbing convention: (-inf, -1) -> (-1, -inf)
    const auto z = eval_log(g, {ScaledComplex::zero(), ScaledComplex::make(-1.0, 0.0)});
    CHECK(z.first.log_mod == -1.0);
    CHECK(z.second.is_zero());
    CHECK(z.second.arg == 0.0);

    // word "SS" has matrix [[1,1],[1,2]]
    const auto g2 = std::get<IHGerm>(ih_word("SS"));
    const auto q = eval_log(g2, {ScaledComplex::make(-1.0, 0.0), ScaledComplex::make(0.0, 0.0)});
    CHECK(q.first.log_mod == -1.0);
    CHECK(q.second.log_mod == -1.0);
}

TEST_CASE("iterate returns the full trajectory") {
    // hand iteration of (alpha z, w z + z) from (1, 0)
    const auto g = enoki_qz();
    const auto orbit = iterate(g, to_scaled({{1.0, 0.0}, {0.0, 0.0}}), 2);
    REQUIRE(orbit.size() == 3);
    CHECK(to_complex(orbit[0]).first == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(to_complex(orbit[1]).first - 0.5) < 1e-15);
    CHECK(std::abs(to_complex(orbit[1]).second - 1.0) < 1e-12);
    CHECK(std::abs(to_complex(orbit[2]).first - 0.25) < 1e-15);
    CHECK(std::abs(to_complex(orbit[2]).second - 1.0) < 1e-12);

    // n = 0 is the identity case
    const auto only = iterate(g, to_scaled({{0.3, 0.1}, {2.0, 0.0}}), 0);
    REQUIRE(only.size() == 1);

    // Fibonacci-type growth of log-moduli for the word "S"
    const auto s = ih_word("S");
    const auto fib = iterate(s, {ScaledComplex::make(-1, 0), ScaledComplex::make(-1, 0)}, 3);
    CHECK(fib[1].first.log_mod == -1.0);
    CHECK(fib[1].second.log_mod == -2.0);
    CHECK(fib[2].first.log_mod == -2.0);
    CHECK(fib[2].second.log_mod == -3.0);
    CHECK(fib[3].first.log_mod == -3.0);
    CHECK(fib[3].second.log_mod == -5.0);
}

TEST_CASE("standard and scaled evaluation agree on in-domain points") {
    Rng rng(101);
    const Germ germs[] = {enoki_qz(), intermediate_p2(), ih_word("SST")};
    for (const auto& g : germs) {
        for (int i = 0; i < 200; ++i) {
            const std::complex<double> z = std::polar(rng.uniform(0.05, 0.9), rng.angle());
            const std::complex<double> w = std::polar(rng.uniform(0.1, 3.0), rng.angle());
            const auto direct = eval(g, {z, w});
            const auto scaled = to_complex(eval_scaled(g, to_scaled({z, w})));
            CHECK(std::abs(direct.first - scaled.first) <= 1e-12 * std::abs(direct.first));
            if (std::abs(direct.second) > 1e-290)
                CHECK(std::abs(direct.second - scaled.second) <=
                      1e-12 * std::abs(direct.second));
        }
    }
}

TEST_CASE("ih iterates follow the exact integer matrix power") {
    Rng rng(55);
    for (const char* word : {"S", "ST", "TS", "SST"}) {
        const auto g = ih_word(word);
        const auto m = word_to_matrix(word);
        for (int trial = 0; trial < 20; ++trial) {
            const ScPair start{ScaledComplex::make(rng.uniform(-3.0, -0.1), rng.angle()),
                               ScaledComplex::make(rng.uniform(-3.0, -0.1), rng.angle())};
            const int n = 30;
            const auto orbit = iterate(g, start, n);
            const auto an = matrix_power(m, n);
            const double ez = static_cast<double>(an.a) * start.first.log_mod +
                              static_cast<double>(an.b) * start.second.log_mod;
            const double ew = static_cast<double>(an.c) * start.first.log_mod +
                              static_cast<double>(an.d) * start.second.log_mod;
            const double scale = std::max({1.0, std::abs(ez), std::abs(ew)});
            CHECK(std::abs(orbit[n].first.log_mod - ez) <= 1e-10 * scale);
            CHECK(std::abs(orbit[n].second.log_mod - ew) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("germ json round trip") {
    const auto parsed = io::germ_from_json(
        R"({"family":"enoki","alpha":[0.5,0.0],"s":1,"Q":[[1.0,0.0]]})");
    REQUIRE(parsed.ok());
    const auto text = io::germ_to_json(*parsed.germ).dump();
    const auto again = io::germ_from_json(text);
    REQUIRE(again.ok());
    CHECK(std::get<EnokiGerm>(*again.germ).alpha == std::complex<double>(0.5, 0.0));

    CHECK_THROWS_AS(io::germ_from_json("not json"), Error);
    CHECK_FALSE(io::germ_from_json(R"({"family":"ih","word":"TT"})").ok());
}
