#include <doctest.h>

#include <cmath>
#include <string>

#include "kgl/error.hpp"
#include "kgl/germ.hpp"
#include "kgl/matrix2.hpp"
#include "kgl/rng.hpp"
#include "kgl/verification.hpp"

using namespace kgl;

namespace {

std::string random_word(Rng& rng, int max_len) {
    const int len = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(max_len)));
    std::string w;
    for (int i = 0; i < len; ++i) w += rng.bernoulli(0.5) ? 'S' : 'T';
    if (w.find('S') == std::string::npos)
        w[static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(len)))] = 'S';
    return w;
}

}  // namespace

TEST_CASE("word products are exact left-to-right") {
    const auto s = word_to_matrix("S");
    CHECK(s == IntMatrix2{0, 1, 1, 1});
    CHECK(word_to_matrix("SS") == IntMatrix2{1, 1, 1, 2});
    CHECK(word_to_matrix("TS") == IntMatrix2{1, 2, 1, 1});
    CHECK(word_to_matrix("ST") == IntMatrix2{0, 1, 1, 2});
    // independent oracle: hand multiplication
    const auto sst = mul(mul(word_to_matrix("S"), word_to_matrix("S")), word_to_matrix("T"));
    CHECK(word_to_matrix("SST") == sst);
    CHECK_THROWS_AS(word_to_matrix("SXT"), Error);
}

TEST_CASE("long words overflow cleanly") {
    CHECK_NOTHROW(word_to_matrix(std::string(85, 'S')));
    CHECK_THROWS_AS(word_to_matrix(std::string(100, 'S')), Error);
    // entries fit but trace^2 does not
    CHECK_THROWS_AS(eigen_data(word_to_matrix(std::string(85, 'S'))), Error);
}

TEST_CASE("perfect square test is exact") {
    CHECK(is_perfect_square(0));
    CHECK(is_perfect_square(1));
    CHECK(is_perfect_square(4));
    CHECK(is_perfect_square(1LL << 52));
    CHECK_FALSE(is_perfect_square(5));
    CHECK_FALSE(is_perfect_square(8));
    CHECK_FALSE(is_perfect_square(-4));
    CHECK_FALSE(is_perfect_square((1LL << 52) + 1));
    // near the rounding edge of double sqrt
    const std::int64_t big = 3037000499LL;  // floor(sqrt(2^63 - 1))
    CHECK(is_perfect_square(big * big));
    CHECK_FALSE(is_perfect_square(big * big - 1));
}

TEST_CASE("eigen data of the golden-ratio word") {
    const auto ed = eigen_data(word_to_matrix("S"));
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;  // quadratic-formula oracle
    CHECK(std::abs(ed.lambda1 - golden) < 1e-15);
    CHECK(std::abs(ed.lambda2 - (1.0 - std::sqrt(5.0)) / 2.0) < 1e-15);
    CHECK(std::abs(ed.beta1 - golden) < 1e-15);
    CHECK(std::abs(ed.beta2 + (std::sqrt(5.0) - 1.0) / 2.0) < 1e-15);
    CHECK(ed.det == -1);
    CHECK(ed.disc == 5);
}

TEST_CASE("eigen data of further small words") {
    const auto ss = eigen_data(word_to_matrix("SS"));
    CHECK(std::abs(ss.lambda1 - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-14);
    CHECK(ss.det == 1);

    const auto ts = eigen_data(word_to_matrix("TS"));
    CHECK(std::abs(ts.lambda1 - (1.0 + std::sqrt(2.0))) < 1e-14);
    CHECK(ts.det == -1);
}

TEST_CASE("degenerate spectra are rejected") {
    CHECK_THROWS_AS(eigen_data(IntMatrix2{1, 0, 0, 1}), Error);   // disc = 0
    CHECK_THROWS_AS(eigen_data(IntMatrix2{2, 1, 0, 1}), Error);   // integer spectrum
    CHECK_THROWS_AS(eigen_data(IntMatrix2{3, 2, 2, 3}), Error);   // disc = 16, square
}

TEST_CASE("eigen structure over random valid words") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto word = random_word(rng, 12);
        CAPTURE(word);
        const auto m = word_to_matrix(word);
        const auto d = m.det();
        CHECK((d == 1 || d == -1));
        const auto ed = eigen_data(m);
        CHECK(ed.lambda1 > 1.0 + 1e-9);
        CHECK(ed.beta1 > 0.0);        // alpha beta > 0 with alpha = 1
        CHECK(ed.beta2 < 0.0);        // alpha2 beta2 < 0
        CHECK_FALSE(is_perfect_square(ed.disc));
        // residual of A^t v = lambda v in the max norm
        auto residual = [&](double lambda, double beta) {
            const double r1 = static_cast<double>(m.a) + static_cast<double>(m.c) * beta -
                              lambda;
            const double r2 = static_cast<double>(m.b) + static_cast<double>(m.d) * beta -
                              lambda * beta;
            return std::max(std::abs(r1), std::abs(r2));
        };
        CHECK(residual(ed.lambda1, ed.beta1) <= 1e-12);
        CHECK(residual(ed.lambda2, ed.beta2) <= 1e-12);
    }
}

TEST_CASE("trace dichotomy") {
    CHECK(trace_dichotomy("S") == TraceClass::ListedException);
    CHECK(trace_dichotomy("ST") == TraceClass::ListedException);
    CHECK(trace_dichotomy("SS") == TraceClass::StrictlyExpanding);
    CHECK(trace_dichotomy("TS") == TraceClass::CyclicException);
    // every word of length 3..8 with at least two S letters expands strictly
    for (int len = 3; len <= 8; ++len) {
        for (int mask = 0; mask < (1 << len); ++mask) {
            std::string w;
            int s_count = 0;
            for (int i = 0; i < len; ++i) {
                const bool is_s = mask & (1 << i);
                w += is_s ? 'S' : 'T';
                s_count += is_s;
            }
            if (s_count < 2) continue;
            CHECK(trace_dichotomy(w) == TraceClass::StrictlyExpanding);
        }
    }
}

TEST_CASE("phi is the eigen dot product with log moduli") {
    const auto ed = eigen_data(word_to_matrix("S"));
    const double e1 = std::exp(-1.0);
    CHECK(std::abs(phi(ed, 1, {e1, 0.0}, {e1, 0.0}) - (-2.618033988749895)) < 1e-12);
    CHECK(std::abs(phi(ed, 2, {e1, 0.0}, {e1, 0.0}) - (-0.381966011250105)) < 1e-12);
    CHECK(phi(ed, 1, {1.0, 0.0}, {1.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(phi(ed, 1, {0.0, 0.0}, {1.0, 0.0}), Error);
    // log path conventions at zeros
    CHECK(phi_log(ed, 1, {ScaledComplex::zero(), ScaledComplex::one()}) ==
          -std::numeric_limits<double>::infinity());
    CHECK(phi_log(ed, 2, {ScaledComplex::one(), ScaledComplex::zero()}) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("phi equivariance holds and detects perturbations") {
    for (const char* word : {"S", "SST"}) {
        const auto v = validate_ih(word);
        REQUIRE(v.ok());
        const auto& g = std::get<IHGerm>(*v.germ);
        const auto ed = eigen_data(g.m);
        const auto rep = verify::phi_equivariance(g, ed, 1000, 42, 1e-10);
        CHECK(rep.pass);
        CHECK(rep.metric <= 1e-12);

        auto bad = ed;
        bad.beta1 += 0.01;
        const auto rep_bad = verify::phi_equivariance(g, bad, 1000, 42, 1e-10);
        CHECK_FALSE(rep_bad.pass);
        CHECK(rep_bad.metric > 1e-3);
    }
}
