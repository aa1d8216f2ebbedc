#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "rscert/errors.hpp"
#include "rscert/rs_poly.hpp"

using namespace rscert;

TEST_CASE("generated coefficients match the concatenation recursion", "[rs_poly]") {
    for (int n = 0; n <= 12; ++n) {
        const auto [p, q] = oracle::rudin_shapiro(n);
        const auto gp = generate(n, Which::P);
        const auto gq = generate(n, Which::Q);
        REQUIRE(gp.length() == p.size());
        for (std::size_t j = 0; j < p.size(); ++j) {
            REQUIRE(gp.coeffs[j] == p[j]);
            REQUIRE(gq.coeffs[j] == q[j]);
        }
    }
}

TEST_CASE("P_n coefficients follow the adjacent-ones parity rule", "[rs_poly]") {
    const auto p = generate(16, Which::P);
    for (std::size_t j = 0; j < p.length(); ++j) REQUIRE(p.coeffs[j] == oracle::rudin_shapiro_bit(j));
}

TEST_CASE("small levels", "[rs_poly]") {
    const auto p3 = generate(3, Which::P);
    CHECK(p3.coeffs == std::vector<std::int8_t>{1, 1, 1, -1, 1, 1, -1, 1});
    const auto q1 = generate(1, Which::Q);
    CHECK(q1.coeffs == std::vector<std::int8_t>{1, -1});
}

TEST_CASE("level range is enforced", "[rs_poly]") {
    CHECK_THROWS_AS(generate(-1, Which::P), LevelRangeError);
    CHECK_THROWS_AS(generate(kMaxLevel + 1, Which::P), LevelRangeError);
    CHECK_THROWS_AS(generate(10, Which::P, 8), LevelRangeError);
}

TEST_CASE("correlations agree with the direct sum on both routes", "[rs_poly]") {
    for (int n = 1; n <= 10; ++n) {
        const auto [p, q] = oracle::rudin_shapiro(n);
        const auto gp = generate(n, Which::P);
        const auto gq = generate(n, Which::Q);
        for (Route route : {Route::Direct, Route::Fast}) {
            const auto a = autocorrelate(gp, route);
            const auto b = crosscorrelate(gp, gq, route);
            const auto len = static_cast<std::int64_t>(p.size());
            for (std::int64_t k = -len; k <= len; ++k) {
                REQUIRE(a.at(k) == oracle::correlation(p, p, k));
                REQUIRE(b.at(k) == oracle::correlation(p, q, k));
            }
            if (route == Route::Fast) CHECK(a.rounding_residual < kRoundingGuard);
        }
    }
}

TEST_CASE("fast and direct routes agree at larger levels", "[rs_poly]") {
    for (int n : {12, 13}) {
        const auto p = generate(n, Which::P);
        const auto q = generate(n, Which::Q);
        CHECK(autocorrelate(p, Route::Fast).raw() == autocorrelate(p, Route::Direct).raw());
        CHECK(crosscorrelate(p, q, Route::Fast).raw() == crosscorrelate(p, q, Route::Direct).raw());
    }
}

TEST_CASE("autocorrelation is symmetric with a_0 = L and vanishes at even nonzero lags", "[rs_poly][property]") {
    for (int n = 1; n <= 12; ++n) {
        const auto a = autocorrelate(generate(n, Which::P));
        const std::int64_t len = a.length();
        CHECK(a.at(0) == len);
        for (std::int64_t k = 1; k < len; ++k) {
            REQUIRE(a.at(k) == a.at(-k));
            if (k % 2 == 0) REQUIRE(a.at(k) == 0);
        }
        CHECK(a.at(len) == 0);
    }
}

TEST_CASE("Parseval holds at coefficient level", "[rs_poly][property]") {
    for (int n = 0; n <= 14; ++n) {
        CHECK(parseval_check(n, Route::Fast));
        if (n <= 10) CHECK(parseval_check(n, Route::Direct));
    }
    // Independently: a_k(P) + a_k(Q) = 2^{n+1} [k = 0].
    for (int n = 1; n <= 8; ++n) {
        const auto [p, q] = oracle::rudin_shapiro(n);
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(p.size()); ++k) {
            const auto s = oracle::correlation(p, p, k) + oracle::correlation(q, q, k);
            REQUIRE(s == (k == 0 ? std::int64_t{2} << n : 0));
        }
    }
}

TEST_CASE("fourth moment equals the sum of squared correlations", "[rs_poly]") {
    for (int n = 1; n <= 10; ++n) {
        const auto [p, q] = oracle::rudin_shapiro(n);
        std::int64_t s = 0;
        const auto len = static_cast<std::int64_t>(p.size());
        for (std::int64_t k = -len + 1; k < len; ++k) {
            const auto c = oracle::correlation(p, p, k);
            s += c * c;
        }
        REQUIRE(moment4(n) == s);
    }
}

TEST_CASE("coefficient text format round-trips", "[rs_poly]") {
    const auto p = generate(6, Which::Q);
    std::stringstream buf;
    write_coefficients(buf, p);
    const auto back = read_coefficients(buf);
    CHECK(back.n == p.n);
    CHECK(back.which == p.which);
    CHECK(back.coeffs == p.coeffs);
}

TEST_CASE("spectrum csv lists non-negative lags", "[rs_poly]") {
    std::ostringstream out;
    write_spectrum_csv(out, autocorrelate(generate(2, Which::P)));
    CHECK(out.str() == "k,value\n0,4\n1,1\n2,0\n3,-1\n");
}
