#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rscert/errors.hpp"
#include "rscert/index_chain.hpp"

using namespace rscert;

namespace {

std::int64_t autocorrelation_oracle(int n, std::int64_t k) {
    const auto [p, q] = oracle::rudin_shapiro(n);
    return oracle::correlation(p, p, k);
}

}  // namespace

TEST_CASE("classification partitions the odd lags", "[index_chain][property]") {
    for (int n = 1; n <= 10; ++n) {
        const std::int64_t len = std::int64_t{1} << n;
        std::array<std::int64_t, 4> counts{};
        for (std::int64_t k = -len + 1; k < len; k += 2) {
            const LagClass c = classify(n, k);
            REQUIRE(c.tau >= 1);
            REQUIRE(c.tau <= 4);
            const std::int64_t half = len / 2;
            REQUIRE((c.tau - 3) * half < k);
            REQUIRE(k <= (c.tau - 2) * half);
            ++counts[static_cast<std::size_t>(c.tau - 1)];
        }
        if (n >= 2) {
            for (auto c : counts) CHECK(c == len / 4);
        }
    }
}

TEST_CASE("classification rejects even or out-of-range lags", "[index_chain]") {
    CHECK_THROWS_AS(classify(3, 2), InvalidLagError);
    CHECK_THROWS_AS(classify(3, 8), InvalidLagError);
    CHECK_THROWS_AS(classify(3, -9), InvalidLagError);
    CHECK_THROWS_AS(classify(0, 1), InvalidLagError);
}

TEST_CASE("descent stays odd and inside the next level", "[index_chain][property]") {
    for (int n = 2; n <= 10; ++n) {
        const std::int64_t len = std::int64_t{1} << n;
        for (std::int64_t k = -len + 1; k < len; k += 2) {
            const Descent d = descend(n, k);
            REQUIRE(d.k_down % 2 != 0);
            REQUIRE(std::abs(d.k_down) < len / 2);
            REQUIRE(std::abs(d.k_prime) < len);
        }
    }
}

TEST_CASE("selector matrices and seeds", "[index_chain]") {
    CHECK(select_matrix(1) == mats::A());
    CHECK(select_matrix(2) == mats::B());
    CHECK(select_matrix(3) == mats::C());
    CHECK(select_matrix(4) == mats::D());
    CHECK(select_matrix(3) == ExactMat3{{0, 1, 0, 0, 0, 1, 0, 0, -1}});
    CHECK(omega_seed(1) == std::array<std::int64_t, 3>{1, 1, -1});
    CHECK(omega_seed(-1) == std::array<std::int64_t, 3>{1, -1, 1});
}

TEST_CASE("seeds match the level-one spectra", "[index_chain]") {
    const auto [p, q] = oracle::rudin_shapiro(1);
    // At level one the partner lag is k' = -k, and the z^j coefficient of P conj(Q) is b_{-j}.
    for (std::int64_t k : {1, -1}) {
        const std::array<std::int64_t, 3> want{oracle::correlation(p, p, k), oracle::correlation(p, q, -k),
                                              oracle::correlation(p, q, k)};
        CHECK(omega_seed(k) == want);
    }
}

TEST_CASE("matrix chain reproduces a_k for every odd lag", "[index_chain]") {
    for (int n = 1; n <= 9; ++n) {
        const std::int64_t len = std::int64_t{1} << n;
        for (std::int64_t k = -len + 1; k < len; k += 2) {
            REQUIRE(omega_by_recursion(n, k).entries[0] == autocorrelation_oracle(n, k));
        }
    }
}

TEST_CASE("matrix chain matches the spectra on all three components", "[index_chain]") {
    for (int n = 1; n <= 12; ++n) {
        const RecursionReport r = verify_recursion(n);
        INFO("n = " << n << " first bad lag " << r.first_bad_lag);
        REQUIRE(r.passed());
        CHECK(r.lags_checked == (std::int64_t{1} << n));
    }
    CHECK(verify_recursion(8, Route::Direct).passed());
}

TEST_CASE("the selector word is admissible and its product drives the chain", "[index_chain][property]") {
    for (int n = 2; n <= 9; ++n) {
        const std::int64_t len = std::int64_t{1} << n;
        for (std::int64_t k = -len + 1; k < len; k += 2) {
            const Word w = admissible_word(n, k);
            REQUIRE(w.size() == static_cast<std::size_t>(n - 1));
            REQUIRE(is_admissible(w));
            // Walk down to the level-one lag.
            std::int64_t kk = k;
            for (int m = n; m >= 2; --m) kk = descend(m, kk).k_down;
            const auto seed = omega_seed(kk);
            const ExactMat3 prod = word_product(w);
            std::array<std::int64_t, 3> v{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) v[i] += static_cast<std::int64_t>(prod(i, j)) * seed[j];
            REQUIRE(v == omega_by_recursion(n, k).entries);
        }
    }
}
