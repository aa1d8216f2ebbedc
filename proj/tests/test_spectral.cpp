#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "rscert/errors.hpp"
#include "rscert/spectral.hpp"

using namespace rscert;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double d(const Real& x) { return static_cast<double>(x); }

oracle::DMat as_double(const ExactMat3& m) {
    oracle::DMat r{};
    for (int i = 0; i < 9; ++i) r[i] = static_cast<double>(m.e[i]);
    return r;
}

}  // namespace

TEST_CASE("cubic roots of the growth polynomial", "[spectral]") {
    const CubicRoots r = solve_characteristic_cubic();
    CHECK_THAT(d(r.lambda), WithinAbs(oracle::growth_root(), 1e-14));
    const auto z = oracle::growth_root_complex();
    CHECK_THAT(d(real(r.lambda_prime)), WithinAbs(z.real(), 1e-13));
    CHECK_THAT(d(imag(r.lambda_prime)), WithinAbs(z.imag(), 1e-13));
    CHECK(r.residual < Real("1e-40"));
    // Vieta: the roots sum to 5 and multiply to 16.
    const Real sum = r.lambda + 2 * real(r.lambda_prime);
    const Real prod = r.lambda * norm(r.lambda_prime);
    CHECK(abs(sum - 5) < Real("1e-40"));
    CHECK(abs(prod - 16) < Real("1e-40"));
}

TEST_CASE("cubic roots with three real roots come out descending", "[spectral]") {
    // (x - 1)(x - 2)(x - 3)
    const auto roots = cubic_roots(Real(-6), Real(11), Real(-6));
    CHECK(abs(roots[0] - Complex(3)) < Real("1e-40"));
    CHECK(abs(roots[1] - Complex(2)) < Real("1e-40"));
    CHECK(abs(roots[2] - Complex(1)) < Real("1e-40"));
}

TEST_CASE("eigensystem reconstructs the matrix", "[spectral]") {
    for (const ExactMat3& m : {power(mats::M1(), 2), mats::M1() * mats::B(), mats::lower_bound_step()}) {
        const EigenSystem e = eigensystem(m);
        CHECK(e.residual_bound < Real("1e-40"));
        CHECK(e.reconstruction_error < Real("1e-40"));
        CHECK(max_abs_difference(e.vectors * e.inverse_vectors, CMat3::identity()) < Real("1e-40"));
    }
    CHECK_THROWS_AS(eigensystem(mats::I()), ArgumentError);
}

TEST_CASE("spectral norms agree with power iteration", "[spectral][property]") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> entry(-50, 50);
    for (int trial = 0; trial < 300; ++trial) {
        ExactMat3 m;
        for (auto& x : m.e) x = entry(rng);
        const double want = oracle::spectral_norm(as_double(m));
        const SpectralNorm exact = spectral_norm(m);
        const auto fast = spectral_norm_fast(as_double(m));
        REQUIRE_THAT(d(exact.value), WithinRel(want, 1e-9));
        REQUIRE_THAT(fast.value, WithinRel(want, 1e-9));
        REQUIRE(fast.error_bound >= 0.0);
        REQUIRE(std::abs(fast.value - d(exact.value)) <= fast.error_bound + 1e-15 * d(exact.value));
    }
}

TEST_CASE("known norms", "[spectral]") {
    CHECK_THAT(d(spectral_norm(mats::M1() * mats::B()).value), WithinAbs(2.0 * std::sqrt(2.0), 1e-15));
    CHECK_THAT(d(spectral_norm(mats::I()).value), WithinAbs(1.0, 1e-15));
    CHECK_THAT(d(spectral_norm(ExactMat3{}).value), WithinAbs(0.0, 1e-15));
    const ExactMat3 m = mats::M1() * mats::B() * power(mats::M1(), 4);
    CHECK_THAT(d(spectral_norm(m).value), WithinAbs(oracle::spectral_norm(as_double(m)), 1e-9));
    CHECK(spectral_norm(m).error_bound < Real("1e-30"));
}

TEST_CASE("wide and narrow norm routes agree", "[spectral]") {
    const ExactMat3 m = power(mats::M1(), 30);
    CHECK(abs(spectral_norm(m).value - spectral_norm(widen(m)).value) < Real("1e-35") * spectral_norm(m).value);
}

TEST_CASE("named constants", "[spectral]") {
    const NamedConstants c = named_constants();
    const double lambda = oracle::growth_root();
    CHECK_THAT(d(c.lambda), WithinAbs(lambda, 1e-14));
    CHECK_THAT(d(c.growth), WithinRel((1 + 5e-7) * (1 + 5e-7) * lambda, 1e-14));
    CHECK_THAT(d(c.alpha), WithinAbs(std::log2(lambda) / 2.0, 1e-14));
    CHECK(c.alpha_prime > c.alpha);
    CHECK_THAT(d(c.m1b_dominant), WithinAbs((1 + std::sqrt(17.0)) / 2.0, 1e-14));
    CHECK_THAT(d(c.s1_condition), WithinRel(d(c.norm_s1) * d(c.norm_s1_inv), 1e-14));
    // Thresholds solve log(c_k) + (l + k) log(g) / 2 = ... : the ordering is fixed.
    CHECK(c.threshold_even[0] > c.threshold_even[1]);
    CHECK(c.threshold_even[1] > c.threshold_even[2]);
    CHECK(c.threshold_even[2] < 0);
    CHECK(c.threshold_odd[2] < 0);
}

TEST_CASE("printed radicals match numeric eigenvectors", "[spectral]") {
    const RadicalCheck r = check_printed_radicals();
    for (std::size_t i = 0; i < 8; ++i) {
        INFO("s" << i + 1);
        CHECK(r.deviation[i] < Real("1e-6"));
    }
}

TEST_CASE("string formatting", "[spectral]") {
    CHECK(to_string(Real("2.5"), 5).rfind("2.5", 0) == 0);
    CHECK(to_string(Complex(Real(1), Real(-2)), 5).find('-') != std::string::npos);
}
