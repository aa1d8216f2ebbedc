// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rscert/analysis.hpp"
#include "rscert/certificates.hpp"
#include "rscert/index_chain.hpp"
#include "rscert/mat3_exact.hpp"
#include "rscert/rs_poly.hpp"
#include "rscert/spectral.hpp"

using namespace rscert;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double d(const Real& x) { return static_cast<double>(x); }

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [failed: " << what << ']';
        }
    }
};

Outcome oracle_equivalence() {
    Outcome o;
    const auto start = Clock::now();
    std::int64_t lags = 0, mismatches = 0;
    for (int n = 1; n <= 12; ++n) {
        const RecursionReport r = verify_recursion(n);
        lags += r.lags_checked;
        mismatches += r.mismatches;
    }
    const double t = seconds_since(start);
    o.detail << "n<=12, " << lags << " odd lags, " << mismatches << " mismatches, " << t << " s";
    o.require(mismatches == 0, "exact equality");
    o.require(t < 10.0, "runtime < 10 s");
    return o;
}

Outcome growth_exponent() {
    Outcome o;
    const auto start = Clock::now();
    const GrowthTable table = growth_table(10, 22, Route::Fast);
    const double t = seconds_since(start);
    o.detail << "slope of log2 max|a_k| over n in [10,22] = " << table.slope_a << " (target [0.7273, 0.7333]), "
             << t << " s";
    o.require(table.slope_a >= 0.7273 && table.slope_a <= 0.7333, "slope in band");
    o.require(t < 120.0, "runtime < 2 min");
    return o;
}

Outcome sweep_certificates() {
    Outcome o;
    const NamedConstants c = named_constants();
    for (int partitions : {1, 8}) {
        for (int k : {1, 2}) {
            SweepOptions opt;
            opt.partitions = partitions;
            const auto start = Clock::now();
            const NormCertificate cert = sweep_lemma3(k, kDefaultEpsilon, opt);
            const double t = seconds_since(start);
            const auto want_hi = static_cast<std::int64_t>(std::floor(d(c.threshold_even[static_cast<std::size_t>(k - 1)])));
            o.detail << "k=" << k << " p=" << partitions << ": l<=" << cert.l_hi << " max_ratio=" << cert.max_ratio
                     << " budget=" << cert.error_budget << " route_diff=" << cert.cross_validation_max_rel << " ("
                     << cert.cross_validation_samples << ") " << t << " s; ";
            o.require(cert.l_hi == want_hi && cert.l_hi == (k == 1 ? 1318902 : 991945), "l range");
            o.require(cert.passed && cert.max_ratio + cert.error_budget < 1.0, "bound with budget");
            o.require(cert.cross_validation_samples >= 1000 && cert.cross_validation_max_rel <= 1e-9,
                      "route cross-validation");
            o.require(t < (partitions == 1 ? 300.0 : 60.0), "runtime");
        }
    }
    return o;
}

Outcome lemma4_checks() {
    Outcome o;
    const PowerCheck p = check_lemma4_powers();
    const MixedCheck m = check_lemma4_mixed();
    double worst = 0.0;
    for (const auto& row : m.ratios)
        for (const Real& r : row) worst = std::max(worst, d(r));
    const double m1b = d(p.norm_m1b);
    o.detail.precision(10);
    o.detail << "worst mixed ratio=" << worst << " |M1 B M1^4|=" << d(m.norm_m1bm14)
             << " g^3=" << d(m.growth_cubed) << " |M1 B|=" << m1b << " powers l=2..24 "
             << (p.certificate.passed ? "pass" : "fail") << " |S1||S1^-1|=" << d(p.s1_condition);
    o.require(near(worst, 0.92894011, 1e-6), "worst mixed ratio");
    o.require(near(d(m.norm_m1bm14), 19.97828015, 1e-6), "|M1 B M1^4|");
    o.require(near(d(m.growth_cubed), 20.84624870, 1e-6), "g^3");
    o.require(near(m1b, 2.0 * std::sqrt(2.0), 1e-9), "|M1 B|");
    o.require(p.certificate.passed && p.certificate.l_lo == 2 && p.certificate.l_hi == 24, "powers 2..24");
    o.require(near(d(p.s1_condition), 5.61541131, 1e-6), "analytic branch constant");
    return o;
}

Outcome spectral_constants() {
    Outcome o;
    const NamedConstants c = named_constants();
    o.detail.precision(12);
    o.detail << "lambda=" << d(c.lambda) << " lambda'=" << d(real(c.lambda_prime)) << "+" << d(imag(c.lambda_prime))
             << "i alpha=" << d(c.alpha) << " even=(" << d(c.threshold_even[0]) << ", " << d(c.threshold_even[1])
             << ", " << d(c.threshold_even[2]) << ") odd=(" << d(c.threshold_odd[0]) << ", "
             << d(c.threshold_odd[1]) << ", " << d(c.threshold_odd[2]) << ") |S1|=" << d(c.norm_s1)
             << " |S1^-1|=" << d(c.norm_s1_inv);
    o.require(near(d(c.lambda), 2.75217177, 1e-8), "lambda");
    o.require(near(d(real(c.lambda_prime)), 1.12391411, 1e-8) && near(d(imag(c.lambda_prime)), 2.13316845, 1e-8),
              "lambda'");
    o.require(near(d(c.alpha), 0.7302852, 1e-7), "alpha");
    const double even[3] = {1318902.018, 991945.7928, -20445.79861};
    const double odd[3] = {1187950.952, 862238.8518, -150152.7391};
    for (std::size_t k = 0; k < 3; ++k) {
        o.require(near(d(c.threshold_even[k]), even[k], 0.5), "even threshold k=" + std::to_string(k + 1));
        o.require(near(d(c.threshold_odd[k]), odd[k], 0.5), "odd threshold k=" + std::to_string(k + 1));
    }
    o.require(near(d(c.norm_s1), 4.38008933, 1e-6), "|S1|");
    o.require(near(d(c.norm_s1_inv), 1.282031231, 1e-6), "|S1^-1|");
    return o;
}

Outcome lower_bound_constants() {
    Outcome o;
    const LowerBoundTrace t = lower_bound_trace(Parity::Even, 40);
    const double a = d(abs(t.coefficients[0][0]));
    const Complex& b = t.coefficients[0][1];
    const double a1 = d(real(t.coefficients[1][0]));
    const Complex& b1 = t.coefficients[1][1];
    const double scaled = t.lambda_scaled_values.back();
    o.detail.precision(10);
    o.detail << "|a|=" << a << " b=" << d(real(b)) << (imag(b) < 0 ? "" : "+") << d(imag(b)) << "i a'=" << a1
             << " b'=" << d(real(b1)) << (imag(b1) < 0 ? "" : "+") << d(imag(b1)) << "i |w_40[0]|/lambda^20="
             << scaled << " (n=" << t.levels.back() << ')';
    o.require(near(a, 0.38215952, 1e-6), "|a|");
    o.require(near(d(real(b)), 0.19107976, 1e-6) && near(d(imag(b)), 0.88541019, 1e-6), "b");
    o.require(near(a1, 0.28744961, 1e-6), "a'");
    o.require(near(d(real(b1)), 0.3562751947, 1e-6) && near(d(imag(b1)), -0.3300357859, 1e-6), "b'");
    o.require(t.levels.back() == 40 && near(scaled, a, 1e-4), "convergence at n=40");
    return o;
}

Outcome factorization() {
    Outcome o;
    const auto start = Clock::now();
    const FactorizationReport r = verify_factorization(1000, 20, 42);
    const double t = seconds_since(start);
    o.detail << r.words_checked << " words over " << r.lengths.size() << " even lengths, " << r.failures.size()
             << " failures, " << t << " s";
    o.require(r.passed() && r.lengths.size() == 10 && r.words_checked == 10000, "exact canonical forms");
    o.require(t < 10.0, "runtime < 10 s");
    return o;
}

Outcome littlewood_sanity() {
    Outcome o;
    o.detail.precision(8);
    for (int n = 12; n <= 14; ++n) {
        const double ratio = static_cast<double>(moment4(n)) / std::ldexp(1.0, 2 * n);
        o.detail << "moment4/4^n(" << n << ")=" << ratio << ' ';
        o.require(ratio >= 1.30 && ratio <= 1.34, "moment ratio n=" + std::to_string(n));
    }
    double worst = 0.0;
    for (int n = 1; n <= 14; ++n) {
        const MqNorms m = mq_norms(n);
        worst = std::max(worst, m.m_inf_f / std::ldexp(1.0, n));
        o.require(m.grid_size == 16 * (std::int64_t{1} << n), "16 L grid");
        o.require(m.m_inf_f <= std::ldexp(1.0, n), "M_inf(R - 2^n) <= 2^n at n=" + std::to_string(n));
    }
    o.detail << "max M_inf(R-2^n)/2^n=" << worst;
    return o;
}

Outcome crossing_counts() {
    Outcome o;
    const auto start = Clock::now();
    std::vector<double> x, y;
    for (int n = 10; n <= 16; ++n) {
        const std::int64_t len = std::int64_t{1} << n;
        std::int64_t prev = 0;
        for (std::int64_t mult : {4, 8, 16}) {
            const std::int64_t c = crossing_count(n, 0.0, mult * len).count;
            o.require(c >= prev, "refinement monotone at n=" + std::to_string(n));
            prev = c;
        }
        const std::int64_t c = crossing_count(n, 0.0).count;
        x.push_back(n);
        y.push_back(std::log2(static_cast<double>(c)));
        o.detail << c << ' ';
    }
    const double slope = least_squares_slope(x, y);
    const double t = seconds_since(start);
    o.detail << "slope=" << slope << ", " << t << " s";
    o.require(slope >= 0.50, "slope >= 0.5");
    o.require(t < 60.0, "runtime < 1 min");
    return o;
}

Outcome parseval() {
    Outcome o;
    int levels = 0;
    for (int n = 0; n <= 14; ++n) {
        const bool ok = parseval_check(n, Route::Fast) && parseval_check(n, Route::Direct);
        o.require(ok, "n=" + std::to_string(n));
        levels += ok ? 1 : 0;
    }
    o.detail << levels << "/15 levels exact on both routes";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"oracle equivalence", oracle_equivalence},
        {"growth exponent", growth_exponent},
        {"sweep certificates", sweep_certificates},
        {"power and mixed checks", lemma4_checks},
        {"spectral constants", spectral_constants},
        {"lower-bound constants", lower_bound_constants},
        {"factorization", factorization},
        {"Littlewood sanity", littlewood_sanity},
        {"crossing counts", crossing_counts},
        {"Parseval", parseval},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "exception: " << e.what();
        }
        failures += o.passed ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
