#include "rscert/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rscert/errors.hpp"
#include "rscert/fft.hpp"
#include "rscert/index_chain.hpp"
#include "rscert/mat3_exact.hpp"

namespace rscert {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ArgumentError("least_squares_slope: need two or more points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw ArgumentError("least_squares_slope: degenerate abscissae");
    return sxy / sxx;
}

std::int64_t lower_bound_lag(int n) {
    const std::int64_t len = std::int64_t{1} << n;
    return (2 * len + (n % 2 == 0 ? 1 : -1)) / 3;
}

GrowthTable growth_table(int n_lo, int n_hi, Route route) {
    if (n_lo < 1 || n_hi < n_lo || n_hi > kMaxLevel) {
        throw LevelRangeError("growth_table: need 1 <= n_lo <= n_hi <= " + std::to_string(kMaxLevel));
    }
    GrowthTable table;
    std::vector<double> xs, ya, yb;
    for (int n = n_lo; n <= n_hi; ++n) {
        const auto spectra = LevelSpectra::compute(n, route);
        const std::int64_t len = std::int64_t{1} << n;
        GrowthRecord r;
        r.n = n;
        for (std::int64_t k = 1; k < len; ++k) {
            const std::int64_t a = std::abs(spectra.auto_p.at(k));
            const std::int64_t b = std::abs(spectra.cross.at(k));
            if (a > r.max_abs_a) {
                r.max_abs_a = a;
                r.argmax_k = k;
            }
            if (b > r.max_abs_b) {
                r.max_abs_b = b;
                r.argmax_k_b = k;
            }
        }
        r.log2_ratio = std::log2(static_cast<double>(r.max_abs_a)) / n;
        r.log2_ratio_b = std::log2(static_cast<double>(r.max_abs_b)) / n;
        r.k_n = lower_bound_lag(n);
        r.a_at_k_n = spectra.auto_p.at(r.k_n);
        r.rounding_residual = std::max(spectra.auto_p.rounding_residual, spectra.cross.rounding_residual);
        xs.push_back(n);
        ya.push_back(std::log2(static_cast<double>(r.max_abs_a)));
        yb.push_back(std::log2(static_cast<double>(r.max_abs_b)));
        table.records.push_back(r);
    }
    if (xs.size() >= 2) {
        table.slope_a = least_squares_slope(xs, ya);
        table.slope_b = least_squares_slope(xs, yb);
    }
    return table;
}

// ---------------------------------------------------------------------------

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

LowerBoundTrace lower_bound_trace(Parity parity, int n_max) {
    if (n_max < 2) throw ArgumentError("lower_bound_trace: n_max must be at least 2");
    const ExactMat3 step = mats::lower_bound_step();
    LowerBoundTrace trace;
    trace.parity = parity;
    std::array<Int128, 3> w = parity == Parity::Even ? std::array<Int128, 3>{0, 1, 1}
                                                     : std::array<Int128, 3>{1, 1, -1};
    const std::array<Int128, 3> seed = w;
    for (int n = parity == Parity::Even ? 0 : 1; n <= n_max; n += 2) {
        if (n >= 2) {
            std::array<Int128, 3> next{};
            for (int i = 0; i < 3; ++i) {
                Int128 s = 0;
                for (int j = 0; j < 3; ++j) {
                    s = detail::checked_add(s, detail::checked_mul(step(i, j), w[static_cast<std::size_t>(j)]));
                }
                next[static_cast<std::size_t>(i)] = s;
            }
            w = next;
        }
        trace.levels.push_back(n);
        trace.omega_sequence.push_back(w);
    }

    const EigenSystem es = eigensystem(step);
    std::array<Complex, 3> y{};
    for (int e = 0; e < 3; ++e) {
        Complex s(0);
        for (int j = 0; j < 3; ++j) s += es.inverse_vectors(e, j) * Complex(Real(BigInt(seed[static_cast<std::size_t>(j)])));
        y[static_cast<std::size_t>(e)] = s;
    }
    for (int c = 0; c < 3; ++c) {
        for (int e = 0; e < 3; ++e) {
            Complex coeff = es.vectors(c, e) * y[static_cast<std::size_t>(e)];
            if (parity == Parity::Odd) coeff /= sqrt(es.eigenvalues[static_cast<std::size_t>(e)]);
            trace.coefficients[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)] = coeff;
        }
    }
    trace.leading_constant = trace.coefficients[0][0];

    const Real lambda = real(es.eigenvalues[0]);
    for (std::size_t i = 0; i < trace.levels.size(); ++i) {
        const Real first = abs(Real(BigInt(trace.omega_sequence[i][0])));
        trace.lambda_scaled_values.push_back(static_cast<double>(first / pow(lambda, Real(trace.levels[i]) / 2)));
    }
    return trace;
}

RecursionCheck verify_lower_bound_recursion(int n_max) {
    if (n_max < 2) throw ArgumentError("verify_lower_bound_recursion: n_max must be at least 2");
    RecursionCheck check;
    const LowerBoundTrace even = lower_bound_trace(Parity::Even, n_max);
    const LowerBoundTrace odd = lower_bound_trace(Parity::Odd, n_max);
    for (int n = 2; n <= n_max; ++n) {
        const LowerBoundTrace& t = n % 2 == 0 ? even : odd;
        const auto it = std::find(t.levels.begin(), t.levels.end(), n);
        const auto& w = t.omega_sequence[static_cast<std::size_t>(it - t.levels.begin())];
        const auto spectra = LevelSpectra::compute(n);
        const OmegaVector direct = omega_direct(spectra, lower_bound_lag(n));
        ++check.levels_checked;
        for (int c = 0; c < 3; ++c) {
            if (w[static_cast<std::size_t>(c)] != direct.entries[static_cast<std::size_t>(c)]) {
                if (check.passed) {
                    check.first_bad_n = n;
                    check.first_bad_component = c;
                }
                check.passed = false;
            }
        }
    }
    return check;
}

// ---------------------------------------------------------------------------

namespace {

// Sampling error model for |P|^2 from a length-G transform of L unit coefficients.
double sample_error_bound(std::int64_t len) {
    const double u = std::numeric_limits<double>::epsilon() / 2;
    return 16.0 * u * 40.0 * static_cast<double>(len) * static_cast<double>(len);
}

std::vector<double> power_samples(int n, std::int64_t grid) {
    const auto seq = generate(n, Which::P);
    const std::vector<double> x(seq.coeffs.begin(), seq.coeffs.end());
    return fft::power_on_grid(x, static_cast<std::size_t>(grid));
}

// a_0 + 2 sum_{k>=1} a_k cos(k t) by Clenshaw's recurrence.
long double evaluate_power(std::span<const std::int64_t> a, long double t) {
    const long double c = std::cos(t);
    long double b1 = 0, b2 = 0;
    for (std::size_t k = a.size() - 1; k >= 1; --k) {
        const long double b0 = 2.0L * static_cast<long double>(a[k]) + 2 * c * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return static_cast<long double>(a[0]) + b1 * c - b2;
}

}  // namespace

CrossingReport crossing_count(int n, double eta, std::int64_t grid_size, bool refine) {
    if (n < 0 || n > kMaxLevel) throw LevelRangeError("crossing_count: level out of range");
    if (std::abs(eta) > kMaxCrossingEta) throw ArgumentError("crossing_count: |eta| must be at most 2^-8");
    const std::int64_t len = std::int64_t{1} << n;
    if (grid_size == 0) grid_size = 4 * len;
    if (grid_size < 4 * len || grid_size % 2 != 0) {
        throw ArgumentError("crossing_count: grid must be even and at least 4 L_n");
    }
    if (refine && n > 12) throw ArgumentError("crossing_count: refinement supported for n <= 12");

    CrossingReport report;
    report.n = n;
    report.eta = eta;
    report.grid_size = grid_size;
    report.refined = refine;
    report.sample_tolerance = sample_error_bound(len);

    const auto r = power_samples(n, grid_size);
    const double level = (1.0 + eta) * static_cast<double>(len);
    std::vector<std::int8_t> sign(r.size());
    std::size_t first = r.size();
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double d = r[j] - level;
        sign[j] = std::abs(d) <= report.sample_tolerance ? 0 : (d > 0 ? 1 : -1);
        if (sign[j] != 0 && first == r.size()) first = j;
    }
    if (first == r.size()) return report;

    std::vector<std::pair<std::size_t, std::size_t>> brackets;
    std::size_t prev = first;
    const std::size_t g = r.size();
    for (std::size_t step = 1; step <= g; ++step) {
        const std::size_t j = (first + step) % g;
        if (sign[j] == 0) continue;
        if (sign[j] != sign[prev]) brackets.emplace_back(prev, j);
        prev = j;
    }
    report.count = static_cast<std::int64_t>(brackets.size());

    if (refine) {
        const auto spectrum = autocorrelate(generate(n, Which::P));
        const auto a = spectrum.nonnegative();
        const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
        auto t_of = [&](std::size_t j) { return -two_pi / 2 + two_pi * static_cast<long double>(j) / static_cast<long double>(g); };
        for (const auto& [i, j] : brackets) {
            long double lo = t_of(i);
            long double hi = t_of(j);
            if (hi <= lo) hi += two_pi;
            long double f_lo = evaluate_power(a, lo) - level;
            const long double f_hi = evaluate_power(a, hi) - level;
            if ((f_lo > 0) == (f_hi > 0) || f_lo == 0 || f_hi == 0) continue;
            while (hi - lo > 1e-12L) {
                const long double mid = (lo + hi) / 2;
                const long double f_mid = evaluate_power(a, mid) - level;
                if (f_mid == 0) break;
                if ((f_mid > 0) == (f_lo > 0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            ++report.confirmed;
        }
    }
    return report;
}

MqNorms mq_norms(int n, std::int64_t grid_size) {
    if (n < 0 || n > kMaxLevel) throw LevelRangeError("mq_norms: level out of range");
    const std::int64_t len = std::int64_t{1} << n;
    if (grid_size == 0) grid_size = 16 * len;
    if (grid_size < 16 * len || grid_size % 2 != 0) {
        throw ArgumentError("mq_norms: grid must be even and at least 16 L_n");
    }
    MqNorms out;
    out.n = n;
    out.grid_size = grid_size;
    const auto spectrum = autocorrelate(generate(n, Which::P));
    out.m2_squared = static_cast<Int128>(len);
    out.m4_fourth = moment4(spectrum);
    out.m4 = std::pow(static_cast<double>(out.m4_fourth), 0.25);
    out.mu_squared = out.m4_fourth - static_cast<Int128>(len) * len;
    out.mu = std::sqrt(static_cast<double>(out.mu_squared));
    out.sample_error = sample_error_bound(len);

    const auto r = power_samples(n, grid_size);
    double sum_abs = 0.0, sum_abs_f = 0.0, max_r = 0.0, max_f = 0.0;
    for (double v : r) {
        const double clamped = std::max(v, 0.0);
        sum_abs += std::sqrt(clamped);
        max_r = std::max(max_r, clamped);
        const double f = v - static_cast<double>(len);
        sum_abs_f += std::abs(f);
        max_f = std::max(max_f, std::abs(f));
    }
    out.m1 = sum_abs / static_cast<double>(r.size());
    out.m_inf = std::sqrt(max_r);
    out.m1_f = sum_abs_f / static_cast<double>(r.size());
    out.m_inf_f = max_f;

    const auto a = spectrum.nonnegative();
    out.partial_sums.assign(a.size(), 0.0);
    const double mu2 = static_cast<double>(out.mu_squared);
    for (std::size_t m = 1; m < a.size(); ++m) {
        const double b = 2.0 * static_cast<double>(a[m]);
        out.partial_sums[m] = out.partial_sums[m - 1] + (mu2 > 0 ? b * b / mu2 : 0.0);
    }
    return out;
}

}  // namespace rscert
