#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library: sequences, correlations and matrix norms are rebuilt from
// their definitions with plain loops.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;

/// (P_n, Q_n) coefficient vectors by the concatenation recursion.
inline std::pair<Vec, Vec> rudin_shapiro(int n) {
    Vec p{1}, q{1};
    for (int m = 1; m <= n; ++m) {
        Vec np = p, nq = p;
        for (int c : q) {
            np.push_back(c);
            nq.push_back(-c);
        }
        p = std::move(np);
        q = std::move(nq);
    }
    return {p, q};
}

/// P_n coefficient j via the bit-pair rule: (-1)^{number of adjacent 11 pairs in j}.
inline int rudin_shapiro_bit(std::uint64_t j) {
    int pairs = 0;
    for (std::uint64_t x = j; x != 0; x >>= 1) pairs += static_cast<int>((x & 3u) == 3u);
    return pairs % 2 == 0 ? 1 : -1;
}

/// sum_j x_j y_{j+k}.
inline std::int64_t correlation(const Vec& x, const Vec& y, std::int64_t k) {
    const auto len = static_cast<std::int64_t>(x.size());
    std::int64_t s = 0;
    for (std::int64_t j = 0; j < len; ++j) {
        const std::int64_t i = j + k;
        if (i >= 0 && i < len) s += x[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(i)];
    }
    return s;
}

using DMat = std::array<double, 9>;
using LMat = std::array<long long, 9>;

inline LMat lmul(const LMat& a, const LMat& b) {
    LMat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[3 * i + j] += a[3 * i + k] * b[3 * k + j];
    return r;
}

inline DMat dmul(const DMat& a, const DMat& b) {
    DMat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[3 * i + j] += a[3 * i + k] * b[3 * k + j];
    return r;
}

inline DMat to_double(const LMat& m) {
    DMat r{};
    for (int i = 0; i < 9; ++i) r[i] = static_cast<double>(m[i]);
    return r;
}

/// Largest singular value by power iteration on M^T M.
inline double spectral_norm(const DMat& m, int iterations = 2000) {
    DMat g{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) g[3 * i + j] += m[3 * k + i] * m[3 * k + j];
    std::array<double, 3> v{1.0, 0.7, 0.3};
    double rayleigh = 0.0;
    for (int it = 0; it < iterations; ++it) {
        std::array<double, 3> w{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) w[i] += g[3 * i + j] * v[j];
        const double len = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        if (len == 0.0) return 0.0;
        rayleigh = len;
        for (int i = 0; i < 3; ++i) v[i] = w[i] / len;
    }
    return std::sqrt(rayleigh);
}

/// Real root of x^3 - 5x^2 + 12x - 16 by bisection on [2, 3].
inline double growth_root() {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double p = ((mid - 5.0) * mid + 12.0) * mid - 16.0;
        (p < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Complex root with positive imaginary part, from the quotient quadratic.
inline std::complex<double> growth_root_complex() {
    const double l = growth_root();
    // x^3 - 5x^2 + 12x - 16 = (x - l)(x^2 + (l - 5) x + 16 / l).
    const double b = l - 5.0;
    const double c = 16.0 / l;
    return {-b / 2.0, std::sqrt(c - b * b / 4.0)};
}

/// |P_n(e^{it})|^2 by direct Horner evaluation.
inline double power_at(const Vec& p, double t) {
    std::complex<double> z = std::polar(1.0, t), s = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + static_cast<double>(*it);
    return std::norm(s);
}

}  // namespace oracle
