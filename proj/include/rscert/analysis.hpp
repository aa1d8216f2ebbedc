#pragma once

// Growth of the largest correlation coefficient, the two-step recursion at
// k_n = (2 L_n + (-1)^n) / 3, level crossings of R = |P_n|^2, and L_q norms.

#include <array>
#include <cstdint>
#include <vector>

#include "rscert/int128.hpp"
#include "rscert/rs_poly.hpp"
#include "rscert/spectral.hpp"

namespace rscert {

/// Ordinary least squares slope of y on x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Growth tables.

struct GrowthRecord {
    int n = 0;
    std::int64_t max_abs_a = 0;
    std::int64_t argmax_k = 0;  // smallest lag attaining max_abs_a
    std::int64_t max_abs_b = 0;
    std::int64_t argmax_k_b = 0;
    double log2_ratio = 0.0;    // log2(max_abs_a) / n
    double log2_ratio_b = 0.0;  // log2(max_abs_b) / n
    std::int64_t k_n = 0;       // (2 L_n + (-1)^n) / 3
    std::int64_t a_at_k_n = 0;
    double rounding_residual = 0.0;
};

struct GrowthTable {
    std::vector<GrowthRecord> records;
    /// Slope of log2 max|a_k| (resp. max|b_k|) against n.
    double slope_a = 0.0;
    double slope_b = 0.0;
};

/// Maxima over lags 1..L_n - 1. Throws LevelRangeError unless 1 <= lo <= hi <= kMaxLevel.
GrowthTable growth_table(int n_lo, int n_hi, Route route = Route::Fast);

/// (2 L_n + (-1)^n) / 3.
std::int64_t lower_bound_lag(int n);

// ---------------------------------------------------------------------------
// Two-step recursion.

enum class Parity { Even, Odd };

const char* to_string(Parity p);

struct LowerBoundTrace {
    Parity parity = Parity::Even;
    /// Levels n = 0, 2, 4, ... or 1, 3, 5, ...
    std::vector<int> levels;
    std::vector<std::array<Int128, 3>> omega_sequence;
    /// omega_n[c] = sum_e coefficients[c][e] mu_e^{n/2} with mu = (lambda, lambda', conj lambda').
    /// Odd parity folds mu_e^{-1/2} into the coefficients.
    std::array<std::array<Complex, 3>, 3> coefficients{};
    /// coefficients[0][0].
    Complex leading_constant;
    /// |omega_n[0]| / lambda^{n/2}.
    std::vector<double> lambda_scaled_values;
};

/// Iterates the exact step matrix from omega_0 = (0,1,1) or omega_1 = (1,1,-1)
/// up to n_max. Throws ArgumentError if n_max < 2, OverflowError past 128 bits.
LowerBoundTrace lower_bound_trace(Parity parity, int n_max);

struct RecursionCheck {
    bool passed = true;
    int levels_checked = 0;
    int first_bad_n = -1;
    int first_bad_component = -1;
};

/// omega_n at k_n from the two-step recursion against direct correlation spectra, 2 <= n <= n_max.
RecursionCheck verify_lower_bound_recursion(int n_max);

// ---------------------------------------------------------------------------
// Level crossings.

struct CrossingReport {
    int n = 0;
    double eta = 0.0;
    /// Strict sign changes of R - (1 + eta) 2^n around the circle; each brackets a distinct root.
    std::int64_t count = 0;
    std::int64_t grid_size = 0;
    bool refined = false;
    /// Brackets whose root was confirmed by bisection to width 1e-12.
    std::int64_t confirmed = 0;
    /// Samples within this distance of the level are treated as undecided.
    double sample_tolerance = 0.0;
};

inline constexpr double kMaxCrossingEta = 1.0 / 256.0;

/// grid_size = 0 picks 4 L_n. Throws ArgumentError if the grid is coarser than
/// 4 L_n or odd, or if |eta| > 2^-8.
CrossingReport crossing_count(int n, double eta, std::int64_t grid_size = 0, bool refine = false);

// ---------------------------------------------------------------------------
// L_q norms.

struct MqNorms {
    int n = 0;
    std::int64_t grid_size = 0;
    Int128 m2_squared = 0;  // M_2(P_n)^2 = 2^n
    Int128 m4_fourth = 0;   // M_4(P_n)^4 = sum_k a_k^2
    double m1 = 0.0;
    double m_inf = 0.0;
    double m4 = 0.0;
    /// f = R - 2^n = sum_{m >= 1} b_m cos(m t), b_m = 2 a_m.
    Int128 mu_squared = 0;  // M_2(f)^2 = sum_k a_k^2 - 4^n
    double mu = 0.0;
    double m1_f = 0.0;
    double m_inf_f = 0.0;
    /// Bound on the sampling error of each R value.
    double sample_error = 0.0;
    /// s_m = sum_{j <= m} b_j^2 / mu^2 for m = 0..L_n - 1; s_{L_n - 1} = 2.
    std::vector<double> partial_sums;
};

/// grid_size = 0 picks 16 L_n; smaller grids are rejected.
MqNorms mq_norms(int n, std::int64_t grid_size = 0);

}  // namespace rscert
