#pragma once

// Lag classes, the descent k_n -> k_{n-1}, and the omega-vector recursion.
//
// For odd k with -2^n < k < 2^n the class tau in {1,2,3,4} is the unique value
// with (tau-3) 2^{n-1} < k <= (tau-2) 2^{n-1}. The omega vector
//
//   omega_n(k) = (a_k, b_{k'}, c_{k'}),   c_j = coefficient of z^j in P_n conj(Q_n),
//
// satisfies omega_n(k) = M(tau(k)) omega_{n-1}(k_down), with M in {A,B,C,D}.

#include <array>
#include <cstdint>
#include <string>

#include "rscert/mat3_exact.hpp"
#include "rscert/rs_poly.hpp"

namespace rscert {

struct LagClass {
    int n = 0;
    std::int64_t k = 0;
    int tau = 0;
};

struct OmegaVector {
    int n = 0;
    std::int64_t k = 0;
    std::array<std::int64_t, 3> entries{};
};

struct Descent {
    std::int64_t k_prime = 0;
    std::int64_t k_down = 0;
};

/// Throws InvalidLagError unless n >= 1, k odd and |k| < 2^n.
LagClass classify(int n, std::int64_t k);

/// k' and the lag one level down. Requires n >= 2.
Descent descend(int n, std::int64_t k);

/// A, B, C, D for tau = 1..4.
ExactMat3 select_matrix(int tau);

/// omega_1(1) = (1, 1, -1), omega_1(-1) = (1, -1, 1).
std::array<std::int64_t, 3> omega_seed(std::int64_t k1);

/// omega_n(k) by the matrix chain, in exact integer arithmetic.
OmegaVector omega_by_recursion(int n, std::int64_t k);

/// Spectra needed to read omega vectors directly at one level.
struct LevelSpectra {
    CorrelationSpectrum auto_p;
    CorrelationSpectrum cross;  // b_k = sum_j p_j q_{j+k}

    static LevelSpectra compute(int n, Route route = Route::Fast);
    /// Coefficient of z^k in P_n conj(Q_n).
    std::int64_t p_conj_q(std::int64_t k) const { return cross.at(-k); }
};

/// omega_n(k) read from the correlation spectra.
OmegaVector omega_direct(const LevelSpectra& spectra, std::int64_t k);

/// Selector letters M(tau(k_n)) M(tau(k_{n-1})) ... M(tau(k_2)), in product order.
Word admissible_word(int n, std::int64_t k);

struct RecursionReport {
    int n = 0;
    std::int64_t lags_checked = 0;
    std::int64_t mismatches = 0;
    std::array<std::int64_t, 4> class_counts{};
    /// First mismatching lag, if any.
    std::int64_t first_bad_lag = 0;
    bool passed() const { return mismatches == 0; }
};

/// Compares omega_by_recursion with omega_direct for every odd lag at level n.
RecursionReport verify_recursion(int n, Route route = Route::Fast);

}  // namespace rscert
