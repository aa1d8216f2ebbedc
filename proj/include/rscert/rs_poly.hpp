#pragma once

// Rudin-Shapiro coefficient sequences and their exact correlation spectra.
//
// P_0 = Q_0 = 1,
// P_n = P_{n-1} + z^{2^{n-1}} Q_{n-1},   Q_n = P_{n-1} - z^{2^{n-1}} Q_{n-1}.
//
// Correlations are exact integers. Two routes are provided: an O(L^2) direct
// sum used as the oracle, and an O(L log L) transform route whose output is
// rounded to the nearest integer under a 0.25 residual guard.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rscert/int128.hpp"

namespace rscert {

inline constexpr int kMaxLevel = 30;
/// Largest n for which the direct O(L^2) oracle is accepted.
inline constexpr int kMaxDirectLevel = 14;
/// Rounding guard for the transform route.
inline constexpr double kRoundingGuard = 0.25;

enum class Which { P, Q };

char to_char(Which w);
Which which_from_char(char c);

struct CoefficientSequence {
    int n = 0;
    Which which = Which::P;
    std::vector<std::int8_t> coeffs;  // coeffs[j] is the coefficient of z^j

    std::size_t length() const { return coeffs.size(); }
};

enum class CorrelationKind { Auto, Cross };
enum class Route { Direct, Fast };

/// Exact correlation values indexed by lag.
///
/// Auto spectra are symmetric and store lags 0..L-1 only. Cross spectra store
/// lags -(L-1)..(L-1) densely with an offset of L-1.
class CorrelationSpectrum {
public:
    CorrelationSpectrum() = default;
    CorrelationSpectrum(int n, CorrelationKind kind, std::vector<std::int64_t> values);

    int level() const { return n_; }
    CorrelationKind kind() const { return kind_; }
    bool symmetric() const { return kind_ == CorrelationKind::Auto; }
    std::int64_t length() const { return std::int64_t{1} << n_; }

    /// Value at lag k; zero outside (-L, L).
    std::int64_t at(std::int64_t k) const;
    std::int64_t operator[](std::int64_t k) const { return at(k); }

    /// Values for lags 0..L-1.
    std::span<const std::int64_t> nonnegative() const;
    const std::vector<std::int64_t>& raw() const { return values_; }

    /// Largest rounding residual seen by the transform route (0 for direct).
    double rounding_residual = 0.0;

private:
    int n_ = 0;
    CorrelationKind kind_ = CorrelationKind::Auto;
    std::vector<std::int64_t> values_;
};

/// Coefficients of P_n or Q_n. Throws LevelRangeError unless 0 <= n <= max_level.
CoefficientSequence generate(int n, Which which, int max_level = kMaxLevel);

/// a_k = sum_j c_j c_{j+k}.
CorrelationSpectrum autocorrelate(const CoefficientSequence& seq, Route route = Route::Fast);

/// b_k = sum_j p_j q_{j+k}: the coefficient of z^k in conj(P_n(z)) Q_n(z) on |z| = 1.
/// The lag -k value equals the coefficient of z^k in P_n conj(Q_n).
CorrelationSpectrum crosscorrelate(const CoefficientSequence& p, const CoefficientSequence& q,
                                   Route route = Route::Fast);

/// |P_n|^2 + |Q_n|^2 = 2^{n+1} at coefficient level.
bool parseval_check(int n, Route route = Route::Fast);

/// sum_k a_k^2 for P_n, i.e. (2 pi)^{-1} \int |P_n|^4.
Int128 moment4(int n);
/// Same quantity from an already computed auto spectrum.
Int128 moment4(const CorrelationSpectrum& auto_spectrum);

// Text formats.
void write_coefficients(std::ostream& out, const CoefficientSequence& seq);
CoefficientSequence read_coefficients(std::istream& in);
/// CSV with header `k,value`, non-negative lags only.
void write_spectrum_csv(std::ostream& out, const CorrelationSpectrum& spectrum);

}  // namespace rscert
