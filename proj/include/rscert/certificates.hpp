#pragma once

// Norm-bound certificates for products M1^l B^k and the mixed families M1 B M1^l B^k.
//
// Let g = (1 + eps)^2 lambda. The sweep establishes
//
//   |M1^l B^k| <= g^{(l + k) / 2}
//
// over an l-range, carrying a first-order floating point error budget. Past the
// threshold log(c_k) / log(1 + eps) - k the inequality follows from c_k alone.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rscert/mat3_exact.hpp"
#include "rscert/spectral.hpp"

namespace rscert {

enum class PrecisionMode { Double, Extended };

std::string to_string(PrecisionMode mode);
/// "double" or "extended"; throws ArgumentError otherwise.
PrecisionMode precision_mode_from_string(const std::string& text);

/// Matrix mantissa * 2^exponent with Frobenius norm of the mantissa in [1, 2).
template <typename T>
struct ScaledMat {
    std::array<T, 9> mantissa{};
    std::int64_t exponent = 0;
    /// Relative (normwise) error bound of the represented matrix.
    double err = 0.0;

    T frobenius() const {
        T s = 0;
        for (T x : mantissa) s += x * x;
        using std::sqrt;
        return sqrt(s);
    }

    /// Power-of-two rescaling into [1, 2); exact.
    void renormalize() {
        const T f = frobenius();
        if (f == 0) return;
        int e = 0;
        using std::frexp;
        using std::ldexp;
        frexp(f, &e);  // f = m 2^e, m in [0.5, 1)
        const int shift = e - 1;
        if (shift == 0) return;
        for (T& x : mantissa) x = ldexp(x, -shift);
        exponent += shift;
    }

    /// log of the represented spectral norm given the mantissa norm.
    static T log_value(T mantissa_norm, std::int64_t exponent) {
        using std::log;
        return log(mantissa_norm) + static_cast<T>(exponent) * log(T(2));
    }
};

struct NormCertificate {
    std::string kind;  // lemma3-even | lemma3-odd | lemma4-power | lemma4-mixed
    int k = 0;
    double epsilon = kDefaultEpsilon;
    std::int64_t l_lo = 1;
    std::int64_t l_hi = 0;
    double max_ratio = 0.0;
    std::int64_t argmax_l = 0;
    double error_budget = 0.0;
    bool passed = false;
    std::string precision_mode = "double";
    double runtime_ms = 0.0;

    /// Whether l_range reaches the threshold past which the analytic bound holds.
    bool complete = false;
    /// Largest relative disagreement between the incremental and eigen routes.
    double cross_validation_max_rel = 0.0;
    std::int64_t cross_validation_samples = 0;
    std::string note;
};

nlohmann::json to_json(const NormCertificate& cert);
NormCertificate certificate_from_json(const nlohmann::json& j);

struct SweepOptions {
    /// Defaults to floor(threshold_even[k - 1]).
    std::optional<std::int64_t> l_max;
    int partitions = 1;
    PrecisionMode mode = PrecisionMode::Double;
    /// Rounding growth per multiplication, in units of roundoff.
    double per_step_ulps = 20.0;
    /// Multiplier on the linear error model.
    double safety = 4.0;
    /// Cross-validation samples against the eigen route.
    int samples = 1000;
    double cross_validation_tolerance = 1e-9;
    /// Fixed l-block length; each block restarts from an extended-precision seed.
    std::int64_t block = 65536;
    /// Retry in extended precision when the double budget is inconclusive.
    bool escalate = true;
};

/// Verifies |M1^l B^k| <= g^{(l+k)/2} for 1 <= l <= l_max, (l, k) != (1, 1).
/// k = 3 has a negative threshold and yields an analytic-only certificate.
/// Throws ArgumentError for bad k or l_max < 1, InconclusiveError if even the
/// extended-precision budget cannot decide.
NormCertificate sweep_lemma3(int k, double epsilon = kDefaultEpsilon, const SweepOptions& options = {});

/// |(M1 B)^l| <= g^l for 2 <= l <= 24 directly, and from 25 on via |S1||S1^{-1}| ((1+sqrt17)/2)^l.
struct PowerCheck {
    NormCertificate certificate;
    Real s1_condition;
    std::int64_t analytic_from = 25;
    /// |S1||S1^{-1}| (mu / g)^l at l = analytic_from; decreasing in l.
    Real analytic_ratio;
    Real norm_m1b;
    Real growth;
    /// |M1 B| > g, so l = 1 must be excluded.
    bool l1_violates = false;
    std::vector<Real> direct_ratios;  // l = 2..24
};

PowerCheck check_lemma4_powers(double epsilon = kDefaultEpsilon);

/// |M1 B M1^l B^k| <= g^{(l+k+2)/2} for 1 <= l <= 5, 1 <= k <= 3, plus the
/// reduction constant |M1 B M1^4| < g^3.
struct MixedCheck {
    NormCertificate certificate;
    std::array<std::array<Real, 3>, 5> ratios{};  // [l-1][k-1]
    int argmax_k = 0;
    Real norm_m1bm14;
    Real growth_cubed;
};

MixedCheck check_lemma4_mixed(double epsilon = kDefaultEpsilon);

/// sup over admissible words of length 1..max_length of |W| / g^{n/2}.
struct WordConstant {
    double value = 0.0;
    std::string argmax_word;
    std::size_t max_length = 0;
};

WordConstant fit_word_constant(std::size_t max_length = 12, double epsilon = kDefaultEpsilon);

struct WordBound {
    Real norm;
    Real bound;  // K g^{n/2}
    Real ratio;
    /// log|W| / (n/2) <= log g + 2 log(K) / n.
    bool exponent_check = false;
};

/// Throws InadmissibleWordError on forbidden pairs.
WordBound bound_word_norm(std::span<const Letter> word, double constant,
                          double epsilon = kDefaultEpsilon);

}  // namespace rscert
