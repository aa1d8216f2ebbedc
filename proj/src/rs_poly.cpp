#include "rscert/rs_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rscert/errors.hpp"
#include "rscert/fft.hpp"

namespace rscert {

char to_char(Which w) { return w == Which::P ? 'P' : 'Q'; }

Which which_from_char(char c) {
    switch (c) {
        case 'P':
        case 'p':
            return Which::P;
        case 'Q':
        case 'q':
            return Which::Q;
        default:
            throw ArgumentError(std::string("unknown polynomial selector '") + c + "'");
    }
}

CorrelationSpectrum::CorrelationSpectrum(int n, CorrelationKind kind,
                                         std::vector<std::int64_t> values)
    : n_(n), kind_(kind), values_(std::move(values)) {
    const std::size_t len = std::size_t{1} << n;
    const std::size_t expected = kind == CorrelationKind::Auto ? len : 2 * len - 1;
    if (values_.size() != expected) throw ArgumentError("correlation spectrum: wrong length");
}

std::int64_t CorrelationSpectrum::at(std::int64_t k) const {
    const std::int64_t len = length();
    if (k <= -len || k >= len) return 0;
    if (kind_ == CorrelationKind::Auto) return values_[static_cast<std::size_t>(k < 0 ? -k : k)];
    return values_[static_cast<std::size_t>(k + len - 1)];
}

std::span<const std::int64_t> CorrelationSpectrum::nonnegative() const {
    const auto len = static_cast<std::size_t>(length());
    if (kind_ == CorrelationKind::Auto) return {values_.data(), len};
    return {values_.data() + (len - 1), len};
}

CoefficientSequence generate(int n, Which which, int max_level) {
    if (n < 0 || n > max_level || n > kMaxLevel) {
        throw LevelRangeError("generate: level " + std::to_string(n) + " outside [0, " +
                              std::to_string(std::min(max_level, kMaxLevel)) + "]");
    }
    const std::size_t len = std::size_t{1} << n;
    // After step m the first 2^m entries hold P_m. Q_m is P_m with its upper
    // half negated (m >= 1), and P_m = [P_{m-1}, Q_{m-1}].
    std::vector<std::int8_t> p(len);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        const std::size_t half = std::size_t{1} << (m - 1);
        for (std::size_t j = 0; j < half; ++j) {
            const bool upper = half > 1 && j >= half / 2;
            p[half + j] = static_cast<std::int8_t>(upper ? -p[j] : p[j]);
        }
    }
    if (which == Which::Q && n > 0) {
        for (std::size_t j = len / 2; j < len; ++j) p[j] = static_cast<std::int8_t>(-p[j]);
    }
    return {n, which, std::move(p)};
}

namespace {

std::vector<double> as_double(const CoefficientSequence& seq) {
    return {seq.coeffs.begin(), seq.coeffs.end()};
}

std::int64_t round_checked(double v, double& worst) {
    const double r = std::nearbyint(v);
    worst = std::max(worst, std::abs(v - r));
    return static_cast<std::int64_t>(r);
}

void check_direct_level(int n) {
    if (n > kMaxDirectLevel) {
        throw LevelRangeError("direct correlation route limited to n <= " +
                              std::to_string(kMaxDirectLevel));
    }
}

}  // namespace

CorrelationSpectrum autocorrelate(const CoefficientSequence& seq, Route route) {
    const std::size_t len = seq.length();
    std::vector<std::int64_t> values(len);
    double worst = 0.0;
    if (route == Route::Direct) {
        check_direct_level(seq.n);
        for (std::size_t k = 0; k < len; ++k) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j + k < len; ++j) s += seq.coeffs[j] * seq.coeffs[j + k];
            values[k] = s;
        }
    } else {
        const auto x = as_double(seq);
        const auto r = fft::linear_autocorrelation(x);
        for (std::size_t k = 0; k < len; ++k) values[k] = round_checked(r[k], worst);
        if (worst >= kRoundingGuard) {
            throw RoundingMarginError("autocorrelate: rounding residual exceeds guard", worst);
        }
    }
    CorrelationSpectrum s(seq.n, CorrelationKind::Auto, std::move(values));
    s.rounding_residual = worst;
    return s;
}

CorrelationSpectrum crosscorrelate(const CoefficientSequence& p, const CoefficientSequence& q,
                                   Route route) {
    if (p.n != q.n || p.length() != q.length()) {
        throw ArgumentError("crosscorrelate: sequences have different levels");
    }
    const auto len = static_cast<std::int64_t>(p.length());
    std::vector<std::int64_t> values(static_cast<std::size_t>(2 * len - 1));
    double worst = 0.0;
    if (route == Route::Direct) {
        check_direct_level(p.n);
        for (std::int64_t k = -(len - 1); k < len; ++k) {
            std::int64_t s = 0;
            const std::int64_t lo = std::max<std::int64_t>(0, -k);
            const std::int64_t hi = std::min<std::int64_t>(len, len - k);
            for (std::int64_t j = lo; j < hi; ++j) {
                s += p.coeffs[static_cast<std::size_t>(j)] * q.coeffs[static_cast<std::size_t>(j + k)];
            }
            values[static_cast<std::size_t>(k + len - 1)] = s;
        }
    } else {
        const auto x = as_double(p);
        const auto y = as_double(q);
        const auto r = fft::linear_correlation(x, y);
        for (std::size_t i = 0; i < r.size(); ++i) values[i] = round_checked(r[i], worst);
        if (worst >= kRoundingGuard) {
            throw RoundingMarginError("crosscorrelate: rounding residual exceeds guard", worst);
        }
    }
    CorrelationSpectrum s(p.n, CorrelationKind::Cross, std::move(values));
    s.rounding_residual = worst;
    return s;
}

bool parseval_check(int n, Route route) {
    if (n < 0) return false;
    const auto ap = autocorrelate(generate(n, Which::P), route);
    const auto aq = autocorrelate(generate(n, Which::Q), route);
    const auto pa = ap.nonnegative();
    const auto qa = aq.nonnegative();
    if (pa[0] + qa[0] != (std::int64_t{1} << (n + 1))) return false;
    for (std::size_t k = 1; k < pa.size(); ++k) {
        if (pa[k] + qa[k] != 0) return false;
    }
    return true;
}

Int128 moment4(const CorrelationSpectrum& auto_spectrum) {
    if (auto_spectrum.kind() != CorrelationKind::Auto) {
        throw ArgumentError("moment4: needs an autocorrelation spectrum");
    }
    const auto a = auto_spectrum.nonnegative();
    Int128 sum = static_cast<Int128>(a[0]) * a[0];
    for (std::size_t k = 1; k < a.size(); ++k) sum += 2 * static_cast<Int128>(a[k]) * a[k];
    return sum;
}

Int128 moment4(int n) { return moment4(autocorrelate(generate(n, Which::P), Route::Fast)); }

void write_coefficients(std::ostream& out, const CoefficientSequence& seq) {
    out << "n=" << seq.n << " which=" << to_char(seq.which) << '\n';
    for (std::size_t j = 0; j < seq.coeffs.size(); ++j) {
        if (j != 0) out << ' ';
        out << (seq.coeffs[j] > 0 ? "+1" : "-1");
    }
    out << '\n';
}

CoefficientSequence read_coefficients(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ArgumentError("coefficient file: missing header");
    int n = -1;
    char which = '?';
    if (std::sscanf(header.c_str(), "n=%d which=%c", &n, &which) != 2) {
        throw ArgumentError("coefficient file: malformed header '" + header + "'");
    }
    if (n < 0 || n > kMaxLevel) throw LevelRangeError("coefficient file: level out of range");
    CoefficientSequence seq{n, which_from_char(which), {}};
    seq.coeffs.reserve(std::size_t{1} << n);
    std::string tok;
    while (in >> tok) {
        if (tok == "+1" || tok == "1") {
            seq.coeffs.push_back(1);
        } else if (tok == "-1") {
            seq.coeffs.push_back(-1);
        } else {
            throw ArgumentError("coefficient file: bad token '" + tok + "'");
        }
    }
    if (seq.coeffs.size() != (std::size_t{1} << n)) {
        throw ArgumentError("coefficient file: expected " + std::to_string(std::size_t{1} << n) +
                            " coefficients, got " + std::to_string(seq.coeffs.size()));
    }
    return seq;
}

void write_spectrum_csv(std::ostream& out, const CorrelationSpectrum& spectrum) {
    out << "k,value\n";
    const auto values = spectrum.nonnegative();
    for (std::size_t k = 0; k < values.size(); ++k) out << k << ',' << values[k] << '\n';
}

}  // namespace rscert
