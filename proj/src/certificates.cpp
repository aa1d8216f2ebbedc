#include "rscert/certificates.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "rscert/errors.hpp"

namespace rscert {

std::string to_string(PrecisionMode mode) {
    return mode == PrecisionMode::Double ? "double" : "extended";
}

PrecisionMode precision_mode_from_string(const std::string& text) {
    if (text == "double") return PrecisionMode::Double;
    if (text == "extended") return PrecisionMode::Extended;
    throw ArgumentError("precision mode must be 'double' or 'extended', got '" + text + "'");
}

nlohmann::json to_json(const NormCertificate& cert) {
    nlohmann::json j;
    j["kind"] = cert.kind;
    j["k"] = cert.k;
    j["epsilon"] = cert.epsilon;
    j["l_range"] = {cert.l_lo, cert.l_hi};
    j["max_ratio"] = cert.max_ratio;
    j["argmax_l"] = cert.argmax_l;
    j["error_budget"] = cert.error_budget;
    j["passed"] = cert.passed;
    j["precision_mode"] = cert.precision_mode;
    j["runtime_ms"] = cert.runtime_ms;
    j["complete"] = cert.complete;
    j["cross_validation"] = {{"samples", cert.cross_validation_samples},
                             {"max_rel_diff", cert.cross_validation_max_rel}};
    if (!cert.note.empty()) j["note"] = cert.note;
    return j;
}

NormCertificate certificate_from_json(const nlohmann::json& j) {
    NormCertificate c;
    c.kind = j.at("kind").get<std::string>();
    c.k = j.at("k").get<int>();
    c.epsilon = j.at("epsilon").get<double>();
    c.l_lo = j.at("l_range").at(0).get<std::int64_t>();
    c.l_hi = j.at("l_range").at(1).get<std::int64_t>();
    c.max_ratio = j.at("max_ratio").get<double>();
    c.argmax_l = j.at("argmax_l").get<std::int64_t>();
    c.error_budget = j.at("error_budget").get<double>();
    c.passed = j.at("passed").get<bool>();
    c.precision_mode = j.at("precision_mode").get<std::string>();
    c.runtime_ms = j.at("runtime_ms").get<double>();
    if (j.contains("complete")) c.complete = j.at("complete").get<bool>();
    if (j.contains("cross_validation")) {
        c.cross_validation_samples = j.at("cross_validation").at("samples").get<std::int64_t>();
        c.cross_validation_max_rel = j.at("cross_validation").at("max_rel_diff").get<double>();
    }
    if (j.contains("note")) c.note = j.at("note").get<std::string>();
    return c;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Real growth_of(double epsilon, const Real& lambda) {
    const Real one_eps = 1 + Real(epsilon);
    return one_eps * one_eps * lambda;
}

Complex complex_power(Complex base, std::uint64_t e) {
    Complex r(1);
    while (e != 0) {
        if ((e & 1u) != 0) r *= base;
        e >>= 1u;
        if (e != 0) base *= base;
    }
    return r;
}

// M1^l B^k = X 2^exponent, evaluated through M1^2 = S diag(mu) S^{-1} in 50 digits.
class EigenRoute {
public:
    EigenRoute(const NamedConstants& c, int k) : lambda_(c.lambda) {
        const EigenSystem& es = c.m1_squared;
        s_ = es.vectors;
        s_inv_ = es.inverse_vectors;
        ratio_ = c.lambda_prime / Complex(c.lambda);
        log2_lambda_ = log(c.lambda) / log(Real(2));
        const ExactMat3 bk = power(mats::B(), static_cast<unsigned>(k));
        tail_even_ = CMat3::from(bk);
        tail_odd_ = CMat3::from(mats::M1() * bk);
    }

    std::pair<CMat3, std::int64_t> eval(std::int64_t l) const {
        const auto m = static_cast<std::uint64_t>(l / 2);
        CMat3 d;
        d(0, 0) = Complex(1);
        d(1, 1) = complex_power(ratio_, m);
        d(2, 2) = conj(d(1, 1));
        CMat3 x = s_ * d * s_inv_ * (l % 2 == 0 ? tail_even_ : tail_odd_);
        const Real log2_scale = log2_lambda_ * Real(m);
        const Real e = floor(log2_scale);
        const Real frac = exp((log2_scale - e) * log(Real(2)));
        for (auto& z : x.e) z = Complex(real(z) * frac);
        return {x, static_cast<std::int64_t>(e)};
    }

    Real log_norm(std::int64_t l) const {
        const auto [x, e] = eval(l);
        return log(spectral_norm(x).value) + Real(e) * log(Real(2));
    }

private:
    Real lambda_;
    CMat3 s_, s_inv_, tail_even_, tail_odd_;
    Complex ratio_;
    Real log2_lambda_;
};

template <typename T>
struct BlockResult {
    T max_ratio = -1;
    std::int64_t argmax_l = 0;
    double max_rel_err = 0.0;
    std::vector<std::pair<std::int64_t, long double>> samples;  // (l, log norm)
};

template <typename T>
struct SweepContext {
    int k = 1;
    std::int64_t l_max = 1;
    T half_log_growth = 0;
    const EigenRoute* route = nullptr;
    const SweepOptions* options = nullptr;
    const std::vector<std::int64_t>* sample_ls = nullptr;
};

template <typename T>
ScaledMat<T> seed_block(const SweepContext<T>& ctx, std::int64_t l0) {
    ScaledMat<T> s;
    if (l0 == 1) {
        const ExactMat3 x = mats::M1() * power(mats::B(), static_cast<unsigned>(ctx.k));
        for (std::size_t i = 0; i < 9; ++i) s.mantissa[i] = static_cast<T>(x.e[i]);
        s.err = 0.0;
    } else {
        const auto [x, e] = ctx.route->eval(l0);
        for (std::size_t i = 0; i < 9; ++i) s.mantissa[i] = static_cast<T>(real(x.e[i]));
        s.exponent = e;
        // Entrywise rounding: |E|_2 <= |E|_F <= u |X|_F <= sqrt(3) u |X|_2.
        s.err = 2.0 * static_cast<double>(std::numeric_limits<T>::epsilon() / 2);
    }
    s.renormalize();
    return s;
}

template <typename T>
BlockResult<T> run_block(const SweepContext<T>& ctx, std::int64_t l0, std::int64_t l1) {
    using std::exp;
    using std::log;
    const double u = static_cast<double>(std::numeric_limits<T>::epsilon() / 2);
    const SweepOptions& opt = *ctx.options;
    BlockResult<T> out;
    ScaledMat<T> x = seed_block(ctx, l0);
    const T ln2 = log(T(2));
    auto sample_it = std::lower_bound(ctx.sample_ls->begin(), ctx.sample_ls->end(), l0);

    for (std::int64_t l = l0; l <= l1; ++l) {
        if (l != l0) {
            // Left multiplication by M1 = [[0,1,0],[2,0,-1],[2,0,1]].
            auto& m = x.mantissa;
            std::array<T, 9> n;
            for (int c = 0; c < 3; ++c) {
                const T r0 = m[static_cast<std::size_t>(c)];
                const T r1 = m[static_cast<std::size_t>(3 + c)];
                const T r2 = m[static_cast<std::size_t>(6 + c)];
                n[static_cast<std::size_t>(c)] = r1;
                n[static_cast<std::size_t>(3 + c)] = 2 * r0 - r2;
                n[static_cast<std::size_t>(6 + c)] = 2 * r0 + r2;
            }
            m = n;
            x.err += opt.per_step_ulps * u;
            x.renormalize();
        }
        const BasicSpectralNorm<T> sn = spectral_norm_fast(x.mantissa);
        const T log_norm = log(sn.value) + static_cast<T>(x.exponent) * ln2;
        if (sample_it != ctx.sample_ls->end() && *sample_it == l) {
            out.samples.emplace_back(l, static_cast<long double>(log_norm));
            ++sample_it;
        }
        if (ctx.k == 1 && l == 1) continue;
        const T log_bound = static_cast<T>(l + ctx.k) * ctx.half_log_growth;
        const T ratio = exp(log_norm - log_bound);
        const double eval_err =
            4.0 * u *
            static_cast<double>(std::abs(log_bound) + std::abs(log_norm) + std::abs(static_cast<T>(x.exponent) * ln2) + 1);
        const double rel = opt.safety * x.err + static_cast<double>(sn.error_bound / sn.value) + eval_err;
        out.max_rel_err = std::max(out.max_rel_err, rel);
        if (ratio > out.max_ratio) {
            out.max_ratio = ratio;
            out.argmax_l = l;
        }
    }
    return out;
}

enum class Verdict { Pass, Fail, Inconclusive };

template <typename T>
NormCertificate run_sweep(int k, double epsilon, std::int64_t l_max, const SweepOptions& opt,
                          const NamedConstants& nc, const std::vector<std::int64_t>& sample_ls,
                          Verdict& verdict) {
    const auto start = Clock::now();
    const EigenRoute route(nc, k);
    SweepContext<T> ctx;
    ctx.k = k;
    ctx.l_max = l_max;
    ctx.half_log_growth = static_cast<T>(log(growth_of(epsilon, nc.lambda)) / 2);
    ctx.route = &route;
    ctx.options = &opt;
    ctx.sample_ls = &sample_ls;

    const std::int64_t block = std::max<std::int64_t>(1, opt.block);
    const std::int64_t n_blocks = (l_max + block - 1) / block;
    std::vector<BlockResult<T>> results(static_cast<std::size_t>(n_blocks));
    auto work = [&](std::int64_t b_lo, std::int64_t b_hi) {
        for (std::int64_t b = b_lo; b < b_hi; ++b) {
            const std::int64_t l0 = 1 + b * block;
            const std::int64_t l1 = std::min(l_max, l0 + block - 1);
            results[static_cast<std::size_t>(b)] = run_block(ctx, l0, l1);
        }
    };
    const int parts = static_cast<int>(std::clamp<std::int64_t>(opt.partitions, 1, n_blocks));
    if (parts == 1) {
        work(0, n_blocks);
    } else {
        std::vector<std::thread> threads;
        for (int p = 0; p < parts; ++p) {
            threads.emplace_back(work, n_blocks * p / parts, n_blocks * (p + 1) / parts);
        }
        for (auto& t : threads) t.join();
    }

    NormCertificate cert;
    cert.kind = "lemma3-even";
    cert.k = k;
    cert.epsilon = epsilon;
    cert.l_lo = k == 1 ? 2 : 1;
    cert.l_hi = l_max;
    cert.precision_mode = to_string(std::is_same_v<T, double> ? PrecisionMode::Double : PrecisionMode::Extended);
    T best = -1;
    std::vector<std::pair<std::int64_t, long double>> samples;
    for (const auto& r : results) {
        if (r.max_ratio > best) {
            best = r.max_ratio;
            cert.argmax_l = r.argmax_l;
        }
        cert.error_budget = std::max(cert.error_budget, r.max_rel_err);
        samples.insert(samples.end(), r.samples.begin(), r.samples.end());
    }
    cert.max_ratio = static_cast<double>(best);

    // Independent route at the sampled l.
    for (const auto& [l, log_inc] : samples) {
        const Real diff = Real(log_inc) - route.log_norm(l);
        const double rel = std::abs(std::expm1(static_cast<double>(diff)));
        cert.cross_validation_max_rel = std::max(cert.cross_validation_max_rel, rel);
    }
    cert.cross_validation_samples = static_cast<std::int64_t>(samples.size());

    const double threshold = static_cast<double>(nc.threshold_even[static_cast<std::size_t>(k - 1)]);
    cert.complete = static_cast<double>(l_max) >= std::floor(threshold);
    const bool routes_agree = cert.cross_validation_max_rel < opt.cross_validation_tolerance;
    if (cert.max_ratio + cert.error_budget < 1.0) {
        verdict = Verdict::Pass;
    } else if (cert.max_ratio - cert.error_budget >= 1.0) {
        verdict = Verdict::Fail;
    } else {
        verdict = Verdict::Inconclusive;
    }
    cert.passed = verdict == Verdict::Pass && routes_agree;
    cert.note = "all l in range, both parities";
    if (!routes_agree) cert.note += "; incremental and eigen routes disagree";
    cert.runtime_ms = elapsed_ms(start);
    return cert;
}

std::vector<std::int64_t> sample_points(std::int64_t l_max, int samples) {
    std::vector<std::int64_t> out;
    if (samples <= 0) return out;
    if (samples == 1 || l_max == 1) return {1};
    for (int i = 0; i < samples; ++i) {
        out.push_back(1 + static_cast<std::int64_t>(static_cast<long double>(i) * (l_max - 1) / (samples - 1)));
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NormCertificate analytic_k3(double epsilon, const NamedConstants& nc, const Clock::time_point start) {
    const Real one_eps = 1 + Real(epsilon);
    // Even l >= 2: c_3 / (1+eps)^{l+3}; odd l >= 1: c'_3 / (1+eps)^{l+3}.
    const Real even = nc.c[2] / pow(one_eps, 5);
    const Real odd = nc.c_odd[2] / pow(one_eps, 4);
    NormCertificate cert;
    cert.kind = "lemma3-even";
    cert.k = 3;
    cert.epsilon = epsilon;
    cert.l_lo = 1;
    cert.l_hi = 0;
    cert.max_ratio = static_cast<double>(std::max(even, odd));
    cert.argmax_l = even >= odd ? 2 : 1;
    cert.error_budget = 1e-40;  // 50-digit evaluation of c_3 and c'_3
    cert.passed = cert.max_ratio + cert.error_budget < 1.0;
    cert.precision_mode = "extended";
    cert.complete = true;
    cert.note = "negative threshold: analytic bound only";
    cert.runtime_ms = elapsed_ms(start);
    return cert;
}

}  // namespace

NormCertificate sweep_lemma3(int k, double epsilon, const SweepOptions& options) {
    const auto start = Clock::now();
    if (k < 1 || k > 3) throw ArgumentError("sweep_lemma3: k must be 1, 2 or 3");
    if (!(epsilon > 0)) throw ArgumentError("sweep_lemma3: epsilon must be positive");
    const NamedConstants nc = named_constants(epsilon);
    const double threshold = static_cast<double>(nc.threshold_even[static_cast<std::size_t>(k - 1)]);
    if (!options.l_max && threshold < 1) return analytic_k3(epsilon, nc, start);

    const std::int64_t l_max = options.l_max ? *options.l_max : static_cast<std::int64_t>(std::floor(threshold));
    if (l_max < 1) throw ArgumentError("sweep_lemma3: l_max must be at least 1");
    const auto samples = sample_points(l_max, options.samples);

    Verdict verdict = Verdict::Pass;
    NormCertificate cert;
    if (options.mode == PrecisionMode::Double) {
        cert = run_sweep<double>(k, epsilon, l_max, options, nc, samples, verdict);
        if (verdict == Verdict::Inconclusive && options.escalate) {
            cert = run_sweep<long double>(k, epsilon, l_max, options, nc, samples, verdict);
        }
    } else {
        cert = run_sweep<long double>(k, epsilon, l_max, options, nc, samples, verdict);
    }
    if (verdict == Verdict::Inconclusive) {
        throw InconclusiveError("sweep_lemma3: error budget " + std::to_string(cert.error_budget) +
                                " leaves no margin at max ratio " + std::to_string(cert.max_ratio));
    }
    cert.runtime_ms = elapsed_ms(start);
    return cert;
}

// ---------------------------------------------------------------------------

PowerCheck check_lemma4_powers(double epsilon) {
    const auto start = Clock::now();
    const NamedConstants nc = named_constants(epsilon);
    PowerCheck pc;
    pc.growth = nc.growth;
    pc.s1_condition = nc.s1_condition;
    const WideMat3 m1b = widen(mats::M1() * mats::B());
    pc.norm_m1b = spectral_norm(m1b).value;
    pc.l1_violates = pc.norm_m1b > pc.growth;

    NormCertificate& cert = pc.certificate;
    cert.kind = "lemma4-power";
    cert.k = 1;
    cert.epsilon = epsilon;
    cert.l_lo = 2;
    cert.l_hi = 24;
    cert.precision_mode = "extended";
    Real worst = -1;
    Real budget = 0;
    WideMat3 p = m1b;
    for (std::int64_t l = 2; l <= 24; ++l) {
        p = p * m1b;
        const SpectralNorm sn = spectral_norm(p);
        const Real bound = pow(pc.growth, static_cast<int>(l));
        const Real ratio = sn.value / bound;
        pc.direct_ratios.push_back(ratio);
        budget = std::max(budget, Real((sn.error_bound + 1e-45 * sn.value) / bound));
        if (ratio > worst) {
            worst = ratio;
            cert.argmax_l = l;
        }
    }
    pc.analytic_ratio = pc.s1_condition * pow(nc.m1b_dominant / pc.growth, static_cast<int>(pc.analytic_from));
    cert.max_ratio = static_cast<double>(worst);
    cert.error_budget = static_cast<double>(budget);
    cert.passed = cert.max_ratio + cert.error_budget < 1.0 && pc.analytic_ratio < 1;
    cert.complete = true;
    cert.note = "l >= 25 by |S1||S1^-1| ((1+sqrt17)/2)^l";
    cert.runtime_ms = elapsed_ms(start);
    return pc;
}

MixedCheck check_lemma4_mixed(double epsilon) {
    const auto start = Clock::now();
    const NamedConstants nc = named_constants(epsilon);
    MixedCheck mc;
    const WideMat3 m1 = widen(mats::M1());
    const WideMat3 b = widen(mats::B());
    const WideMat3 head = m1 * b;

    NormCertificate& cert = mc.certificate;
    cert.kind = "lemma4-mixed";
    cert.epsilon = epsilon;
    cert.l_lo = 1;
    cert.l_hi = 5;
    cert.precision_mode = "extended";
    Real worst = -1;
    Real budget = 0;
    for (unsigned l = 1; l <= 5; ++l) {
        for (unsigned k = 1; k <= 3; ++k) {
            const SpectralNorm sn = spectral_norm(head * power(m1, l) * power(b, k));
            const Real bound = pow(nc.growth, Real(l + k + 2) / 2);
            const Real ratio = sn.value / bound;
            mc.ratios[l - 1][k - 1] = ratio;
            budget = std::max(budget, Real((sn.error_bound + 1e-45 * sn.value) / bound));
            if (ratio > worst) {
                worst = ratio;
                cert.argmax_l = l;
                mc.argmax_k = static_cast<int>(k);
            }
        }
    }
    cert.k = mc.argmax_k;
    mc.norm_m1bm14 = spectral_norm(head * power(m1, 4)).value;
    mc.growth_cubed = pow(nc.growth, 3);
    cert.max_ratio = static_cast<double>(worst);
    cert.error_budget = static_cast<double>(budget);
    cert.passed = cert.max_ratio + cert.error_budget < 1.0 && mc.norm_m1bm14 < mc.growth_cubed;
    cert.complete = true;
    cert.note = "1 <= k <= 3; l >= 6 reduces through |M1 B M1^4| < g^3";
    cert.runtime_ms = elapsed_ms(start);
    return mc;
}

// ---------------------------------------------------------------------------

WordConstant fit_word_constant(std::size_t max_length, double epsilon) {
    const double growth = static_cast<double>(growth_of(epsilon, solve_characteristic_cubic().lambda));
    WordConstant wc;
    wc.max_length = max_length;
    for (std::size_t len = 1; len <= max_length; ++len) {
        const double bound = std::pow(growth, static_cast<double>(len) / 2);
        for (const Word& w : all_admissible_words(len)) {
            const ExactMat3 m = word_product(w);
            std::array<double, 9> d{};
            for (std::size_t i = 0; i < 9; ++i) d[i] = static_cast<double>(m.e[i]);
            const double ratio = spectral_norm_fast(d).value / bound;
            if (ratio > wc.value) {
                wc.value = ratio;
                wc.argmax_word = to_string(w);
            }
        }
    }
    return wc;
}

WordBound bound_word_norm(std::span<const Letter> word, double constant, double epsilon) {
    require_admissible(word);
    if (word.empty()) throw ArgumentError("bound_word_norm: empty word");
    const Real growth = growth_of(epsilon, solve_characteristic_cubic().lambda);
    const auto n = static_cast<int>(word.size());
    WordBound wb;
    wb.norm = spectral_norm(exact_word_product(word)).value;
    wb.bound = Real(constant) * pow(growth, Real(n) / 2);
    wb.ratio = wb.norm / wb.bound;
    const Real lhs = log(wb.norm) / (Real(n) / 2);
    const Real rhs = log(growth) + 2 * log(Real(constant)) / n;
    wb.exponent_check = lhs <= rhs;
    return wb;
}

}  // namespace rscert
