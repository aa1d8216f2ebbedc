#include "rscert/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rscert/analysis.hpp"
#include "rscert/certificates.hpp"
#include "rscert/errors.hpp"
#include "rscert/index_chain.hpp"
#include "rscert/mat3_exact.hpp"
#include "rscert/rs_poly.hpp"
#include "rscert/spectral.hpp"

namespace rscert::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Csv, Json };

struct Range {
    int lo = 0;
    int hi = 0;
};

Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ArgumentError("range must look like A..B, got '" + text + "'");
    }
}

double to_double(const Real& x) { return static_cast<double>(x); }

json complex_json(const Complex& z) { return {{"re", to_double(real(z))}, {"im", to_double(imag(z))}}; }

json int128_json(Int128 v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
    }
    return to_string(v);
}

struct Context {
    Format format = Format::Text;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    std::uint64_t seed = 42;
};

// ---------------------------------------------------------------------------
// Subcommands. Each returns an ExitCode.

int cmd_gen(const Context& ctx, int n, const std::string& which) {
    if (which.size() != 1) throw ArgumentError("--which must be P or Q");
    const auto seq = generate(n, which_from_char(which[0]));
    if (ctx.format == Format::Json) {
        json j{{"n", n}, {"which", std::string(1, to_char(seq.which))}, {"coeffs", seq.coeffs}};
        *ctx.out << j.dump() << '\n';
    } else {
        write_coefficients(*ctx.out, seq);
    }
    return kPass;
}

int cmd_autocorr(const Context& ctx, int n, const std::string& which, const std::string& kind,
                 const std::string& route_name) {
    const Route route = route_name == "direct" ? Route::Direct : Route::Fast;
    CorrelationSpectrum s;
    if (kind == "cross") {
        s = crosscorrelate(generate(n, Which::P), generate(n, Which::Q), route);
    } else {
        if (which.size() != 1) throw ArgumentError("--which must be P or Q");
        s = autocorrelate(generate(n, which_from_char(which[0])), route);
    }
    if (ctx.format == Format::Json) {
        json values = json::array();
        const auto len = s.length();
        for (std::int64_t k = s.symmetric() ? 0 : -(len - 1); k < len; ++k) values.push_back({k, s.at(k)});
        *ctx.out << json{{"n", n}, {"kind", kind}, {"rounding_residual", s.rounding_residual}, {"values", values}}.dump()
                 << '\n';
    } else if (ctx.format == Format::Csv || s.symmetric()) {
        write_spectrum_csv(*ctx.out, s);
    } else {
        *ctx.out << "k,value\n";
        for (std::int64_t k = -(s.length() - 1); k < s.length(); ++k) *ctx.out << k << ',' << s.at(k) << '\n';
    }
    return kPass;
}

int cmd_maxcoef(const Context& ctx, const Range& r) {
    const GrowthTable t = growth_table(r.lo, r.hi);
    if (ctx.format == Format::Json) {
        json rows = json::array();
        for (const auto& g : t.records) {
            rows.push_back({{"n", g.n},
                            {"max_abs_a", g.max_abs_a},
                            {"argmax_k", g.argmax_k},
                            {"max_abs_b", g.max_abs_b},
                            {"argmax_k_b", g.argmax_k_b},
                            {"log2_ratio", g.log2_ratio},
                            {"k_n", g.k_n},
                            {"a_at_k_n", g.a_at_k_n}});
        }
        *ctx.out << json{{"records", rows}, {"slope_a", t.slope_a}, {"slope_b", t.slope_b}}.dump(2) << '\n';
        return kPass;
    }
    *ctx.out << "n,max_abs_a,argmax_k,max_abs_b,argmax_k_b,log2_ratio,k_n,a_at_k_n\n";
    for (const auto& g : t.records) {
        *ctx.out << g.n << ',' << g.max_abs_a << ',' << g.argmax_k << ',' << g.max_abs_b << ',' << g.argmax_k_b
                 << ',' << std::setprecision(8) << g.log2_ratio << ',' << g.k_n << ',' << g.a_at_k_n << '\n';
    }
    if (ctx.format == Format::Text && t.records.size() >= 2) {
        *ctx.out << "# slope_a=" << std::setprecision(6) << t.slope_a << " slope_b=" << t.slope_b << '\n';
    }
    return kPass;
}

int cmd_verify_recursion(const Context& ctx, int n) {
    int status = kPass;
    json levels = json::array();
    for (int m = 1; m <= n; ++m) {
        const RecursionReport r = verify_recursion(m);
        if (!r.passed()) status = kFail;
        if (ctx.format == Format::Json) {
            levels.push_back({{"n", m},
                              {"lags", r.lags_checked},
                              {"class_counts", r.class_counts},
                              {"mismatches", r.mismatches},
                              {"first_bad_lag", r.first_bad_lag}});
        } else {
            *ctx.out << "n=" << m << " lags=" << r.lags_checked << " classes=" << r.class_counts[0] << '/'
                     << r.class_counts[1] << '/' << r.class_counts[2] << '/' << r.class_counts[3]
                     << " mismatches=" << r.mismatches << '\n';
        }
    }
    if (ctx.format == Format::Json) {
        *ctx.out << json{{"levels", levels}, {"passed", status == kPass}}.dump(2) << '\n';
    } else {
        *ctx.out << (status == kPass ? "PASS" : "FAIL") << " omega recursion vs correlation spectra, n <= " << n
                 << '\n';
    }
    return status;
}

int cmd_verify_factorization(const Context& ctx, std::size_t trials, std::size_t max_len) {
    const FactorizationReport r = verify_factorization(trials, max_len, ctx.seed);
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"word", f.word}, {"form", f.form}, {"reason", f.reason}});
    if (ctx.format == Format::Json) {
        *ctx.out << json{{"words", r.words_checked}, {"lengths", r.lengths}, {"seed", ctx.seed},
                         {"failures", failures}, {"passed", r.passed()}}
                        .dump(2)
                 << '\n';
    } else {
        *ctx.out << (r.passed() ? "PASS" : "FAIL") << " canonical forms: " << r.words_checked << " words, "
                 << r.failures.size() << " failures\n";
        if (!r.passed()) *ctx.out << failures.dump(2) << '\n';
    }
    return r.passed() ? kPass : kFail;
}

void print_certificate(const Context& ctx, const NormCertificate& c) {
    if (ctx.format == Format::Json) {
        *ctx.out << to_json(c).dump(2) << '\n';
        return;
    }
    *ctx.out << std::setprecision(12) << (c.passed ? "PASS " : "FAIL ") << c.kind << " k=" << c.k
             << " eps=" << c.epsilon << " l=[" << c.l_lo << ',' << c.l_hi << "] max_ratio=" << c.max_ratio
             << " at l=" << c.argmax_l << " budget=" << c.error_budget << " mode=" << c.precision_mode
             << " complete=" << (c.complete ? "yes" : "no");
    if (c.cross_validation_samples > 0) {
        *ctx.out << " route_diff=" << c.cross_validation_max_rel << " (" << c.cross_validation_samples << " samples)";
    }
    *ctx.out << '\n';
}

int cmd_sweep(const Context& ctx, int k, double epsilon, std::int64_t l_max, int partitions,
              const std::string& precision, bool extended, const std::string& cert_path) {
    SweepOptions opt;
    if (extended) epsilon = 2e-8;
    if (l_max > 0) opt.l_max = l_max;
    opt.partitions = partitions;
    opt.mode = precision_mode_from_string(precision);
    const NormCertificate c = sweep_lemma3(k, epsilon, opt);
    if (!cert_path.empty()) {
        std::ofstream f(cert_path);
        if (!f) throw ArgumentError("cannot write " + cert_path);
        f << to_json(c).dump(2) << '\n';
    }
    print_certificate(ctx, c);
    return c.passed ? kPass : kFail;
}

int cmd_lemma4(const Context& ctx, double epsilon) {
    const PowerCheck p = check_lemma4_powers(epsilon);
    const MixedCheck m = check_lemma4_mixed(epsilon);
    const bool ok = p.certificate.passed && p.l1_violates && m.certificate.passed;
    if (ctx.format == Format::Json) {
        json j;
        j["powers"] = to_json(p.certificate);
        j["powers"]["s1_condition"] = to_double(p.s1_condition);
        j["powers"]["analytic_from"] = p.analytic_from;
        j["powers"]["analytic_ratio"] = to_double(p.analytic_ratio);
        j["powers"]["norm_m1b"] = to_double(p.norm_m1b);
        j["powers"]["l1_violates"] = p.l1_violates;
        j["mixed"] = to_json(m.certificate);
        j["mixed"]["norm_m1bm14"] = to_double(m.norm_m1bm14);
        j["mixed"]["growth_cubed"] = to_double(m.growth_cubed);
        j["passed"] = ok;
        *ctx.out << j.dump(2) << '\n';
    } else {
        print_certificate(ctx, p.certificate);
        *ctx.out << "  |S1||S1^-1| = " << to_string(p.s1_condition, 12) << ", ratio bound at l=" << p.analytic_from
                 << ": " << to_string(p.analytic_ratio, 12) << '\n';
        *ctx.out << "  |M1 B| = " << to_string(p.norm_m1b, 12) << (p.l1_violates ? " > " : " <= ")
                 << to_string(p.growth, 12) << " (l = 1 excluded)\n";
        print_certificate(ctx, m.certificate);
        *ctx.out << "  |M1 B M1^4| = " << to_string(m.norm_m1bm14, 12) << " < g^3 = " << to_string(m.growth_cubed, 12)
                 << '\n';
    }
    return ok ? kPass : kFail;
}

int cmd_eigen(const Context& ctx, double epsilon) {
    const NamedConstants c = named_constants(epsilon);
    std::vector<std::pair<std::string, Real>> rows = {
        {"lambda", c.lambda},
        {"lambda_prime_re", real(c.lambda_prime)},
        {"lambda_prime_im", imag(c.lambda_prime)},
        {"growth", c.growth},
        {"alpha", c.alpha},
        {"alpha_prime", c.alpha_prime},
        {"norm_S", c.norm_s},
        {"norm_S1", c.norm_s1},
        {"norm_S1_inv", c.norm_s1_inv},
        {"S1_condition", c.s1_condition},
    };
    for (std::size_t k = 0; k < 3; ++k) {
        const std::string s = std::to_string(k + 1);
        rows.emplace_back("norm_Sinv_B" + s, c.norm_s_inv_b[k]);
        rows.emplace_back("norm_Sinv_M1_B" + s, c.norm_s_inv_m1_b[k]);
        rows.emplace_back("c" + s, c.c[k]);
        rows.emplace_back("c_odd" + s, c.c_odd[k]);
        rows.emplace_back("threshold_even" + s, c.threshold_even[k]);
        rows.emplace_back("threshold_odd" + s, c.threshold_odd[k]);
    }
    if (ctx.format == Format::Json) {
        json j{{"epsilon", epsilon}};
        for (const auto& [name, v] : rows) j[name] = to_double(v);
        j["residual_M1_squared"] = to_double(c.m1_squared.residual_bound);
        j["residual_M1B"] = to_double(c.m1b.residual_bound);
        *ctx.out << j.dump(2) << '\n';
    } else if (ctx.format == Format::Csv) {
        *ctx.out << "name,value\n";
        for (const auto& [name, v] : rows) *ctx.out << name << ',' << to_string(v, 20) << '\n';
    } else {
        for (const auto& [name, v] : rows) *ctx.out << std::left << std::setw(18) << name << ' ' << to_string(v, 20) << '\n';
    }
    return kPass;
}

int cmd_lowerbound(const Context& ctx, const std::string& parity_name, int n_max) {
    if (parity_name != "even" && parity_name != "odd") throw ArgumentError("--parity must be even or odd");
    if (n_max > 80) throw ArgumentError("--n-max is limited to 80 for 64-bit output");
    const Parity parity = parity_name == "even" ? Parity::Even : Parity::Odd;
    const LowerBoundTrace t = lower_bound_trace(parity, n_max);
    const RecursionCheck check = verify_lower_bound_recursion(std::min(n_max, kMaxDirectLevel));
    static const char* kEigen[3] = {"lambda", "lambda_prime", "lambda_prime_conj"};
    if (ctx.format == Format::Json) {
        json seq = json::array();
        for (std::size_t i = 0; i < t.levels.size(); ++i) {
            const auto& w = t.omega_sequence[i];
            seq.push_back({{"n", t.levels[i]},
                           {"omega", {int128_json(w[0]), int128_json(w[1]), int128_json(w[2])}},
                           {"scaled", t.lambda_scaled_values[i]}});
        }
        json coeffs = json::array();
        for (int c = 0; c < 3; ++c)
            for (int e = 0; e < 3; ++e)
                coeffs.push_back({{"component", c}, {"eigenvalue", kEigen[e]},
                                  {"value", complex_json(t.coefficients[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)])}});
        *ctx.out << json{{"parity", to_string(parity)}, {"leading_constant", complex_json(t.leading_constant)},
                         {"coefficients", coeffs}, {"sequence", seq},
                         {"recursion_check", {{"passed", check.passed}, {"levels", check.levels_checked}}}}
                        .dump(2)
                 << '\n';
    } else {
        for (int c = 0; c < 3; ++c)
            for (int e = 0; e < 3; ++e)
                *ctx.out << "coef[" << c << "][" << kEigen[e] << "] = "
                         << to_string(t.coefficients[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)], 12) << '\n';
        *ctx.out << "n,omega0,omega1,omega2,scaled\n";
        for (std::size_t i = 0; i < t.levels.size(); ++i) {
            const auto& w = t.omega_sequence[i];
            *ctx.out << t.levels[i] << ',' << to_string(w[0]) << ',' << to_string(w[1]) << ',' << to_string(w[2])
                     << ',' << std::setprecision(10) << t.lambda_scaled_values[i] << '\n';
        }
        *ctx.out << (check.passed ? "PASS" : "FAIL") << " two-step recursion vs correlation spectra, n <= "
                 << std::min(n_max, kMaxDirectLevel) << '\n';
    }
    return check.passed ? kPass : kFail;
}

int cmd_crossings(const Context& ctx, int n, double eta, std::int64_t grid, bool refine) {
    const CrossingReport r = crossing_count(n, eta, grid, refine);
    if (ctx.format == Format::Json) {
        *ctx.out << json{{"n", r.n}, {"eta", r.eta}, {"count", r.count}, {"grid_size", r.grid_size},
                         {"refined", r.refined}, {"confirmed", r.confirmed}, {"sample_tolerance", r.sample_tolerance}}
                        .dump(2)
                 << '\n';
    } else if (ctx.format == Format::Csv) {
        *ctx.out << "n,eta,count,grid_size,refined,confirmed\n"
                 << r.n << ',' << r.eta << ',' << r.count << ',' << r.grid_size << ',' << r.refined << ','
                 << r.confirmed << '\n';
    } else {
        *ctx.out << "n=" << r.n << " eta=" << r.eta << " grid=" << r.grid_size << " crossings>=" << r.count;
        if (r.refined) *ctx.out << " confirmed=" << r.confirmed;
        *ctx.out << '\n';
    }
    return kPass;
}

int cmd_l4(const Context& ctx, const Range& r) {
    json rows = json::array();
    if (ctx.format != Format::Json) *ctx.out << "n,moment4,ratio_4n,m1,m4,m_inf,m_inf_f,mu\n";
    for (int n = r.lo; n <= r.hi; ++n) {
        const MqNorms m = mq_norms(n);
        const double ratio = static_cast<double>(m.m4_fourth) / std::ldexp(1.0, 2 * n);
        if (ctx.format == Format::Json) {
            rows.push_back({{"n", n}, {"moment4", int128_json(m.m4_fourth)}, {"ratio_4n", ratio}, {"m1", m.m1},
                            {"m4", m.m4}, {"m_inf", m.m_inf}, {"m_inf_f", m.m_inf_f}, {"mu", m.mu},
                            {"grid_size", m.grid_size}});
        } else {
            *ctx.out << n << ',' << to_string(m.m4_fourth) << ',' << std::setprecision(10) << ratio << ',' << m.m1
                     << ',' << m.m4 << ',' << m.m_inf << ',' << m.m_inf_f << ',' << m.mu << '\n';
        }
    }
    if (ctx.format == Format::Json) *ctx.out << json{{"rows", rows}}.dump(2) << '\n';
    return kPass;
}

int cmd_bound_word(const Context& ctx, const std::string& word_text, std::size_t length, std::size_t trials,
                   std::size_t fit_length, double epsilon) {
    const WordConstant k = fit_word_constant(fit_length, epsilon);
    std::vector<Word> words;
    if (!word_text.empty()) {
        words.push_back(parse_word(word_text));
    } else {
        for (std::size_t t = 0; t < trials; ++t) words.push_back(random_admissible_word(length, ctx.seed + t));
    }
    std::size_t failed = 0;
    double worst = 0.0;
    std::string worst_word;
    for (const Word& w : words) {
        const WordBound b = bound_word_norm(w, k.value, epsilon);
        if (!b.exponent_check) ++failed;
        if (to_double(b.ratio) > worst) {
            worst = to_double(b.ratio);
            worst_word = to_string(w);
        }
    }
    if (ctx.format == Format::Json) {
        *ctx.out << json{{"constant", k.value}, {"constant_word", k.argmax_word}, {"fit_length", k.max_length},
                         {"words", words.size()}, {"failed", failed}, {"max_ratio", worst},
                         {"max_ratio_word", worst_word}, {"passed", failed == 0}}
                        .dump(2)
                 << '\n';
    } else {
        *ctx.out << (failed == 0 ? "PASS" : "FAIL") << " K=" << std::setprecision(8) << k.value << " (word "
                 << k.argmax_word << ", lengths <= " << k.max_length << ") words=" << words.size()
                 << " failed=" << failed << " max |W|/(K g^{n/2})=" << worst << '\n';
    }
    return failed == 0 ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rudin-Shapiro correlation spectra, matrix recursions and norm certificates", "rscert"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "text";
    std::string out_path;
    std::uint64_t seed = 42;
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--output", out_path, "Write the report to a file instead of stdout");
    app.add_option("--seed", seed, "Seed for randomized checks");

    const char* env_precision = std::getenv(kPrecisionEnv);
    std::string default_precision = env_precision != nullptr ? env_precision : "double";

    std::function<int(const Context&)> action;

    int n = 0;
    std::string which = "P";
    std::string kind = "auto";
    std::string route = "fast";
    std::string range_text;
    int k = 1;
    double epsilon = kDefaultEpsilon;
    std::int64_t l_max = 0;
    int partitions = 1;
    std::string precision = default_precision;
    bool extended = false;
    std::string cert_path;
    std::size_t trials = 1000;
    std::size_t max_len = 20;
    std::string parity = "even";
    double eta = 0.0;
    std::int64_t grid = 0;
    bool refine = false;
    std::string word;
    std::size_t length = 40;
    std::size_t fit_length = 12;

    auto* gen = app.add_subcommand("gen", "Coefficients of P_n or Q_n");
    gen->add_option("--n", n, "Level")->required();
    gen->add_option("--which", which, "P or Q");
    gen->callback([&] { action = [&](const Context& c) { return cmd_gen(c, n, which); }; });

    auto* ac = app.add_subcommand("autocorr", "Correlation spectrum");
    ac->add_option("--n", n, "Level")->required();
    ac->add_option("--which", which, "P or Q (auto kind)");
    ac->add_option("--kind", kind, "auto or cross")->check(CLI::IsMember({"auto", "cross"}));
    ac->add_option("--route", route, "fast or direct")->check(CLI::IsMember({"fast", "direct"}));
    ac->callback([&] { action = [&](const Context& c) { return cmd_autocorr(c, n, which, kind, route); }; });

    bool csv_flag = false;
    auto* mc = app.add_subcommand("maxcoef", "Largest correlation coefficients per level");
    mc->add_option("--n-range", range_text, "A..B")->required();
    mc->add_flag("--csv", csv_flag, "CSV output");
    mc->callback([&] { action = [&](const Context& c) { return cmd_maxcoef(c, parse_range(range_text)); }; });

    auto* vr = app.add_subcommand("verify-recursion", "Matrix chain against correlation spectra");
    vr->add_option("--n", n, "Largest level")->required()->check(CLI::Range(1, kMaxLevel));
    vr->callback([&] { action = [&](const Context& c) { return cmd_verify_recursion(c, n); }; });

    auto* vf = app.add_subcommand("verify-factorization", "Canonical forms of random admissible words");
    vf->add_option("--trials", trials, "Words per length");
    vf->add_option("--max-len", max_len, "Largest even length");
    vf->add_option("--seed", seed, "Seed");
    vf->callback([&] { action = [&](const Context& c) { return cmd_verify_factorization(c, trials, max_len); }; });

    auto* sw = app.add_subcommand("sweep", "Norm sweep for M1^l B^k");
    sw->add_option("--k", k, "B exponent")->required()->check(CLI::Range(1, 3));
    sw->add_option("--epsilon", epsilon, "Slack epsilon");
    sw->add_option("--l-max", l_max, "Largest l (default: threshold)");
    sw->add_option("--partitions", partitions, "Worker threads")->check(CLI::Range(1, 1024));
    sw->add_option("--precision", precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
    sw->add_flag("--extended-sweep", extended, "Use epsilon = 2e-8 and its thresholds");
    sw->add_option("--out", cert_path, "Certificate JSON path");
    sw->callback([&] {
        action = [&](const Context& c) {
            return cmd_sweep(c, k, epsilon, l_max, partitions, precision, extended, cert_path);
        };
    });

    auto* l4m = app.add_subcommand("lemma4", "Finite checks for (M1 B)^l and M1 B M1^l B^k");
    l4m->add_option("--epsilon", epsilon, "Slack epsilon");
    l4m->callback([&] { action = [&](const Context& c) { return cmd_lemma4(c, epsilon); }; });

    auto* eg = app.add_subcommand("eigen", "Named spectral constants");
    eg->add_option("--epsilon", epsilon, "Slack epsilon");
    eg->callback([&] { action = [&](const Context& c) { return cmd_eigen(c, epsilon); }; });

    auto* lb = app.add_subcommand("lowerbound", "Two-step recursion and its leading constants");
    lb->add_option("--parity", parity, "even or odd");
    lb->add_option("--n-max", n, "Largest level")->required()->check(CLI::Range(2, 80));
    lb->callback([&] { action = [&](const Context& c) { return cmd_lowerbound(c, parity, n); }; });

    auto* cr = app.add_subcommand("crossings", "Sign changes of |P_n|^2 - (1 + eta) 2^n");
    cr->add_option("--n", n, "Level")->required();
    cr->add_option("--eta", eta, "Relative level offset, |eta| <= 2^-8");
    cr->add_option("--grid", grid, "Grid size (default 4 L_n)");
    cr->add_flag("--refine", refine, "Confirm each bracket by bisection");
    cr->callback([&] { action = [&](const Context& c) { return cmd_crossings(c, n, eta, grid, refine); }; });

    auto* l4 = app.add_subcommand("l4", "Moments and L_q norms");
    l4->add_option("--n-range", range_text, "A..B")->required();
    l4->callback([&] { action = [&](const Context& c) { return cmd_l4(c, parse_range(range_text)); }; });

    auto* bw = app.add_subcommand("bound-word", "Word norms against K g^{n/2}");
    bw->add_option("--word", word, "Word over A,B,C,D (default: random words)");
    bw->add_option("--length", length, "Random word length");
    bw->add_option("--trials", trials, "Random words");
    bw->add_option("--fit-length", fit_length, "Exhaustive length for fitting K");
    bw->add_option("--epsilon", epsilon, "Slack epsilon");
    bw->callback([&] {
        action = [&](const Context& c) { return cmd_bound_word(c, word, length, trials, fit_length, epsilon); };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }

    Context ctx;
    ctx.format = format_name == "json" ? Format::Json : (format_name == "csv" || csv_flag ? Format::Csv : Format::Text);
    ctx.err = &err;
    ctx.seed = seed;
    std::unique_ptr<std::ofstream> file;
    ctx.out = &out;
    if (!out_path.empty()) {
        file = std::make_unique<std::ofstream>(out_path);
        if (!*file) {
            err << "error: cannot write " << out_path << '\n';
            return kUsage;
        }
        ctx.out = file.get();
    }

    try {
        return action(ctx);
    } catch (const InconclusiveError& e) {
        err << "inconclusive: " << e.what() << '\n';
        return kInconclusive;
    } catch (const RoundingMarginError& e) {
        err << "inconclusive: " << e.what() << '\n';
        return kInconclusive;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kFail;
    }
}

}  // namespace rscert::cli
