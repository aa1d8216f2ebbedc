#include "rscert/index_chain.hpp"

#include <string>

#include "rscert/errors.hpp"

namespace rscert {

LagClass classify(int n, std::int64_t k) {
    if (n < 1 || n > kMaxLevel) throw InvalidLagError("classify: level must be in [1, 30]");
    const std::int64_t len = std::int64_t{1} << n;
    if (k % 2 == 0) throw InvalidLagError("classify: lag " + std::to_string(k) + " is even");
    if (k <= -len || k >= len) {
        throw InvalidLagError("classify: lag " + std::to_string(k) + " outside (-2^n, 2^n)");
    }
    const std::int64_t half = len / 2;
    int tau = 4;
    if (k <= -half) {
        tau = 1;
    } else if (k <= 0) {
        tau = 2;
    } else if (k <= half) {
        tau = 3;
    }
    return {n, k, tau};
}

Descent descend(int n, std::int64_t k) {
    if (n < 2) throw InvalidLagError("descend: level must be at least 2");
    const LagClass c = classify(n, k);
    const std::int64_t len = std::int64_t{1} << n;
    Descent d;
    d.k_prime = c.tau <= 2 ? k + len : k - len;
    d.k_down = (c.tau == 2 || c.tau == 3) ? k : d.k_prime;
    return d;
}

ExactMat3 select_matrix(int tau) {
    switch (tau) {
        case 1:
            return mats::A();
        case 2:
            return mats::B();
        case 3:
            return mats::C();
        case 4:
            return mats::D();
        default:
            throw InvalidLagError("select_matrix: class must be in 1..4");
    }
}

std::array<std::int64_t, 3> omega_seed(std::int64_t k1) {
    if (k1 == 1) return {1, 1, -1};
    if (k1 == -1) return {1, -1, 1};
    throw InvalidLagError("omega_seed: level-1 lag must be +1 or -1");
}

OmegaVector omega_by_recursion(int n, std::int64_t k) {
    classify(n, k);
    // Walk down to level 1, then apply the matrices from the bottom up.
    std::vector<int> classes;
    classes.reserve(static_cast<std::size_t>(n));
    std::int64_t lag = k;
    for (int m = n; m >= 2; --m) {
        classes.push_back(classify(m, lag).tau);
        lag = descend(m, lag).k_down;
    }
    auto v = omega_seed(lag);
    for (auto it = classes.rbegin(); it != classes.rend(); ++it) {
        const ExactMat3 m = select_matrix(*it);
        std::array<std::int64_t, 3> next{};
        for (int i = 0; i < 3; ++i) {
            Int128 s = 0;
            for (int j = 0; j < 3; ++j) s += m(i, j) * static_cast<Int128>(v[static_cast<std::size_t>(j)]);
            next[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(s);
        }
        v = next;
    }
    return {n, k, v};
}

LevelSpectra LevelSpectra::compute(int n, Route route) {
    const auto p = generate(n, Which::P);
    const auto q = generate(n, Which::Q);
    return {autocorrelate(p, route), crosscorrelate(p, q, route)};
}

OmegaVector omega_direct(const LevelSpectra& spectra, std::int64_t k) {
    const int n = spectra.auto_p.level();
    const std::int64_t len = std::int64_t{1} << n;
    const LagClass c = classify(n, k);
    const std::int64_t kp = c.tau <= 2 ? k + len : k - len;
    return {n, k, {spectra.auto_p.at(k), spectra.cross.at(kp), spectra.p_conj_q(kp)}};
}

Word admissible_word(int n, std::int64_t k) {
    if (n < 2) throw InvalidLagError("admissible_word: level must be at least 2");
    Word w;
    w.reserve(static_cast<std::size_t>(n - 1));
    std::int64_t lag = k;
    for (int m = n; m >= 2; --m) {
        w.push_back(static_cast<Letter>(classify(m, lag).tau - 1));
        lag = descend(m, lag).k_down;
    }
    return w;
}

RecursionReport verify_recursion(int n, Route route) {
    RecursionReport report;
    report.n = n;
    const auto spectra = LevelSpectra::compute(n, route);
    const std::int64_t len = std::int64_t{1} << n;
    for (std::int64_t k = -len + 1; k < len; k += 2) {
        const auto by_chain = omega_by_recursion(n, k);
        const auto direct = omega_direct(spectra, k);
        ++report.lags_checked;
        ++report.class_counts[static_cast<std::size_t>(classify(n, k).tau - 1)];
        if (by_chain.entries != direct.entries) {
            if (report.mismatches == 0) report.first_bad_lag = k;
            ++report.mismatches;
        }
    }
    return report;
}

}  // namespace rscert
