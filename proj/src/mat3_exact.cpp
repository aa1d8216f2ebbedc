#include "rscert/mat3_exact.hpp"

#include <random>
#include <sstream>

namespace rscert {

namespace {

ExactMat3 make(std::initializer_list<int> values) {
    ExactMat3 m;
    std::size_t i = 0;
    for (int v : values) m.e[i++] = v;
    return m;
}

template <typename Mat>
std::string format(const Mat& m) {
    std::ostringstream out;
    out << '[';
    for (int i = 0; i < 3; ++i) {
        out << (i == 0 ? "[" : ",[");
        for (int j = 0; j < 3; ++j) {
            if (j != 0) out << ',';
            if constexpr (std::is_same_v<Mat, ExactMat3>) {
                out << to_string(m(i, j));
            } else {
                out << m(i, j).str();
            }
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

// Symbols of the expanded word: B, M1 and T.
enum class Sym : std::uint8_t { B, M, T };

}  // namespace

WideMat3 widen(const ExactMat3& m) {
    WideMat3 w;
    for (std::size_t i = 0; i < 9; ++i) w.e[i] = BigInt(m.e[i]);
    return w;
}

std::string to_string(const ExactMat3& m) { return format(m); }
std::string to_string(const WideMat3& m) { return format(m); }

namespace mats {
ExactMat3 A() { return make({0, 0, 1, 2, -1, 0, 2, 1, 0}); }
ExactMat3 B() { return make({0, 0, 1, 0, -1, 0, 0, 1, 0}); }
ExactMat3 C() { return make({0, 1, 0, 0, 0, 1, 0, 0, -1}); }
ExactMat3 D() { return make({0, 1, 0, 2, 0, 1, 2, 0, -1}); }
ExactMat3 T() { return make({1, 0, 0, 0, 0, 1, 0, 1, 0}); }
ExactMat3 I() { return ExactMat3::identity(); }
ExactMat3 M1() { return A() * T(); }
ExactMat3 M2() { return T() * A(); }
ExactMat3 M3() { return B() * T(); }
ExactMat3 M4() { return T() * B(); }
ExactMat3 lower_bound_step() { return make({2, -1, 0, 2, 1, 2, -2, -1, 2}); }
}  // namespace mats

char to_char(Letter l) { return static_cast<char>('A' + static_cast<int>(l)); }

ExactMat3 letter_matrix(Letter l) {
    switch (l) {
        case Letter::A:
            return mats::A();
        case Letter::B:
            return mats::B();
        case Letter::C:
            return mats::C();
        case Letter::D:
            return mats::D();
    }
    return mats::I();
}

Word parse_word(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        if (c < 'A' || c > 'D') {
            throw InadmissibleWordError(std::string("unknown letter '") + c + "' in word");
        }
        w.push_back(static_cast<Letter>(c - 'A'));
    }
    return w;
}

std::string to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter l : w) s.push_back(to_char(l));
    return s;
}

bool is_admissible(std::span<const Letter> w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!allowed_pair(w[i - 1], w[i])) return false;
    }
    return true;
}

void require_admissible(std::span<const Letter> w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!allowed_pair(w[i - 1], w[i])) {
            throw InadmissibleWordError(std::string("forbidden pair ") + to_char(w[i - 1]) +
                                        to_char(w[i]) + " at position " + std::to_string(i - 1));
        }
    }
}

ExactMat3 word_product(std::span<const Letter> w) {
    ExactMat3 r = ExactMat3::identity();
    for (Letter l : w) r = r * letter_matrix(l);
    return r;
}

WideMat3 word_product_wide(std::span<const Letter> w) {
    WideMat3 r = WideMat3::identity();
    for (Letter l : w) r = r * widen(letter_matrix(l));
    return r;
}

WideMat3 exact_word_product(std::span<const Letter> w) {
    try {
        return widen(word_product(w));
    } catch (const OverflowError&) {
        return word_product_wide(w);
    }
}

Word word_from_m_factors(std::span<const int> factors) {
    if (factors.size() % 2 != 0) {
        throw ArgumentError("word_from_m_factors: factor count must be even");
    }
    // Odd positions realize M_i as X T, even positions as T Y.
    static constexpr Letter kOdd[4] = {Letter::A, Letter::D, Letter::B, Letter::C};
    static constexpr Letter kEven[4] = {Letter::D, Letter::A, Letter::C, Letter::B};
    Word w;
    w.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const int f = factors[i];
        if (f < 1 || f > 4) throw ArgumentError("word_from_m_factors: index outside 1..4");
        w.push_back(i % 2 == 0 ? kOdd[f - 1] : kEven[f - 1]);
    }
    return w;
}

Word random_admissible_word(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Word w;
    w.reserve(length);
    if (length == 0) return w;
    w.push_back(static_cast<Letter>(rng() % 4));
    while (w.size() < length) {
        const Letter left = w.back();
        const bool pick_second = (rng() & 1u) != 0;
        if (left == Letter::A || left == Letter::C) {
            w.push_back(pick_second ? Letter::D : Letter::C);
        } else {
            w.push_back(pick_second ? Letter::B : Letter::A);
        }
    }
    return w;
}

std::vector<Word> all_admissible_words(std::size_t length) {
    std::vector<Word> out;
    if (length == 0) return out;
    for (int first = 0; first < 4; ++first) out.push_back({static_cast<Letter>(first)});
    for (std::size_t len = 1; len < length; ++len) {
        std::vector<Word> next;
        next.reserve(out.size() * 2);
        for (const Word& w : out) {
            for (int l = 0; l < 4; ++l) {
                const auto letter = static_cast<Letter>(l);
                if (!allowed_pair(w.back(), letter)) continue;
                Word extended = w;
                extended.push_back(letter);
                next.push_back(std::move(extended));
            }
        }
        out = std::move(next);
    }
    return out;
}

unsigned CanonicalForm::exponent_sum() const {
    unsigned s = 0;
    for (unsigned k : b_exponents) s += k;
    for (unsigned l : m1_exponents) s += l;
    return s;
}

CanonicalForm canonicalize(std::span<const Letter> w) {
    require_admissible(w);

    // Pass 1: A -> M T, B -> B, C -> T B T, D -> T M, cancelling T T as it appears.
    std::vector<Sym> syms;
    syms.reserve(3 * w.size());
    auto push = [&syms](Sym s) {
        if (s == Sym::T && !syms.empty() && syms.back() == Sym::T) {
            syms.pop_back();
        } else {
            syms.push_back(s);
        }
    };
    for (Letter l : w) {
        switch (l) {
            case Letter::A:
                push(Sym::M);
                push(Sym::T);
                break;
            case Letter::B:
                push(Sym::B);
                break;
            case Letter::C:
                push(Sym::T);
                push(Sym::B);
                push(Sym::T);
                break;
            case Letter::D:
                push(Sym::T);
                push(Sym::M);
                break;
        }
    }

    // Pass 2: only boundary T's survive; group the rest into B and M1 runs.
    CanonicalForm form;
    std::size_t lo = 0;
    std::size_t hi = syms.size();
    if (lo < hi && syms[lo] == Sym::T) {
        form.delta1 = true;
        ++lo;
    }
    if (lo < hi && syms[hi - 1] == Sym::T) {
        form.delta2 = true;
        --hi;
    }
    for (std::size_t i = lo; i < hi; ++i) {
        switch (syms[i]) {
            case Sym::T:
                throw InadmissibleWordError("canonicalize: interior T survived cancellation");
            case Sym::B:
                if (form.b_exponents.size() == form.m1_exponents.size()) form.b_exponents.push_back(0);
                ++form.b_exponents.back();
                break;
            case Sym::M:
                if (form.m1_exponents.size() < form.b_exponents.size()) form.m1_exponents.push_back(0);
                ++form.m1_exponents.back();
                break;
        }
    }
    if (form.b_exponents.size() == form.m1_exponents.size()) form.b_exponents.push_back(0);
    return form;
}

CanonicalForm reduce(const CanonicalForm& form) {
    CanonicalForm r = form;
    for (unsigned& k : r.b_exponents) {
        if (k >= 4) k = (k % 2 == 0) ? 2 : 3;
    }
    r.reduced = true;
    return r;
}

WideMat3 canonical_product(const CanonicalForm& form) {
    const WideMat3 t = widen(mats::T());
    const WideMat3 b = widen(mats::B());
    const WideMat3 m1 = widen(mats::M1());
    WideMat3 r = WideMat3::identity();
    if (form.delta1) r = r * t;
    for (std::size_t j = 0; j < form.b_exponents.size(); ++j) {
        r = r * power(b, form.b_exponents[j]);
        if (j < form.m1_exponents.size()) r = r * power(m1, form.m1_exponents[j]);
    }
    if (form.delta2) r = r * t;
    return r;
}

std::string to_string(const CanonicalForm& form) {
    std::ostringstream out;
    auto sep = [&out, first = true]() mutable {
        if (!first) out << ' ';
        first = false;
    };
    if (form.delta1) {
        sep();
        out << 'T';
    }
    for (std::size_t j = 0; j < form.b_exponents.size(); ++j) {
        if (form.b_exponents[j] != 0) {
            sep();
            out << "B^" << form.b_exponents[j];
        }
        if (j < form.m1_exponents.size()) {
            sep();
            out << "M1^" << form.m1_exponents[j];
        }
    }
    if (form.delta2) {
        sep();
        out << 'T';
    }
    const std::string s = out.str();
    return s.empty() ? "I" : s;
}

FactorizationReport verify_factorization(std::size_t trials, std::size_t max_length,
                                         std::uint64_t seed) {
    FactorizationReport report;
    for (std::size_t len = 2; len <= max_length; len += 2) {
        report.lengths.push_back(len);
        for (std::size_t t = 0; t < trials; ++t) {
            const Word w = random_admissible_word(len, seed + 1'000'003ULL * len + t);
            const WideMat3 product = exact_word_product(w);
            const CanonicalForm form = canonicalize(w);
            ++report.words_checked;
            std::string reason;
            if (form.exponent_sum() != len) {
                reason = "exponent sum " + std::to_string(form.exponent_sum());
            } else if (canonical_product(form) != product) {
                reason = "unreduced product mismatch";
            } else if (canonical_product(reduce(form)) != product) {
                reason = "reduced product mismatch";
            }
            if (!reason.empty()) report.failures.push_back({to_string(w), to_string(form), reason});
        }
    }
    return report;
}

}  // namespace rscert
