#pragma once

// Exact 3x3 integer matrices over the alphabet {A, B, C, D, T, I, M1..M4}
// and the canonical-form rewriter for admissible words.
//
// A word X_1 X_2 ... X_n over {A,B,C,D} is admissible when every adjacent pair
// lies in T2 = {AC, AD, BB, BA, CC, CD, DA, DB}. Writing A = M1 T, C = T B T
// and D = T M1, every interior T cancels, leaving
//
//   T^{d1} B^{k_1} M1^{l_1} B^{k_2} ... M1^{l_L} B^{k_{L+1}} T^{d2}.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rscert/errors.hpp"
#include "rscert/int128.hpp"

namespace rscert {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit matrix product overflow");
    return r;
}
inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit matrix product overflow");
    return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }

}  // namespace detail

/// Row-major 3x3 matrix with exact integer entries.
template <typename Int>
struct Mat3 {
    std::array<Int, 9> e{};

    static Mat3 identity() {
        Mat3 m;
        m.e[0] = m.e[4] = m.e[8] = 1;
        return m;
    }

    const Int& operator()(int r, int c) const { return e[static_cast<std::size_t>(3 * r + c)]; }
    Int& operator()(int r, int c) { return e[static_cast<std::size_t>(3 * r + c)]; }

    friend bool operator==(const Mat3&, const Mat3&) = default;

    Int trace() const { return e[0] + e[4] + e[8]; }
};

using ExactMat3 = Mat3<Int128>;
using WideMat3 = Mat3<BigInt>;

/// Exact product. The 128-bit instantiation throws OverflowError instead of wrapping.
template <typename Int>
Mat3<Int> mul(const Mat3<Int>& a, const Mat3<Int>& b) {
    Mat3<Int> r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Int s = 0;
            for (int k = 0; k < 3; ++k) s = detail::checked_add(s, detail::checked_mul(a(i, k), b(k, j)));
            r(i, j) = s;
        }
    }
    return r;
}

template <typename Int>
Mat3<Int> operator*(const Mat3<Int>& a, const Mat3<Int>& b) {
    return mul(a, b);
}

template <typename Int>
Mat3<Int> power(Mat3<Int> base, unsigned exponent) {
    Mat3<Int> r = Mat3<Int>::identity();
    while (exponent != 0) {
        if ((exponent & 1u) != 0) r = mul(r, base);
        exponent >>= 1u;
        if (exponent != 0) base = mul(base, base);
    }
    return r;
}

template <typename Int>
Mat3<Int> transpose(const Mat3<Int>& m) {
    Mat3<Int> t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = m(j, i);
    return t;
}

WideMat3 widen(const ExactMat3& m);

/// Coefficients (c2, c1, c0) of det(xI - M) = x^3 + c2 x^2 + c1 x + c0.
template <typename Int>
std::array<Int, 3> characteristic_polynomial(const Mat3<Int>& m) {
    const Int tr = m.trace();
    const Int minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                       m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const Int det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                    m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                    m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    return {Int(-tr), minors, Int(-det)};
}

std::string to_string(const ExactMat3& m);
std::string to_string(const WideMat3& m);

// ---------------------------------------------------------------------------
// Named matrices.

namespace mats {
ExactMat3 A();
ExactMat3 B();
/// Class-3 matrix, equal to T B T.
ExactMat3 C();
ExactMat3 D();
ExactMat3 T();
ExactMat3 I();
ExactMat3 M1();  // A T
ExactMat3 M2();  // T A
ExactMat3 M3();  // B T
ExactMat3 M4();  // T B
/// Step-two matrix of the lower-bound recursion: [[2,-1,0],[2,1,2],[-2,-1,2]].
ExactMat3 lower_bound_step();
}  // namespace mats

// ---------------------------------------------------------------------------
// Words.

enum class Letter : std::uint8_t { A, B, C, D };

using Word = std::vector<Letter>;

char to_char(Letter l);
ExactMat3 letter_matrix(Letter l);

/// Parses "ACDB"; throws InadmissibleWordError on unknown letters (adjacency not checked).
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

/// Whether `right` may follow `left` in product order (left * right in T2).
constexpr bool allowed_pair(Letter left, Letter right) {
    const bool left_ac = left == Letter::A || left == Letter::C;
    const bool right_cd = right == Letter::C || right == Letter::D;
    return left_ac == right_cd;
}

bool is_admissible(std::span<const Letter> w);
/// Throws InadmissibleWordError naming the first forbidden pair.
void require_admissible(std::span<const Letter> w);

/// Left-to-right product. Throws OverflowError if 128 bits are exceeded.
ExactMat3 word_product(std::span<const Letter> w);
/// Left-to-right product in arbitrary precision.
WideMat3 word_product_wide(std::span<const Letter> w);
/// 128-bit product with automatic escalation to arbitrary precision on overflow.
WideMat3 exact_word_product(std::span<const Letter> w);

/// Realizes a product M_{i_1} M_{i_2} ... M_{i_m} (indices in 1..4, m even) as a
/// letter word, pairing odd positions as X T and even positions as T Y.
Word word_from_m_factors(std::span<const int> factors);

/// Seeded word generator: first letter uniform over {A,B,C,D}, each successor
/// uniform over the two letters allowed after its predecessor.
Word random_admissible_word(std::size_t length, std::uint64_t seed);

/// Every admissible word of the given length, in lexicographic order.
std::vector<Word> all_admissible_words(std::size_t length);

// ---------------------------------------------------------------------------
// Canonical form.

struct CanonicalForm {
    bool delta1 = false;
    bool delta2 = false;
    /// k_1 .. k_{L+1}; interior entries >= 1, boundary entries >= 0.
    std::vector<unsigned> b_exponents{0};
    /// l_1 .. l_L, all >= 1.
    std::vector<unsigned> m1_exponents;
    bool reduced = false;

    std::size_t blocks() const { return m1_exponents.size(); }
    /// sum_j (k_j + l_j) + k_{L+1}.
    unsigned exponent_sum() const;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Unreduced canonical form; exponent_sum() equals the word length.
/// Throws InadmissibleWordError on forbidden pairs.
CanonicalForm canonicalize(std::span<const Letter> w);

/// Folds B-exponents with B^4 = B^2: interior into {1,2,3}, boundary into {0,..,3}.
CanonicalForm reduce(const CanonicalForm& form);

/// T^{d1} B^{k_1} M1^{l_1} ... B^{k_{L+1}} T^{d2}, exactly.
WideMat3 canonical_product(const CanonicalForm& form);

std::string to_string(const CanonicalForm& form);

struct FactorizationFailure {
    std::string word;
    std::string form;
    std::string reason;
};

struct FactorizationReport {
    std::size_t words_checked = 0;
    std::vector<std::size_t> lengths;
    std::vector<FactorizationFailure> failures;
    bool passed() const { return failures.empty(); }
};

/// For every even length 2..max_length, `trials` seeded random admissible words:
/// exponent sum equals length, and both canonical forms multiply back to the word.
FactorizationReport verify_factorization(std::size_t trials, std::size_t max_length, std::uint64_t seed);

}  // namespace rscert
