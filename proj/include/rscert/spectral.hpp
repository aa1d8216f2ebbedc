#pragma once

// Extended-precision eigen work and spectral norms for 3x3 matrices.
//
// All constants are computed in 50-digit binary floating point. The double
// routines exist for the certificate hot loop and carry explicit error bounds.

#include <array>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "rscert/mat3_exact.hpp"

namespace rscert {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

inline constexpr double kDefaultEpsilon = 5e-7;

/// Row-major complex 3x3 matrix.
struct CMat3 {
    std::array<Complex, 9> e{};

    static CMat3 identity();
    static CMat3 from(const ExactMat3& m);

    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(3 * r + c)]; }
    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(3 * r + c)]; }
};

CMat3 operator*(const CMat3& a, const CMat3& b);
CMat3 inverse(const CMat3& m);
CMat3 conjugate_transpose(const CMat3& m);
/// Largest entrywise modulus of a - b.
Real max_abs_difference(const CMat3& a, const CMat3& b);

// ---------------------------------------------------------------------------
// Cubics.

/// Roots of a monic real cubic x^3 + c2 x^2 + c1 x + c0, Newton-polished.
/// Real roots come first in descending order, then complex roots with
/// positive imaginary part before their conjugates.
std::array<Complex, 3> cubic_roots(const Real& c2, const Real& c1, const Real& c0);

struct CubicRoots {
    Real lambda;           // real root
    Complex lambda_prime;  // complex root with positive imaginary part
    /// max |p(root)| over the three roots.
    Real residual;
};

/// Roots of x^3 - 5x^2 + 12x - 16.
CubicRoots solve_characteristic_cubic();

// ---------------------------------------------------------------------------
// Eigensystems.

struct EigenSystem {
    ExactMat3 matrix;
    std::array<Complex, 3> eigenvalues;
    /// Columns are eigenvectors, scaled so the third entry is 1 where it is
    /// nonzero and the largest entry is 1 otherwise.
    CMat3 vectors;
    CMat3 inverse_vectors;
    /// max_i |M v_i - mu_i v_i|_2.
    Real residual_bound;
    /// max entrywise |S diag(mu) S^{-1} - M|.
    Real reconstruction_error;
};

/// Throws ArgumentError when the characteristic polynomial has a repeated root.
EigenSystem eigensystem(const ExactMat3& m);

// ---------------------------------------------------------------------------
// Spectral norms.

template <typename T>
struct BasicSpectralNorm {
    T value{};
    /// Radius of an enclosure of the true norm around value.
    T error_bound{};
};

using SpectralNorm = BasicSpectralNorm<Real>;
using FastNorm = BasicSpectralNorm<double>;

/// Largest singular value via the Hermitian cubic of M^* M.
SpectralNorm spectral_norm(const CMat3& m);
SpectralNorm spectral_norm(const ExactMat3& m);
SpectralNorm spectral_norm(const WideMat3& m);

/// Closed-form symmetric eigenvalue route in working precision T. The bound
/// covers rounding in the norm evaluation only; input error is the caller's.
template <typename T>
BasicSpectralNorm<T> spectral_norm_fast(const std::array<T, 9>& m);

extern template BasicSpectralNorm<double> spectral_norm_fast(const std::array<double, 9>&);
extern template BasicSpectralNorm<long double> spectral_norm_fast(const std::array<long double, 9>&);

// ---------------------------------------------------------------------------
// Named constants.

struct NamedConstants {
    double epsilon = kDefaultEpsilon;
    Real lambda;
    Complex lambda_prime;
    /// (1 + epsilon)^2 lambda.
    Real growth;
    Real alpha;
    Real alpha_prime;

    Real norm_s;
    std::array<Real, 3> norm_s_inv_b{};     // |S^{-1} B^k|, k = 1..3
    std::array<Real, 3> norm_s_inv_m1_b{};  // |S^{-1} M1 B^k|
    std::array<Real, 3> c{};                // even-route constants c_k
    std::array<Real, 3> c_odd{};            // odd-route constants c'_k
    std::array<Real, 3> threshold_even{};
    std::array<Real, 3> threshold_odd{};

    Real norm_s1;
    Real norm_s1_inv;
    Real s1_condition;  // |S1| |S1^{-1}|
    Real m1b_dominant;  // (1 + sqrt 17) / 2

    EigenSystem m1_squared;
    EigenSystem m1b;
};

NamedConstants named_constants(double epsilon = kDefaultEpsilon);

/// Closed-form radical entries of the eigenvector matrices, compared with the
/// numeric eigenvectors. Diagnostic only.
struct RadicalCheck {
    std::array<Complex, 8> printed{};  // s_1 .. s_8
    std::array<Complex, 8> computed{};
    std::array<Real, 8> deviation{};
};

RadicalCheck check_printed_radicals();

std::string to_string(const Real& x, int digits = 20);
std::string to_string(const Complex& z, int digits = 20);

}  // namespace rscert
