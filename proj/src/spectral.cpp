#include "rscert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/cbrt.hpp>

#include "rscert/errors.hpp"

namespace rscert {

namespace {

Real to_real(Int128 v) { return Real(BigInt(v)); }
Real to_real(const BigInt& v) { return Real(v); }

Real norm_sq(const Complex& z) { return real(z) * real(z) + imag(z) * imag(z); }

Complex eval_cubic(const Complex& z, const Real& c2, const Real& c1, const Real& c0) {
    return ((z + c2) * z + c1) * z + c0;
}

Complex eval_cubic_derivative(const Complex& z, const Real& c2, const Real& c1) {
    return (Real(3) * z + Real(2) * c2) * z + c1;
}

Complex newton_polish(Complex z, const Real& c2, const Real& c1, const Real& c0) {
    for (int it = 0; it < 8; ++it) {
        const Complex d = eval_cubic_derivative(z, c2, c1);
        if (abs(d) == 0) break;
        const Complex step = eval_cubic(z, c2, c1, c0) / d;
        z -= step;
        if (abs(step) <= abs(z) * std::numeric_limits<Real>::epsilon()) break;
    }
    return z;
}

// Largest real root of a monic cubic with three real roots, with an enclosure radius.
std::pair<Real, Real> largest_real_root(const Real& c2, const Real& c1, const Real& c0) {
    const auto roots = cubic_roots(c2, c1, c0);
    Real r = real(roots[0]);
    for (const auto& z : roots) r = std::max(r, Real(real(z)));
    for (int it = 0; it < 8; ++it) {
        const Real d = (3 * r + 2 * c2) * r + c1;
        if (d == 0) break;
        const Real step = (((r + c2) * r + c1) * r + c0) / d;
        r -= step;
        if (abs(step) <= abs(r) * std::numeric_limits<Real>::epsilon()) break;
    }
    // Some root lies within both 3|p/p'| (all roots real) and |p|^{1/3} of r.
    const Real pv = abs(((r + c2) * r + c1) * r + c0);
    const Real dv = abs((3 * r + 2 * c2) * r + c1);
    Real radius = boost::math::cbrt(pv);
    if (dv != 0) radius = std::min(radius, Real(3 * pv / dv));
    return {r, radius};
}

SpectralNorm norm_from_gram_cubic(const Real& c2, const Real& c1, const Real& c0,
                                  const Real& input_radius) {
    auto [r, radius] = largest_real_root(c2, c1, c0);
    radius += input_radius;
    if (r < 0) r = 0;
    SpectralNorm out;
    out.value = sqrt(r);
    // |sqrt(x) - sqrt(y)| <= |x - y| / sqrt(max(x, y)) and <= sqrt|x - y|.
    out.error_bound = sqrt(radius);
    if (out.value > 0) out.error_bound = std::min(out.error_bound, Real(radius / out.value));
    return out;
}

template <typename Int>
SpectralNorm exact_norm(const Mat3<Int>& m) {
    const Mat3<Int> g = mul(transpose(m), m);
    const auto c = characteristic_polynomial(g);
    return norm_from_gram_cubic(to_real(c[0]), to_real(c[1]), to_real(c[2]), Real(0));
}

Complex column_entry(const CMat3& s, int row, int col) { return s(row, col); }

}  // namespace

// ---------------------------------------------------------------------------

CMat3 CMat3::identity() {
    CMat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = Complex(1);
    return m;
}

CMat3 CMat3::from(const ExactMat3& m) {
    CMat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = Complex(to_real(m.e[i]));
    return r;
}

CMat3 operator*(const CMat3& a, const CMat3& b) {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex s(0);
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

CMat3 inverse(const CMat3& m) {
    CMat3 adj;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
        }
    }
    const Complex det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
    if (abs(det) == 0) throw ArgumentError("inverse: singular matrix");
    for (auto& x : adj.e) x /= det;
    return adj;
}

CMat3 conjugate_transpose(const CMat3& m) {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = conj(m(j, i));
    return r;
}

Real max_abs_difference(const CMat3& a, const CMat3& b) {
    Real worst = 0;
    for (std::size_t i = 0; i < 9; ++i) worst = std::max(worst, Real(abs(a.e[i] - b.e[i])));
    return worst;
}

// ---------------------------------------------------------------------------

std::array<Complex, 3> cubic_roots(const Real& c2, const Real& c1, const Real& c0) {
    const Real shift = c2 / 3;
    const Real p = c1 - c2 * c2 / 3;
    const Real q = 2 * c2 * c2 * c2 / 27 - c2 * c1 / 3 + c0;
    const Real disc = (q / 2) * (q / 2) + (p / 3) * (p / 3) * (p / 3);

    std::array<Complex, 3> y;
    if (disc > 0) {
        const Real s = sqrt(disc);
        const Real u = boost::math::cbrt(-q / 2 + s);
        const Real v = boost::math::cbrt(-q / 2 - s);
        const Real im = abs(sqrt(Real(3)) / 2 * (u - v));
        y[0] = Complex(u + v);
        y[1] = Complex(-(u + v) / 2, im);
        y[2] = Complex(-(u + v) / 2, -im);
    } else if (p == 0) {
        y = {Complex(0), Complex(0), Complex(0)};
    } else {
        const Real r = sqrt(-p / 3);
        Real arg = (3 * q / (2 * p)) * sqrt(-3 / p);
        arg = std::clamp(arg, Real(-1), Real(1));
        const Real theta = acos(arg) / 3;
        const Real third = 2 * boost::math::constants::pi<Real>() / 3;
        for (int k = 0; k < 3; ++k) y[static_cast<std::size_t>(k)] = Complex(2 * r * cos(theta - third * k));
    }

    std::array<Complex, 3> roots;
    for (std::size_t i = 0; i < 3; ++i) roots[i] = newton_polish(y[i] - shift, c2, c1, c0);
    if (disc > 0) {
        // Keep the pair exactly conjugate after polishing.
        roots[0] = Complex(real(roots[0]));
        roots[2] = conj(roots[1]);
        if (imag(roots[1]) < 0) std::swap(roots[1], roots[2]);
    } else {
        for (auto& z : roots) z = Complex(real(z));
        std::sort(roots.begin(), roots.end(),
                  [](const Complex& a, const Complex& b) { return real(a) > real(b); });
    }
    return roots;
}

CubicRoots solve_characteristic_cubic() {
    const Real c2 = -5, c1 = 12, c0 = -16;
    const auto roots = cubic_roots(c2, c1, c0);
    CubicRoots out;
    out.lambda = real(roots[0]);
    out.lambda_prime = roots[1];
    out.residual = 0;
    for (const auto& z : roots) out.residual = std::max(out.residual, Real(abs(eval_cubic(z, c2, c1, c0))));
    return out;
}

// ---------------------------------------------------------------------------

EigenSystem eigensystem(const ExactMat3& m) {
    const auto cp = characteristic_polynomial(widen(m));
    {
        // Discriminant of x^3 + b x^2 + c x + d.
        const BigInt& b = cp[0];
        const BigInt& c = cp[1];
        const BigInt& d = cp[2];
        const BigInt disc = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
        if (disc == 0) throw ArgumentError("eigensystem: repeated eigenvalue");
    }
    EigenSystem es;
    es.matrix = m;
    es.eigenvalues = cubic_roots(to_real(cp[0]), to_real(cp[1]), to_real(cp[2]));

    const CMat3 cm = CMat3::from(m);
    es.residual_bound = 0;
    for (int col = 0; col < 3; ++col) {
        const Complex mu = es.eigenvalues[static_cast<std::size_t>(col)];
        CMat3 n = cm;
        for (int i = 0; i < 3; ++i) n(i, i) -= mu;
        // The kernel is orthogonal (bilinearly) to every row; take the best cross product.
        std::array<Complex, 3> best{};
        Real best_norm = -1;
        for (int r0 = 0; r0 < 3; ++r0) {
            for (int r1 = r0 + 1; r1 < 3; ++r1) {
                const std::array<Complex, 3> v = {
                    n(r0, 1) * n(r1, 2) - n(r0, 2) * n(r1, 1),
                    n(r0, 2) * n(r1, 0) - n(r0, 0) * n(r1, 2),
                    n(r0, 0) * n(r1, 1) - n(r0, 1) * n(r1, 0)};
                const Real norm = sqrt(norm_sq(v[0]) + norm_sq(v[1]) + norm_sq(v[2]));
                if (norm > best_norm) {
                    best_norm = norm;
                    best = v;
                }
            }
        }
        Complex scale = best[2];
        if (abs(best[2]) <= best_norm * Real(1e-30)) {
            scale = best[0];
            for (const auto& x : best)
                if (abs(x) > abs(scale)) scale = x;
        }
        for (int i = 0; i < 3; ++i) es.vectors(i, col) = best[static_cast<std::size_t>(i)] / scale;

        Real res = 0;
        for (int i = 0; i < 3; ++i) {
            Complex s(0);
            for (int j = 0; j < 3; ++j) s += cm(i, j) * es.vectors(j, col);
            res += norm_sq(s - mu * es.vectors(i, col));
        }
        es.residual_bound = std::max(es.residual_bound, Real(sqrt(res)));
    }
    es.inverse_vectors = inverse(es.vectors);

    CMat3 lambda;
    for (int i = 0; i < 3; ++i) lambda(i, i) = es.eigenvalues[static_cast<std::size_t>(i)];
    es.reconstruction_error = max_abs_difference(es.vectors * lambda * es.inverse_vectors, cm);
    return es;
}

// ---------------------------------------------------------------------------

SpectralNorm spectral_norm(const CMat3& m) {
    const CMat3 h = conjugate_transpose(m) * m;
    const Real tr = real(h(0, 0) + h(1, 1) + h(2, 2));
    const Real minors = real(h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) + h(0, 0) * h(2, 2) -
                             h(0, 2) * h(2, 0) + h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1));
    const Real det = real(h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
                          h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
                          h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0)));
    // Entries of M carry working-precision rounding; inflate by a few ulps of |H|.
    Real frob = 0;
    for (const auto& x : h.e) frob += norm_sq(x);
    const Real input_radius = 64 * std::numeric_limits<Real>::epsilon() * sqrt(frob);
    return norm_from_gram_cubic(-tr, minors, -det, input_radius);
}

SpectralNorm spectral_norm(const ExactMat3& m) { return exact_norm(widen(m)); }
SpectralNorm spectral_norm(const WideMat3& m) { return exact_norm(m); }

template <typename T>
BasicSpectralNorm<T> spectral_norm_fast(const std::array<T, 9>& m) {
    using std::acos;
    using std::cos;
    using std::sqrt;
    std::array<T, 9> g{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            T s = 0;
            for (int k = 0; k < 3; ++k) s += m[static_cast<std::size_t>(3 * k + i)] * m[static_cast<std::size_t>(3 * k + j)];
            g[static_cast<std::size_t>(3 * i + j)] = g[static_cast<std::size_t>(3 * j + i)] = s;
        }
    const T p1 = g[1] * g[1] + g[2] * g[2] + g[5] * g[5];
    const T q = (g[0] + g[4] + g[8]) / 3;
    T top;
    if (p1 == 0) {
        top = std::max({g[0], g[4], g[8]});
    } else {
        const T d0 = g[0] - q, d1 = g[4] - q, d2 = g[8] - q;
        const T p = sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2 * p1) / 6);
        const T b0 = d0 / p, b1 = g[1] / p, b2 = g[2] / p, b4 = d1 / p, b5 = g[5] / p, b8 = d2 / p;
        T r = (b0 * (b4 * b8 - b5 * b5) - b1 * (b1 * b8 - b5 * b2) + b2 * (b1 * b5 - b4 * b2)) / 2;
        r = std::clamp(r, T(-1), T(1));
        top = q + 2 * p * cos(acos(r) / 3);
    }
    T frob = 0;
    for (T x : g) frob += x * x;
    frob = sqrt(frob);
    const T u = std::numeric_limits<T>::epsilon() / 2;
    BasicSpectralNorm<T> out;
    out.value = sqrt(std::max(top, T(0)));
    const T eig_err = 64 * u * frob;
    out.error_bound = out.value > 0 ? eig_err / out.value + u * out.value : sqrt(eig_err);
    return out;
}

template BasicSpectralNorm<double> spectral_norm_fast(const std::array<double, 9>&);
template BasicSpectralNorm<long double> spectral_norm_fast(const std::array<long double, 9>&);

// ---------------------------------------------------------------------------

NamedConstants named_constants(double epsilon) {
    NamedConstants c;
    c.epsilon = epsilon;
    const CubicRoots roots = solve_characteristic_cubic();
    c.lambda = roots.lambda;
    c.lambda_prime = roots.lambda_prime;
    const Real one_eps = 1 + Real(epsilon);
    c.growth = one_eps * one_eps * c.lambda;
    const Real log2x2 = 2 * log(Real(2));
    c.alpha = log(c.lambda) / log2x2;
    c.alpha_prime = log(c.growth) / log2x2;

    c.m1_squared = eigensystem(mats::M1() * mats::M1());
    const CMat3& s = c.m1_squared.vectors;
    const CMat3& s_inv = c.m1_squared.inverse_vectors;
    c.norm_s = spectral_norm(s).value;

    const Real log_step = log(one_eps);
    ExactMat3 bk = ExactMat3::identity();
    for (std::size_t k = 0; k < 3; ++k) {
        bk = bk * mats::B();
        const Real kk = static_cast<int>(k + 1);
        c.norm_s_inv_b[k] = spectral_norm(s_inv * CMat3::from(bk)).value;
        c.norm_s_inv_m1_b[k] = spectral_norm(s_inv * CMat3::from(mats::M1() * bk)).value;
        c.c[k] = c.norm_s * c.norm_s_inv_b[k] / pow(c.lambda, kk / 2);
        c.c_odd[k] = c.norm_s * c.norm_s_inv_m1_b[k] / pow(c.lambda, (kk + 1) / 2);
        c.threshold_even[k] = log(c.c[k]) / log_step - kk;
        c.threshold_odd[k] = log(c.c_odd[k]) / log_step - kk;
    }

    c.m1b = eigensystem(mats::M1() * mats::B());
    c.norm_s1 = spectral_norm(c.m1b.vectors).value;
    c.norm_s1_inv = spectral_norm(c.m1b.inverse_vectors).value;
    c.s1_condition = c.norm_s1 * c.norm_s1_inv;
    c.m1b_dominant = (1 + sqrt(Real(17))) / 2;
    return c;
}

RadicalCheck check_printed_radicals() {
    const Real r177 = sqrt(Real(177));
    const Real u = boost::math::cbrt(71 + 6 * r177);
    const Real v = boost::math::cbrt(-71 + 6 * r177);
    const Real u2 = u * u;
    const Complex w(1, -sqrt(Real(3)));  // 1 - i sqrt 3
    const Complex wb = conj(w);

    RadicalCheck rc;
    rc.printed[0] = Complex(((10 - r177) * u - (10 + r177) * v - 22) / 66);
    rc.printed[1] = Complex(((1 + r177) * u - (1 - r177) * v + 44) / 66);
    rc.printed[2] = -(w * (10 - r177) * u - wb * (10 + r177) * v + Complex(44)) / Complex(132);
    rc.printed[3] = (-w * (1 + r177) * u + wb * (1 - r177) * v + Complex(88)) / Complex(132);
    rc.printed[4] = Complex((-11 * (1 + r177) * u - (103 - 7 * r177) * u2 + 242) / 1452);
    rc.printed[5] = (Complex(11) * w * (r177 + 1) * u + wb * (103 - 7 * r177) * u2 + Complex(484)) / Complex(2904);
    rc.printed[6] = Complex((11 * (-21 + r177) * u + (-39 + 5 * r177) * u2) / 726);
    rc.printed[7] = (Complex(11) * w * (21 - r177) * u + wb * (39 - 5 * r177) * u2) / Complex(1452);

    const EigenSystem es = eigensystem(mats::M1() * mats::M1());
    const EigenSystem lower = eigensystem(mats::lower_bound_step());
    // (matrix, row, column) of each printed entry; complex columns may match either conjugate.
    const std::array<std::tuple<const CMat3*, int, int>, 8> where = {{
        {&es.vectors, 0, 0}, {&es.vectors, 1, 0}, {&es.vectors, 0, 1}, {&es.vectors, 1, 1},
        {&lower.vectors, 0, 0}, {&lower.vectors, 0, 1}, {&lower.vectors, 1, 0}, {&lower.vectors, 1, 1}}};
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& [mat, row, col] = where[i];
        Complex z = column_entry(*mat, row, col);
        if (col != 0 && abs(conj(z) - rc.printed[i]) < abs(z - rc.printed[i])) z = conj(z);
        rc.computed[i] = z;
        rc.deviation[i] = abs(z - rc.printed[i]);
    }
    return rc;
}

std::string to_string(const Real& x, int digits) { return x.str(digits); }

std::string to_string(const Complex& z, int digits) {
    std::ostringstream out;
    const Real im = imag(z);
    out << real(z).str(digits) << (im < 0 ? " - " : " + ") << Real(abs(im)).str(digits) << 'i';
    return out.str();
}

}  // namespace rscert
