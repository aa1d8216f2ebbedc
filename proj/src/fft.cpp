#include "rscert/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rscert::fft {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (plan_ == nullptr) throw std::runtime_error("fftw: plan creation failed");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

Plan make_r2c(int n, double* in, fftw_complex* out) {
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE));
}

Plan make_c2r(int n, fftw_complex* in, double* out) {
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE));
}

int checked_size(std::size_t n) {
    if (n > static_cast<std::size_t>(1) << 30) throw std::length_error("fft: transform too large");
    return static_cast<int>(n);
}

// Forward real transform of x zero-padded to n points.
FftwBuffer<fftw_complex> forward(std::span<const double> x, int n) {
    auto in = allocate<double>(static_cast<std::size_t>(n));
    auto out = allocate<fftw_complex>(static_cast<std::size_t>(n / 2 + 1));
    Plan plan = make_r2c(n, in.get(), out.get());
    std::fill(in.get(), in.get() + n, 0.0);
    std::copy(x.begin(), x.end(), in.get());
    plan.execute();
    return out;
}

std::vector<double> inverse(FftwBuffer<fftw_complex> spectrum, int n) {
    auto out = allocate<double>(static_cast<std::size_t>(n));
    Plan plan = make_c2r(n, spectrum.get(), out.get());
    plan.execute();
    std::vector<double> result(out.get(), out.get() + n);
    const double scale = 1.0 / n;
    for (double& v : result) v *= scale;
    return result;
}

}  // namespace

std::vector<double> linear_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("fft: length mismatch");
    const std::size_t len = x.size();
    const int n = checked_size(2 * len);
    auto fx = forward(x, n);
    auto fy = forward(y, n);
    // conj(X) * Y transforms to r[k] = sum_j x_j y_{j+k} (cyclic, no wrap thanks to padding).
    for (int i = 0; i <= n / 2; ++i) {
        const std::complex<double> a(fx[i][0], -fx[i][1]);
        const std::complex<double> b(fy[i][0], fy[i][1]);
        const auto c = a * b;
        fy[i][0] = c.real();
        fy[i][1] = c.imag();
    }
    const auto cyclic = inverse(std::move(fy), n);
    std::vector<double> r(2 * len - 1);
    for (std::size_t k = 0; k < len; ++k) r[len - 1 + k] = cyclic[k];
    for (std::size_t k = 1; k < len; ++k) r[len - 1 - k] = cyclic[static_cast<std::size_t>(n) - k];
    return r;
}

std::vector<double> linear_autocorrelation(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("fft: empty input");
    const std::size_t len = x.size();
    const int n = checked_size(2 * len);
    auto fx = forward(x, n);
    for (int i = 0; i <= n / 2; ++i) {
        fx[i][0] = fx[i][0] * fx[i][0] + fx[i][1] * fx[i][1];
        fx[i][1] = 0.0;
    }
    auto cyclic = inverse(std::move(fx), n);
    cyclic.resize(len);
    return cyclic;
}

std::vector<double> power_on_grid(std::span<const double> x, std::size_t grid) {
    if (grid < x.size() || grid % 2 != 0) throw std::invalid_argument("fft: bad grid size");
    const int n = checked_size(grid);
    // Shifting the grid by -pi multiplies coefficient m by (-1)^m.
    std::vector<double> shifted(x.begin(), x.end());
    for (std::size_t m = 1; m < shifted.size(); m += 2) shifted[m] = -shifted[m];
    auto fx = forward(shifted, n);
    std::vector<double> power(grid);
    const std::size_t half = grid / 2;
    for (std::size_t j = 0; j <= half; ++j) {
        power[j] = fx[j][0] * fx[j][0] + fx[j][1] * fx[j][1];
    }
    // Real coefficients: |X| at t_{G-j} = -t_j equals |X| at t_j.
    for (std::size_t j = half + 1; j < grid; ++j) power[j] = power[grid - j];
    return power;
}

}  // namespace rscert::fft
