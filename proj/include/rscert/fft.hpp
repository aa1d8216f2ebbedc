#pragma once

// Thin RAII layer over FFTW's real transforms. Plan creation is serialized
// internally, so the functions here may be called from several threads.

#include <cstddef>
#include <span>
#include <vector>

namespace rscert::fft {

/// Unrounded linear correlation r[k] = sum_j x_j y_{j+k} for -(L-1) <= k <= L-1,
/// returned densely with index k + (L-1). x and y must have equal length L.
std::vector<double> linear_correlation(std::span<const double> x, std::span<const double> y);

/// Same as linear_correlation(x, x) but only lags 0..L-1 (the rest is symmetric).
std::vector<double> linear_autocorrelation(std::span<const double> x);

/// |X(e^{i t_j})|^2 at t_j = -pi + 2 pi j / grid, j = 0..grid-1, where
/// X(z) = sum_m x_m z^m. Requires grid >= x.size() and grid even.
std::vector<double> power_on_grid(std::span<const double> x, std::size_t grid);

}  // namespace rscert::fft
