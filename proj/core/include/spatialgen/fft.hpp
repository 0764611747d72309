#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spatialgen {

using Complex = std::complex<double>;

/// Unnormalized forward 2D DFT of a row-major rows x cols array, in place:
/// out[p,q] = sum_{j,k} in[j,k] exp(-2 pi i (j p / rows + k q / cols)).
void fft2_inplace(std::span<Complex> data, std::size_t rows, std::size_t cols);

/// Inverse of fft2_inplace: conjugate-sign transform divided by rows * cols.
void ifft2_inplace(std::span<Complex> data, std::size_t rows, std::size_t cols);

std::vector<Complex> fft2(std::span<const Complex> data, std::size_t rows, std::size_t cols);
std::vector<Complex> ifft2(std::span<const Complex> data, std::size_t rows, std::size_t cols);

/// Unnormalized forward 1D DFT, in place.
void fft_inplace(std::span<Complex> data);

std::vector<Complex> fft(std::span<const Complex> data);

}  // namespace spatialgen
