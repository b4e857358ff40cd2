#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "fmcw/matrix.hpp"

// Element-wise inner loops shared by synthesis, windowing and thresholding.
// Each has a scalar reference and, on x86-64, an AVX2 variant picked at
// runtime. Both do the same IEEE operations in the same order (no FMA), so
// results are bit-identical.

namespace fmcw::kernels {

enum class Backend {
    Scalar,
    Avx2,
};

std::string_view to_string(Backend backend);

/// Raw-pointer signatures. Complex arrays are interleaved (re, im) doubles,
/// the layout std::complex<double> guarantees. `n` counts complex elements.
struct KernelTable {
    /// out[i] = sqrt(re^2 + im^2)
    void (*magnitude)(const double* z, double* out, std::size_t n);
    /// out[i] = re^2 + im^2
    void (*squared_magnitude)(const double* z, double* out, std::size_t n);
    /// z[i] = 0 where mag[i] > threshold[i]; returns the number zeroed.
    std::size_t (*zero_exceeding)(double* z, const double* mag, const double* threshold, std::size_t n);
    /// y[i] += s * x[i]  (complex s, complex x)
    void (*caxpy)(double s_re, double s_im, const double* x, double* y, std::size_t n);
    /// y[i] += x[i]
    void (*accumulate)(const double* x, double* y, std::size_t n);
    /// y[i] = w[i] * x[i]  (real w)
    void (*apply_window)(const double* x, const double* w, double* y, std::size_t n);
    /// y[i] += w[i] * x[i]  (real w)
    void (*window_accumulate)(const double* x, const double* w, double* y, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Null when the AVX2 variants were not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports_avx2() noexcept;

/// Backend used by the span-level wrappers below. Chosen once at first use:
/// AVX2 when compiled and supported, unless FMCW_KERNELS=scalar is set.
Backend active_backend() noexcept;

/// Override the runtime choice (tests, benchmarking). Requesting Avx2 on a
/// machine without it falls back to Scalar. Returns the backend in effect.
Backend select_backend(Backend requested) noexcept;

const KernelTable& table_for(Backend backend) noexcept;

void magnitude(std::span<const Complex> z, std::span<double> out);
void squared_magnitude(std::span<const Complex> z, std::span<double> out);
std::size_t zero_exceeding(std::span<Complex> z, std::span<const double> mag, std::span<const double> threshold);
void caxpy(Complex s, std::span<const Complex> x, std::span<Complex> y);
void accumulate(std::span<const Complex> x, std::span<Complex> y);
void apply_window(std::span<const Complex> x, std::span<const double> w, std::span<Complex> y);
void window_accumulate(std::span<const Complex> x, std::span<const double> w, std::span<Complex> y);

}  // namespace fmcw::kernels
