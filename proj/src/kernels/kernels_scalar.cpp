#include "kernels_impl.hpp"

#include <cmath>

namespace fmcw::kernels::detail {

void magnitude_scalar(const double* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = z[2 * i];
        const double im = z[2 * i + 1];
        out[i] = std::sqrt(re * re + im * im);
    }
}

void squared_magnitude_scalar(const double* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = z[2 * i];
        const double im = z[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

std::size_t zero_exceeding_scalar(double* z, const double* mag, const double* threshold, std::size_t n) {
    std::size_t zeroed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mag[i] > threshold[i]) {
            z[2 * i] = 0.0;
            z[2 * i + 1] = 0.0;
            ++zeroed;
        }
    }
    return zeroed;
}

void caxpy_scalar(double s_re, double s_im, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i];
        const double xi = x[2 * i + 1];
        const double pr = xr * s_re - xi * s_im;
        const double pi = xi * s_re + xr * s_im;
        y[2 * i] += pr;
        y[2 * i + 1] += pi;
    }
}

void accumulate_scalar(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < 2 * n; ++i) y[i] += x[i];
}

void apply_window_scalar(const double* x, const double* w, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[2 * i] = x[2 * i] * w[i];
        y[2 * i + 1] = x[2 * i + 1] * w[i];
    }
}

void window_accumulate_scalar(const double* x, const double* w, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[2 * i] += x[2 * i] * w[i];
        y[2 * i + 1] += x[2 * i + 1] * w[i];
    }
}

}  // namespace fmcw::kernels::detail
