#pragma once

// Internal declarations. Deliberately free of standard-library templates:
// kernels_avx2.cpp is compiled with -mavx2 and must not emit inline copies
// of shared templates that the linker could pick for non-AVX2 callers.

#include <cstddef>

namespace fmcw::kernels::detail {

void magnitude_scalar(const double* z, double* out, std::size_t n);
void squared_magnitude_scalar(const double* z, double* out, std::size_t n);
std::size_t zero_exceeding_scalar(double* z, const double* mag, const double* threshold, std::size_t n);
void caxpy_scalar(double s_re, double s_im, const double* x, double* y, std::size_t n);
void accumulate_scalar(const double* x, double* y, std::size_t n);
void apply_window_scalar(const double* x, const double* w, double* y, std::size_t n);
void window_accumulate_scalar(const double* x, const double* w, double* y, std::size_t n);

#if defined(FMCW_HAVE_AVX2)
void magnitude_avx2(const double* z, double* out, std::size_t n);
void squared_magnitude_avx2(const double* z, double* out, std::size_t n);
std::size_t zero_exceeding_avx2(double* z, const double* mag, const double* threshold, std::size_t n);
void caxpy_avx2(double s_re, double s_im, const double* x, double* y, std::size_t n);
void accumulate_avx2(const double* x, double* y, std::size_t n);
void apply_window_avx2(const double* x, const double* w, double* y, std::size_t n);
void window_accumulate_avx2(const double* x, const double* w, double* y, std::size_t n);
#endif

}  // namespace fmcw::kernels::detail
