// Compiled with -mavx2 (and without -mfma). Only reached after a runtime
// CPU check; see dispatch.cpp.

#include "kernels_impl.hpp"

#include <immintrin.h>

namespace fmcw::kernels::detail {

namespace {

// [w0 w0 w1 w1] from two consecutive real weights.
inline __m256d load_pair_duplicated(const double* w) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), _MM_SHUFFLE(1, 1, 0, 0));
}

// |z|^2 for four complex values, in element order.
inline __m256d squared_magnitude4(const double* z) {
    const __m256d a = _mm256_loadu_pd(z);
    const __m256d b = _mm256_loadu_pd(z + 4);
    // hadd yields [|z0|^2, |z2|^2, |z1|^2, |z3|^2]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    return _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
}

}  // namespace

void magnitude_avx2(const double* z, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(squared_magnitude4(z + 2 * i)));
    }
    magnitude_scalar(z + 2 * i, out + i, n - i);
}

void squared_magnitude_avx2(const double* z, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, squared_magnitude4(z + 2 * i));
    }
    squared_magnitude_scalar(z + 2 * i, out + i, n - i);
}

std::size_t zero_exceeding_avx2(double* z, const double* mag, const double* threshold, std::size_t n) {
    std::size_t zeroed = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(mag + i), _mm256_loadu_pd(threshold + i), _CMP_GT_OQ);
        const int bits = _mm256_movemask_pd(mask);
        if (bits == 0) continue;
        zeroed += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
        const __m256d lo = _mm256_permute4x64_pd(mask, _MM_SHUFFLE(1, 1, 0, 0));
        const __m256d hi = _mm256_permute4x64_pd(mask, _MM_SHUFFLE(3, 3, 2, 2));
        double* p = z + 2 * i;
        _mm256_storeu_pd(p, _mm256_andnot_pd(lo, _mm256_loadu_pd(p)));
        _mm256_storeu_pd(p + 4, _mm256_andnot_pd(hi, _mm256_loadu_pd(p + 4)));
    }
    return zeroed + zero_exceeding_scalar(z + 2 * i, mag + i, threshold + i, n - i);
}

void caxpy_avx2(double s_re, double s_im, const double* x, double* y, std::size_t n) {
    const __m256d sr = _mm256_set1_pd(s_re);
    const __m256d si = _mm256_set1_pd(s_im);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        const __m256d swapped = _mm256_permute_pd(xv, 0b0101);
        // even lanes: xr*sr - xi*si, odd lanes: xi*sr + xr*si
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, sr), _mm256_mul_pd(swapped, si));
        _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), prod));
    }
    caxpy_scalar(s_re, s_im, x + 2 * i, y + 2 * i, n - i);
}

void accumulate_avx2(const double* x, double* y, std::size_t n) {
    const std::size_t total = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= total; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < total; ++i) y[i] += x[i];
}

void apply_window_avx2(const double* x, const double* w, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(y + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(x + 2 * i), load_pair_duplicated(w + i)));
    }
    apply_window_scalar(x + 2 * i, w + i, y + 2 * i, n - i);
}

void window_accumulate_avx2(const double* x, const double* w, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + 2 * i), load_pair_duplicated(w + i));
        _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), prod));
    }
    window_accumulate_scalar(x + 2 * i, w + i, y + 2 * i, n - i);
}

}  // namespace fmcw::kernels::detail
