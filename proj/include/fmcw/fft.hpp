#pragma once

#include <span>

#include "fmcw/matrix.hpp"

namespace fmcw {

/// Forward:  X[k] = sum_n x[n] e^{-j 2 pi k n / L}
/// Inverse:  x[n] = sum_k X[k] e^{+j 2 pi k n / L}   (unnormalized)
enum class FftDirection {
    Forward,
    Inverse,
};

/// In-place DFT of any length. Plans are cached per (length, direction) and
/// shared across threads; execution is reentrant and bit-reproducible
/// regardless of buffer alignment.
void fft_inplace(std::span<Complex> data, FftDirection direction);

/// Out-of-place variant; `in` and `out` must have equal length and may alias.
void fft(std::span<const Complex> in, std::span<Complex> out, FftDirection direction);

}  // namespace fmcw
