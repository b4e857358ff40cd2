#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fmcw/matrix.hpp"
#include "fmcw/window.hpp"

namespace fmcw {

struct StftConfig {
    std::size_t window_length = 64;
    std::size_t hop = 16;
    WindowKind window = WindowKind::Hann;

    /// 0 < hop <= window_length and the squared window overlap-adds to a
    /// strictly positive sum, so weighted overlap-add inverts the analysis.
    void validate() const;

    bool operator==(const StftConfig&) const = default;
};

/// Time-frequency matrix: window_length frequency rows by ceil(N / hop)
/// time-frame columns. Row-major, so one frequency row is contiguous.
struct TfMatrix {
    ComplexMatrix data;
    StftConfig config;
    std::size_t original_length = 0;

    std::size_t frequency_rows() const noexcept { return data.rows(); }
    std::size_t time_frames() const noexcept { return data.cols(); }
};

std::size_t stft_frame_count(std::size_t signal_length, std::size_t hop) noexcept;

/// Precomputed analysis/synthesis state for one (config, signal length).
/// Frames are centred on multiples of the hop; the signal is extended by
/// window_length/2 samples at each end by conjugate reflection about the end
/// samples, x[-n] = conj(x[n]) x[0] / conj(x[0]) (likewise at the far end).
/// Reusable and const-callable from many threads.
class StftPlan {
public:
    StftPlan(const StftConfig& config, std::size_t signal_length);

    const StftConfig& config() const noexcept { return config_; }
    std::size_t signal_length() const noexcept { return length_; }
    std::size_t frame_count() const noexcept { return frames_; }

    void analyze(std::span<const Complex> x, TfMatrix& out) const;

    /// Weighted overlap-add: each inverse-transformed frame is windowed again
    /// and the sum is divided by the accumulated squared window.
    void synthesize(const TfMatrix& tf, std::span<Complex> out) const;

private:
    StftConfig config_;
    std::size_t length_;
    std::size_t frames_;
    std::vector<double> window_;
    std::vector<double> inverse_norm_;
};

TfMatrix stft(std::span<const Complex> x, const StftConfig& config);
std::vector<Complex> istft(const TfMatrix& tf);

/// sum |X|^2 / window_length, i.e. the per-frame Parseval energy summed over
/// frames.
double tf_energy(const TfMatrix& tf);

}  // namespace fmcw
