#include "fmcw/stft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmcw/error.hpp"
#include "fmcw/fft.hpp"
#include "fmcw/kernels.hpp"

namespace fmcw {

void StftConfig::validate() const {
    if (window_length < 2) throw Error(ErrorCode::InvalidConfig, "STFT window_length must be at least 2");
    if (hop == 0 || hop > window_length) throw Error(ErrorCode::InvalidConfig, "STFT hop must lie in [1, window_length]");
    const auto w = make_window(window, window_length);
    double lowest = INFINITY;
    double highest = 0.0;
    for (std::size_t phase = 0; phase < hop; ++phase) {
        double sum = 0.0;
        for (std::size_t n = phase; n < window_length; n += hop) sum += w[n] * w[n];
        lowest = std::min(lowest, sum);
        highest = std::max(highest, sum);
    }
    if (!(lowest > 1e-12 * highest)) {
        throw Error(ErrorCode::InvalidConfig, "STFT window/hop pair does not overlap-add to a positive sum");
    }
}

std::size_t stft_frame_count(std::size_t signal_length, std::size_t hop) noexcept {
    return (signal_length + hop - 1) / hop;
}

StftPlan::StftPlan(const StftConfig& config, std::size_t signal_length)
    : config_(config), length_(signal_length), frames_(stft_frame_count(signal_length, config.hop)) {
    config_.validate();
    if (signal_length < config_.window_length) {
        throw Error(ErrorCode::SignalTooShort, "signal of " + std::to_string(signal_length) +
                                                   " samples shorter than STFT window " +
                                                   std::to_string(config_.window_length));
    }
    window_ = make_window(config_.window, config_.window_length);

    std::vector<double> norm(length_, 0.0);
    const auto half = static_cast<std::ptrdiff_t>(config_.window_length / 2);
    for (std::size_t c = 0; c < frames_; ++c) {
        const auto start = static_cast<std::ptrdiff_t>(c * config_.hop) - half;
        for (std::size_t m = 0; m < config_.window_length; ++m) {
            const auto n = start + static_cast<std::ptrdiff_t>(m);
            if (n >= 0 && n < static_cast<std::ptrdiff_t>(length_)) norm[static_cast<std::size_t>(n)] += window_[m] * window_[m];
        }
    }
    inverse_norm_.resize(length_);
    for (std::size_t n = 0; n < length_; ++n) {
        if (!(norm[n] > 0.0)) throw Error(ErrorCode::InvalidConfig, "STFT frames leave a sample uncovered");
        inverse_norm_[n] = 1.0 / norm[n];
    }
}

void StftPlan::analyze(std::span<const Complex> x, TfMatrix& out) const {
    if (x.size() != length_) throw Error(ErrorCode::DimensionMismatch, "STFT plan built for a different length");
    const std::size_t width = config_.window_length;
    if (out.data.rows() != width || out.data.cols() != frames_) out.data = ComplexMatrix(width, frames_);
    out.config = config_;
    out.original_length = length_;

    const auto half = static_cast<std::ptrdiff_t>(width / 2);
    const auto last = static_cast<std::ptrdiff_t>(length_) - 1;
    std::vector<Complex> segment(width);
    std::vector<Complex> frame(width);
    // x[-n] = conj(x[n]) * x[0] / conj(x[0]), likewise about the last sample.
    auto rotation = [](Complex v) { return std::abs(v) > 0.0 ? v / std::conj(v) : Complex(1.0, 0.0); };
    const Complex head = rotation(x.front());
    const Complex tail = rotation(x.back());
    for (std::size_t c = 0; c < frames_; ++c) {
        const auto start = static_cast<std::ptrdiff_t>(c * config_.hop) - half;
        for (std::size_t m = 0; m < width; ++m) {
            const auto n = start + static_cast<std::ptrdiff_t>(m);
            if (n < 0) {
                segment[m] = std::conj(x[static_cast<std::size_t>(-n)]) * head;
            } else if (n > last) {
                segment[m] = std::conj(x[static_cast<std::size_t>(2 * last - n)]) * tail;
            } else {
                segment[m] = x[static_cast<std::size_t>(n)];
            }
        }
        kernels::apply_window(segment, window_, frame);
        fft_inplace(frame, FftDirection::Forward);
        for (std::size_t k = 0; k < width; ++k) out.data(k, c) = frame[k];
    }
}

void StftPlan::synthesize(const TfMatrix& tf, std::span<Complex> out) const {
    const std::size_t width = config_.window_length;
    if (tf.data.rows() != width || tf.data.cols() != frames_ || tf.original_length != length_ ||
        tf.config != config_) {
        throw Error(ErrorCode::InconsistentDimensions, "time-frequency matrix does not match its STFT configuration");
    }
    if (out.size() != length_) throw Error(ErrorCode::DimensionMismatch, "ISTFT output length mismatch");

    std::fill(out.begin(), out.end(), Complex{});
    const auto half = static_cast<std::ptrdiff_t>(width / 2);
    const double scale = 1.0 / static_cast<double>(width);
    std::vector<Complex> frame(width);
    for (std::size_t c = 0; c < frames_; ++c) {
        for (std::size_t k = 0; k < width; ++k) frame[k] = tf.data(k, c);
        fft_inplace(frame, FftDirection::Inverse);
        for (auto& v : frame) v *= scale;

        // Clip the frame to the part that lands inside [0, length).
        const auto start = static_cast<std::ptrdiff_t>(c * config_.hop) - half;
        const auto first = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, -start));
        const auto end = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(width), static_cast<std::ptrdiff_t>(length_) - start));
        if (end <= first) continue;
        const std::size_t count = end - first;
        const auto offset = static_cast<std::size_t>(start + static_cast<std::ptrdiff_t>(first));
        kernels::window_accumulate(std::span<const Complex>(frame).subspan(first, count),
                                   std::span<const double>(window_).subspan(first, count), out.subspan(offset, count));
    }
    for (std::size_t n = 0; n < length_; ++n) out[n] *= inverse_norm_[n];
}

TfMatrix stft(std::span<const Complex> x, const StftConfig& config) {
    config.validate();
    if (x.size() < config.window_length) {
        throw Error(ErrorCode::SignalTooShort, "signal shorter than STFT window");
    }
    StftPlan plan(config, x.size());
    TfMatrix tf;
    plan.analyze(x, tf);
    return tf;
}

std::vector<Complex> istft(const TfMatrix& tf) {
    tf.config.validate();
    if (tf.original_length < tf.config.window_length ||
        tf.data.cols() != stft_frame_count(tf.original_length, tf.config.hop) ||
        tf.data.rows() != tf.config.window_length) {
        throw Error(ErrorCode::InconsistentDimensions, "time-frequency matrix does not match its STFT configuration");
    }
    StftPlan plan(tf.config, tf.original_length);
    std::vector<Complex> out(tf.original_length);
    plan.synthesize(tf, out);
    return out;
}

double tf_energy(const TfMatrix& tf) {
    double sum = 0.0;
    for (const Complex& v : tf.data.flat()) sum += std::norm(v);
    return sum / static_cast<double>(tf.config.window_length);
}

}  // namespace fmcw
