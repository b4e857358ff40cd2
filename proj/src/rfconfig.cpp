#include "fmcw/rfconfig.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fmcw/error.hpp"
#include "fmcw/hash.hpp"

namespace fmcw {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

void require_gamma(double gamma) {
    if (!(gamma > kGammaMin && gamma <= kGammaMax)) {
        throw Error(ErrorCode::GammaOutOfRange, "gamma " + std::to_string(gamma) + " outside (0.1, 10]");
    }
}

}  // namespace

void RadarConfig::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(positive(carrier_freq_hz), "carrier_freq_hz must be positive");
    require(positive(sweep_bandwidth_hz), "sweep_bandwidth_hz must be positive");
    require(positive(active_time_s), "active_time_s must be positive");
    require(positive(pri_s), "pri_s must be positive");
    require(positive(sample_period_s), "sample_period_s must be positive");
    require(samples_per_chirp > 0, "samples_per_chirp must be positive");
    require(chirps_per_frame > 0, "chirps_per_frame must be positive");
    require(std::isfinite(noise_variance) && noise_variance >= 0.0, "noise_variance must be non-negative");
    require(pri_s > active_time_s, "pri_s must exceed active_time_s");
    const double covered = static_cast<double>(samples_per_chirp) * sample_period_s;
    require(std::abs(covered - active_time_s) <= 1e-9 * active_time_s,
            "samples_per_chirp * sample_period_s must equal active_time_s");
}

double RadarConfig::max_unambiguous_range_m() const noexcept {
    return kSpeedOfLight / (2.0 * chirp_slope(*this) * sample_period_s);
}

double RadarConfig::max_unambiguous_speed_mps() const noexcept {
    return wavelength_m() / (4.0 * pri_s);
}

std::uint64_t RadarConfig::fingerprint() const noexcept {
    Fnv1a h;
    for (double v : {carrier_freq_hz, sweep_bandwidth_hz, active_time_s, pri_s, sample_period_s, noise_variance}) {
        h.add(std::bit_cast<std::uint64_t>(v));
    }
    h.add(static_cast<std::uint64_t>(samples_per_chirp));
    h.add(static_cast<std::uint64_t>(chirps_per_frame));
    return h.value();
}

std::string_view to_string(InterferenceCategory category) {
    switch (category) {
        case InterferenceCategory::Uncorrelated: return "uncorrelated";
        case InterferenceCategory::SemiCorrelated: return "semi_correlated";
        case InterferenceCategory::HighlyCorrelated: return "highly_correlated";
    }
    return "unknown";
}

GammaBand gamma_band(InterferenceCategory category) noexcept {
    switch (category) {
        case InterferenceCategory::Uncorrelated: return {2.0, 10.0};
        case InterferenceCategory::SemiCorrelated: return {0.75, 2.0};
        case InterferenceCategory::HighlyCorrelated: return {0.1, 0.75};
    }
    return {0.1, 10.0};
}

void InterfererWaveform::validate(const RadarConfig& radar) const {
    require_gamma(gamma);
    require(slope_sign == 1 || slope_sign == -1, "slope_sign must be +1 or -1");
    require(std::isfinite(pri_s) && pri_s > 0.0, "interferer pri_s must be positive");
    require(pri_s >= interferer_active_time(radar, *this), "interferer pri_s shorter than its active time");
    require(start_offset_s >= 0.0 && start_offset_s < pri_s, "start_offset_s must lie in [0, pri_s)");
    require(category == classify_interference(gamma), "category inconsistent with gamma");
}

double chirp_slope(const RadarConfig& cfg) noexcept {
    return cfg.sweep_bandwidth_hz / cfg.active_time_s;
}

double interferer_slope(double alpha, double gamma, int sign, double sample_rate_hz, std::size_t samples_per_chirp) {
    require_gamma(gamma);
    require(sign == 1 || sign == -1, "slope sign must be +1 or -1");
    require(sample_rate_hz > 0.0 && samples_per_chirp > 0, "sample rate and samples per chirp must be positive");
    const double step = sample_rate_hz * sample_rate_hz / static_cast<double>(samples_per_chirp);
    return alpha + static_cast<double>(sign) * step * gamma;
}

double interferer_slope(const RadarConfig& cfg, const InterfererWaveform& waveform) {
    return interferer_slope(chirp_slope(cfg), waveform.gamma, waveform.slope_sign, cfg.sample_rate_hz(),
                            cfg.samples_per_chirp);
}

double interferer_active_time(const RadarConfig& cfg, const InterfererWaveform& waveform) noexcept {
    return waveform.pri_s * (cfg.active_time_s / cfg.pri_s);
}

double interference_duration(double slope_diff_abs, double sample_period_s) {
    if (slope_diff_abs == 0.0) {
        throw Error(ErrorCode::ZeroSlopeDifference, "post-mix chirp has zero slope; duration unbounded");
    }
    require(slope_diff_abs > 0.0 && sample_period_s > 0.0, "slope difference and sample period must be positive");
    return 1.0 / (sample_period_s * slope_diff_abs);
}

double corrupted_fraction(double gamma) {
    require_gamma(gamma);
    return std::min(1.0, 1.0 / gamma);
}

InterferenceCategory classify_interference(double gamma) {
    require_gamma(gamma);
    if (gamma > 2.0) return InterferenceCategory::Uncorrelated;
    if (gamma > 0.75) return InterferenceCategory::SemiCorrelated;
    return InterferenceCategory::HighlyCorrelated;
}

}  // namespace fmcw
