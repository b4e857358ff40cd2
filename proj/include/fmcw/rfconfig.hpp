#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fmcw {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Victim radar waveform and sampling parameters. Complex (I/Q) baseband.
struct RadarConfig {
    double carrier_freq_hz = 77e9;
    double sweep_bandwidth_hz = 200e6;
    double active_time_s = 25.6e-6;
    double pri_s = 40e-6;
    double sample_period_s = 50e-9;
    std::size_t samples_per_chirp = 512;
    std::size_t chirps_per_frame = 128;
    /// Per complex sample, linear power.
    double noise_variance = 1.0;

    /// Throws Error(InvalidConfig) on any broken invariant.
    void validate() const;

    double sample_rate_hz() const noexcept { return 1.0 / sample_period_s; }
    double wavelength_m() const noexcept { return kSpeedOfLight / carrier_freq_hz; }
    double dead_time_s() const noexcept { return pri_s - active_time_s; }

    /// Range at which the normalized range frequency reaches 1.
    double max_unambiguous_range_m() const noexcept;
    /// Radial speed at which the normalized Doppler frequency reaches 0.5.
    double max_unambiguous_speed_mps() const noexcept;

    /// Stable 64-bit fingerprint of the parameter values.
    std::uint64_t fingerprint() const noexcept;

    bool operator==(const RadarConfig&) const = default;
};

enum class InterferenceCategory {
    Uncorrelated,
    SemiCorrelated,
    HighlyCorrelated,
};

std::string_view to_string(InterferenceCategory category);

/// Half-open band (lower, upper] of decorrelation factors for one category.
struct GammaBand {
    double lower_exclusive;
    double upper_inclusive;

    bool contains(double gamma) const noexcept { return gamma > lower_exclusive && gamma <= upper_inclusive; }
};

inline constexpr double kGammaMin = 0.1;
inline constexpr double kGammaMax = 10.0;

GammaBand gamma_band(InterferenceCategory category) noexcept;

/// Interferer chirp sequence relative to the victim. The interferer carrier
/// equals the victim carrier. Its chirps repeat every pri_s starting at
/// start_offset_s (and at every integer multiple of pri_s before and after),
/// each active for interferer_active_time().
struct InterfererWaveform {
    double gamma = 8.0;
    int slope_sign = +1;
    double pri_s = 40e-6;
    double start_offset_s = 0.0;
    InterferenceCategory category = InterferenceCategory::Uncorrelated;

    void validate(const RadarConfig& radar) const;

    bool operator==(const InterfererWaveform&) const = default;
};

/// alpha = B / T_a.
double chirp_slope(const RadarConfig& cfg) noexcept;

/// alpha~ = alpha + sign * (fs^2 / N) * gamma.
double interferer_slope(double alpha, double gamma, int sign, double sample_rate_hz, std::size_t samples_per_chirp);
double interferer_slope(const RadarConfig& cfg, const InterfererWaveform& waveform);

/// Interferer active time; same duty cycle as the victim.
double interferer_active_time(const RadarConfig& cfg, const InterfererWaveform& waveform) noexcept;

/// delta = 1 / (T_s |alpha~ - alpha|), unclipped.
double interference_duration(double slope_diff_abs, double sample_period_s);

/// Fraction of a chirp a single overlap corrupts: min(1, 1/gamma).
double corrupted_fraction(double gamma);

/// Uncorrelated (2, 10], SemiCorrelated (0.75, 2], HighlyCorrelated (0.1, 0.75].
InterferenceCategory classify_interference(double gamma);

}  // namespace fmcw
