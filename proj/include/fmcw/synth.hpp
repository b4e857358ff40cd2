#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fmcw/matrix.hpp"
#include "fmcw/rfconfig.hpp"
#include "fmcw/scene.hpp"

namespace fmcw {

/// Dechirped ADC samples: chirps_per_frame rows (slow time m) by
/// samples_per_chirp columns (fast time n).
struct AdcFrame {
    ComplexMatrix samples;
    /// RadarConfig::fingerprint() of the generating configuration.
    std::uint64_t config_hash = 0;

    static AdcFrame zeros(const RadarConfig& cfg);

    std::size_t chirps() const noexcept { return samples.rows(); }
    std::size_t samples_per_chirp() const noexcept { return samples.cols(); }

    bool operator==(const AdcFrame&) const = default;
};

/// Normalized beat frequencies of a point target: range f_r = 2 r alpha T_s / c
/// (cycles per sample) and Doppler f_d = 2 rdot T_PRI / lambda (cycles per chirp).
struct BeatFrequencies {
    double range;
    double doppler;
};

BeatFrequencies target_beat_frequencies(const RadarConfig& cfg, const Target& target) noexcept;

/// Entry (m, n) = a e^{-j 2 pi f_c 2r/c} e^{-j 2 pi f_r n} e^{-j 2 pi f_d m}.
/// Throws AliasedTarget if f_r is outside [0, 1) or |f_d| >= 0.5.
AdcFrame synth_target(const RadarConfig& cfg, const Target& target);

/// Adds the target's contribution to `frame` in place; produces exactly the
/// values assemble() would get by summing synth_target() frames in order.
void add_target(ComplexMatrix& frame, const RadarConfig& cfg, const Target& target);

struct InterferenceFrame {
    AdcFrame frame;
    /// Gate-open samples per chirp.
    std::vector<std::size_t> corrupted_per_chirp;
};

/// Interference after mixing with the victim reference chirp and the ideal
/// receive low-pass gate. Samples whose instantaneous beat frequency exceeds
/// f_s/2 in magnitude, or that fall in the interferer's dead time, are zero.
InterferenceFrame synth_interference(const RadarConfig& cfg, const Interferer& interferer);

/// Adds the gated interference to `frame`; returns gate-open counts per chirp.
std::vector<std::size_t> add_interference(ComplexMatrix& frame, const RadarConfig& cfg, const Interferer& interferer);

/// i.i.d. circularly-symmetric complex Gaussian noise of variance noise_variance.
AdcFrame synth_noise(const RadarConfig& cfg, std::uint64_t seed);

struct AssembledFrame {
    /// Y = S_rx + S~_rx + E
    AdcFrame full;
    /// S_rx + E, the interference-free reference
    AdcFrame clean;
};

/// Entrywise sum in list order: targets, then interference, then noise.
AssembledFrame assemble(std::span<const AdcFrame> targets, std::span<const AdcFrame> interference,
                        const AdcFrame& noise);

/// Synthesizes a whole scene with the same summation order as assemble().
AssembledFrame synthesize_scene(const RadarConfig& cfg, const Scene& scene, std::uint64_t noise_seed);

}  // namespace fmcw
