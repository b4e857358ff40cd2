#include "fmcw/synth.hpp"

#include <cmath>
#include <string>

#include "fmcw/error.hpp"
#include "fmcw/kernels.hpp"
#include "fmcw/rng.hpp"

namespace fmcw {

namespace {

// e^{-j 2 pi x}, reducing x to its fractional part first.
Complex unit_phasor_neg(double cycles) {
    const double frac = cycles - std::floor(cycles);
    return std::polar(1.0, -2.0 * kPi * frac);
}

void require_shape(const ComplexMatrix& m, const RadarConfig& cfg) {
    if (m.rows() != cfg.chirps_per_frame || m.cols() != cfg.samples_per_chirp) {
        throw Error(ErrorCode::DimensionMismatch, "frame shape does not match the radar configuration");
    }
}

}  // namespace

AdcFrame AdcFrame::zeros(const RadarConfig& cfg) {
    return AdcFrame{ComplexMatrix(cfg.chirps_per_frame, cfg.samples_per_chirp), cfg.fingerprint()};
}

BeatFrequencies target_beat_frequencies(const RadarConfig& cfg, const Target& target) noexcept {
    const double range = 2.0 * target.range_m * chirp_slope(cfg) * cfg.sample_period_s / kSpeedOfLight;
    const double doppler = 2.0 * target.radial_velocity_mps * cfg.pri_s / cfg.wavelength_m();
    return {range, doppler};
}

void add_target(ComplexMatrix& frame, const RadarConfig& cfg, const Target& target) {
    require_shape(frame, cfg);
    const BeatFrequencies f = target_beat_frequencies(cfg, target);
    if (!(f.range >= 0.0 && f.range < 1.0) || !(std::abs(f.doppler) < 0.5)) {
        throw Error(ErrorCode::AliasedTarget, "target at " + std::to_string(target.range_m) + " m, " +
                                                  std::to_string(target.radial_velocity_mps) +
                                                  " m/s aliases (f_r=" + std::to_string(f.range) +
                                                  ", f_d=" + std::to_string(f.doppler) + ")");
    }

    const std::size_t n_fast = cfg.samples_per_chirp;
    std::vector<Complex> fast(n_fast);
    for (std::size_t n = 0; n < n_fast; ++n) fast[n] = unit_phasor_neg(f.range * static_cast<double>(n));

    const Complex carrier = unit_phasor_neg(cfg.carrier_freq_hz * 2.0 * target.range_m / kSpeedOfLight);
    const Complex scale = target.amplitude * carrier;
    for (std::size_t m = 0; m < cfg.chirps_per_frame; ++m) {
        const Complex row_scale = scale * unit_phasor_neg(f.doppler * static_cast<double>(m));
        kernels::caxpy(row_scale, fast, frame.row(m));
    }
}

AdcFrame synth_target(const RadarConfig& cfg, const Target& target) {
    AdcFrame out = AdcFrame::zeros(cfg);
    add_target(out.samples, cfg, target);
    return out;
}

std::vector<std::size_t> add_interference(ComplexMatrix& frame, const RadarConfig& cfg, const Interferer& interferer) {
    require_shape(frame, cfg);
    const InterfererWaveform& wf = interferer.waveform;
    wf.validate(cfg);

    const double alpha = chirp_slope(cfg);
    const double alpha_i = interferer_slope(cfg, wf);
    const double active_i = interferer_active_time(cfg, wf);
    const double half_band = 0.5 * cfg.sample_rate_hz();
    const double magnitude = std::abs(interferer.amplitude);
    const double phase0 = std::arg(interferer.amplitude);

    std::vector<std::size_t> open(cfg.chirps_per_frame, 0);
    if (magnitude == 0.0) return open;

    for (std::size_t m = 0; m < cfg.chirps_per_frame; ++m) {
        const double chirp_start = static_cast<double>(m) * cfg.pri_s;
        auto row = frame.row(m);
        for (std::size_t n = 0; n < cfg.samples_per_chirp; ++n) {
            const double tau = static_cast<double>(n) * cfg.sample_period_s;
            // Interferer chirp containing absolute time chirp_start + tau.
            const double since_offset = chirp_start + tau - wf.start_offset_s;
            double k = std::floor(since_offset / wf.pri_s);
            double tau_i = since_offset - k * wf.pri_s;
            if (tau_i < 0.0) tau_i += wf.pri_s;
            if (wf.pri_s - tau_i <= 1e-9 * wf.pri_s) tau_i = 0.0;  // floor() rounding at a chirp boundary
            if (tau_i >= active_i) continue;  // interferer dead time

            const double beat = alpha_i * tau_i - alpha * tau;
            if (std::abs(beat) > half_band) continue;  // outside the receive passband

            const double phase = kPi * (alpha_i * tau_i * tau_i - alpha * tau * tau) + phase0;
            row[n] += std::polar(magnitude, phase);
            ++open[m];
        }
    }
    return open;
}

InterferenceFrame synth_interference(const RadarConfig& cfg, const Interferer& interferer) {
    InterferenceFrame out{AdcFrame::zeros(cfg), {}};
    out.corrupted_per_chirp = add_interference(out.frame.samples, cfg, interferer);
    return out;
}

AdcFrame synth_noise(const RadarConfig& cfg, std::uint64_t seed) {
    AdcFrame out = AdcFrame::zeros(cfg);
    if (cfg.noise_variance == 0.0) return out;
    Rng rng(seed);
    for (Complex& v : out.samples.flat()) v = rng.complex_normal(cfg.noise_variance);
    return out;
}

AssembledFrame assemble(std::span<const AdcFrame> targets, std::span<const AdcFrame> interference,
                        const AdcFrame& noise) {
    auto check = [&](const AdcFrame& f) {
        if (!f.samples.same_shape(noise.samples)) {
            throw Error(ErrorCode::DimensionMismatch, "frames to assemble differ in shape");
        }
    };
    ComplexMatrix signal(noise.samples.rows(), noise.samples.cols());
    for (const AdcFrame& t : targets) {
        check(t);
        kernels::accumulate(t.samples.flat(), signal.flat());
    }
    ComplexMatrix full = signal;
    for (const AdcFrame& i : interference) {
        check(i);
        kernels::accumulate(i.samples.flat(), full.flat());
    }
    kernels::accumulate(noise.samples.flat(), signal.flat());
    kernels::accumulate(noise.samples.flat(), full.flat());
    return {AdcFrame{std::move(full), noise.config_hash}, AdcFrame{std::move(signal), noise.config_hash}};
}

AssembledFrame synthesize_scene(const RadarConfig& cfg, const Scene& scene, std::uint64_t noise_seed) {
    AdcFrame noise = synth_noise(cfg, noise_seed);
    ComplexMatrix signal(cfg.chirps_per_frame, cfg.samples_per_chirp);
    for (const Target& t : scene.targets) add_target(signal, cfg, t);
    ComplexMatrix full = signal;
    for (const Interferer& i : scene.interferers) add_interference(full, cfg, i);
    kernels::accumulate(noise.samples.flat(), signal.flat());
    kernels::accumulate(noise.samples.flat(), full.flat());
    return {AdcFrame{std::move(full), noise.config_hash}, AdcFrame{std::move(signal), noise.config_hash}};
}

}  // namespace fmcw
