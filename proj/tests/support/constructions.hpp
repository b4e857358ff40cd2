#pragma once

#include <vector>

#include "fmcw/mitigation.hpp"
#include "fmcw/scene.hpp"
#include "fmcw/stft.hpp"
#include "fmcw/synth.hpp"

namespace fmcw::testing {

// Interferer sharing the victim PRI whose beat frequency crosses zero at
// `center` (fraction of the active time) in every chirp.
inline Interferer crossing_interferer(const RadarConfig& radar, double gamma, double center = 0.5, int sign = +1,
                                      Complex amplitude = 10.0) {
    Interferer intf;
    intf.range_m = 50.0;
    intf.amplitude = amplitude;
    intf.waveform.gamma = gamma;
    intf.waveform.slope_sign = sign;
    intf.waveform.pri_s = radar.pri_s;
    intf.waveform.category = classify_interference(gamma);
    const double alpha = chirp_slope(radar);
    const double alpha_i = interferer_slope(radar, intf.waveform);
    const double offset = (alpha_i - alpha) * center * radar.active_time_s / alpha_i;
    intf.waveform.start_offset_s = offset >= 0.0 ? offset : radar.pri_s + offset;
    return intf;
}

// Three uncorrelated interferers (gamma 2.5) whose bursts are centred at 1/6,
// 1/2 and 5/6 of the chirp and together cover every sample.
inline Scene saturated_scene(const RadarConfig& radar, double tone_range_m = 48.0, Complex amplitude = 10.0) {
    Scene scene;
    Target t;
    t.range_m = tone_range_m;
    t.amplitude = 1.0;
    scene.targets.push_back(t);
    scene.interferers = {crossing_interferer(radar, 2.5, 1.0 / 6.0, -1, amplitude),
                         crossing_interferer(radar, 2.5, 0.5, +1, amplitude),
                         crossing_interferer(radar, 2.5, 5.0 / 6.0, +1, amplitude)};
    return scene;
}

// Zero mask a TFD-TH pass over `reference` would apply, applied to `signal`
// instead. TFD-TH is linear once the mask is fixed, so this isolates what
// happens to one component of a mixture.
inline std::vector<Complex> tf_masked(std::span<const Complex> reference, std::span<const Complex> signal,
                                      const StftConfig& cfg, const DetectorConfig& det) {
    const TfMatrix x = stft(reference, cfg);
    TfMatrix s = stft(signal, cfg);
    std::vector<double> mag(x.time_frames());
    for (std::size_t r = 0; r < x.frequency_rows(); ++r) {
        for (std::size_t c = 0; c < mag.size(); ++c) mag[c] = std::abs(x.data(r, c));
        const auto thr = detector_threshold(mag, det);
        for (std::size_t c = 0; c < mag.size(); ++c) {
            if (mag[c] > thr[c]) s.data(r, c) = 0.0;
        }
    }
    return istft(s);
}

}  // namespace fmcw::testing
