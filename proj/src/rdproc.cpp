#include "fmcw/rdproc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmcw/detector.hpp"
#include "fmcw/error.hpp"
#include "fmcw/fft.hpp"
#include "fmcw/kernels.hpp"

namespace fmcw {

RdMap range_doppler_map(const AdcFrame& frame, const RdOptions& options) {
    const std::size_t m_count = frame.chirps();
    const std::size_t n_count = frame.samples_per_chirp();
    RdMap map{ComplexMatrix(m_count, n_count), options, frame.config_hash};
    if (m_count == 0 || n_count == 0) return map;

    const auto range_window = make_window(options.range_window, n_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        auto row = map.data.row(m);
        kernels::apply_window(frame.samples.row(m), range_window, row);
        fft_inplace(row, FftDirection::Inverse);
    }

    const auto doppler_window = make_window(options.doppler_window, m_count);
    const std::size_t shift = m_count / 2;
    std::vector<Complex> column(m_count);
    for (std::size_t n = 0; n < n_count; ++n) {
        for (std::size_t m = 0; m < m_count; ++m) column[m] = map.data(m, n) * doppler_window[m];
        fft_inplace(column, FftDirection::Inverse);
        for (std::size_t k = 0; k < m_count; ++k) map.data((k + shift) % m_count, n) = column[k];
    }
    return map;
}

void TargetBinSet::insert(std::size_t doppler, std::size_t range, std::size_t source) {
    auto it = std::lower_bound(bins_.begin(), bins_.end(), std::pair{doppler, range},
                               [](const TargetBin& b, const std::pair<std::size_t, std::size_t>& key) {
                                   return std::pair{b.doppler, b.range} < key;
                               });
    if (it == bins_.end() || it->doppler != doppler || it->range != range) {
        it = bins_.insert(it, TargetBin{doppler, range, {}});
    }
    if (std::find(it->sources.begin(), it->sources.end(), source) == it->sources.end()) it->sources.push_back(source);
}

void TargetBinSet::insert(const TargetBin& bin) {
    if (bin.sources.empty()) {
        auto it = std::lower_bound(bins_.begin(), bins_.end(), std::pair{bin.doppler, bin.range},
                                   [](const TargetBin& b, const std::pair<std::size_t, std::size_t>& key) {
                                       return std::pair{b.doppler, b.range} < key;
                                   });
        if (it == bins_.end() || it->doppler != bin.doppler || it->range != bin.range) bins_.insert(it, bin);
        return;
    }
    for (std::size_t s : bin.sources) insert(bin.doppler, bin.range, s);
}

bool TargetBinSet::contains(std::size_t doppler, std::size_t range) const noexcept {
    return std::binary_search(bins_.begin(), bins_.end(), TargetBin{doppler, range, {}},
                              [](const TargetBin& a, const TargetBin& b) {
                                  return std::pair{a.doppler, a.range} < std::pair{b.doppler, b.range};
                              });
}

TargetBinSet expected_target_bins(const Scene& scene, const RadarConfig& cfg) {
    TargetBinSet set;
    const auto m_count = static_cast<double>(cfg.chirps_per_frame);
    const auto n_count = static_cast<double>(cfg.samples_per_chirp);
    auto wrap = [](double bin, std::size_t size) {
        const auto s = static_cast<long long>(size);
        long long b = std::llround(bin) % s;
        if (b < 0) b += s;
        return static_cast<std::size_t>(b);
    };
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        const BeatFrequencies f = target_beat_frequencies(cfg, scene.targets[i]);
        set.insert(wrap(std::floor(m_count / 2.0) + f.doppler * m_count, cfg.chirps_per_frame),
                   wrap(f.range * n_count, cfg.samples_per_chirp), i);
    }
    return set;
}

double estimate_noise_power(const RdMap& map, const TargetBinSet& excluded) {
    const std::size_t total = map.data.size();
    std::size_t inside = 0;
    for (const TargetBin& b : excluded) {
        if (b.doppler < map.doppler_bins() && b.range < map.range_bins()) ++inside;
    }
    if (total == 0 || 2 * inside >= total) {
        throw Error(ErrorCode::DegenerateNoiseEstimate, "target bins cover " + std::to_string(inside) + " of " +
                                                            std::to_string(total) + " map bins");
    }
    std::vector<double> power;
    power.reserve(total - inside);
    auto next = excluded.begin();
    for (std::size_t i = 0; i < map.doppler_bins(); ++i) {
        for (std::size_t j = 0; j < map.range_bins(); ++j) {
            while (next != excluded.end() && std::pair{next->doppler, next->range} < std::pair{i, j}) ++next;
            if (next != excluded.end() && next->doppler == i && next->range == j) continue;
            power.push_back(std::norm(map.data(i, j)));
        }
    }
    return median_inplace(power) / std::log(2.0);
}

std::string_view to_string(ThresholdMode mode) {
    return mode == ThresholdMode::Nominal ? "nominal" : "per_map";
}

ThresholdMode threshold_mode_from_string(std::string_view name) {
    if (name == "nominal") return ThresholdMode::Nominal;
    if (name == "per_map") return ThresholdMode::PerMap;
    throw Error(ErrorCode::InvalidConfig, "unknown threshold mode '" + std::string(name) + "'");
}

double ThresholdModel::threshold(double noise_power, double pfa) {
    if (!(pfa > 0.0 && pfa <= 1.0)) throw Error(ErrorCode::InvalidProbability, "pfa must lie in (0, 1]");
    return pfa == 1.0 ? 0.0 : -noise_power * std::log(pfa);
}

double ThresholdModel::threshold_for(const RdMap& map) const {
    const double noise = mode == ThresholdMode::Nominal ? nominal_noise_power : estimate_noise_power(map, excluded);
    return threshold(noise, pfa);
}

ThresholdModel make_threshold_model(const RdMap& clean_map, const TargetBinSet& expected, double pfa,
                                    ThresholdMode mode) {
    ThresholdModel model;
    model.pfa = pfa;
    model.nominal_noise_power = estimate_noise_power(clean_map, expected);
    model.mode = mode;
    model.excluded = expected;
    ThresholdModel::threshold(model.nominal_noise_power, pfa);
    return model;
}

std::vector<bool> detect(const RdMap& map, const TargetBinSet& bins, const ThresholdModel& model) {
    std::vector<bool> flags;
    flags.reserve(bins.size());
    if (bins.empty()) return flags;
    const double t = model.threshold_for(map);
    for (const TargetBin& b : bins) {
        if (b.doppler >= map.doppler_bins() || b.range >= map.range_bins()) {
            throw Error(ErrorCode::DimensionMismatch, "target bin outside the map");
        }
        flags.push_back(std::norm(map.data(b.doppler, b.range)) > t);
    }
    return flags;
}

TargetBinSet nominal_detectable_set(const RdMap& clean_map, const TargetBinSet& expected, double pfa) {
    const ThresholdModel model = make_threshold_model(clean_map, expected, pfa, ThresholdMode::Nominal);
    const std::vector<bool> flags = detect(clean_map, expected, model);
    TargetBinSet out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i]) out.insert(expected.bins()[i]);
    }
    return out;
}

}  // namespace fmcw
