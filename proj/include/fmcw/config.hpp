#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fmcw/detector.hpp"
#include "fmcw/mitigation.hpp"
#include "fmcw/rdproc.hpp"
#include "fmcw/rfconfig.hpp"
#include "fmcw/scene.hpp"
#include "fmcw/stft.hpp"

namespace fmcw {

inline constexpr std::string_view kVersion = "0.1.0";

struct SweepConfig {
    RadarConfig radar;
    ScenarioConfig scenario = preset_s1();
    std::vector<double> p_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::size_t trials_per_point = 100;
    std::vector<MitigationMethod> methods{MitigationMethod::None, MitigationMethod::TdTh, MitigationMethod::TfdTh};
    std::uint64_t master_seed = 1;
    /// Detector for td_th rows (one chirp of fast-time samples).
    DetectorConfig td_detector{DetectorKind::MedianMad, {}, {5.0}, {}};
    /// Detector for tfd_th rows (one frequency bin across STFT frames).
    DetectorConfig tfd_detector{DetectorKind::MedianMad, {}, {6.0}, {}};
    StftConfig stft;
    RdOptions rd;
    double pfa = 1e-3;
    ThresholdMode threshold_mode = ThresholdMode::PerMap;
    /// 0 means one worker per hardware thread.
    std::size_t threads = 0;
    std::string output_dir = "out";

    void validate() const;

    /// Detector used by `method`; None gets the td_th one.
    const DetectorConfig& detector_for(MitigationMethod method) const noexcept {
        return method == MitigationMethod::TfdTh ? tfd_detector : td_detector;
    }

    bool operator==(const SweepConfig&) const = default;
};

/// Trial count used by --fast.
inline constexpr std::size_t kFastTrials = 10;

/// Canonical JSON document (sorted keys, every field explicit).
std::string to_json_string(const SweepConfig& cfg, int indent = 2);

/// Parses a configuration document. Missing fields take their defaults;
/// "scenario.preset" selects S1 or S2 before the remaining scenario keys are
/// applied. Unknown keys are errors.
SweepConfig sweep_config_from_json(std::string_view text);

SweepConfig load_sweep_config(const std::filesystem::path& path);

/// FNV-1a of the canonical compact JSON with output_dir and threads left
/// out, since neither affects results.
std::uint64_t config_hash(const SweepConfig& cfg);

std::string hex64(std::uint64_t value);

std::string scene_to_json(const Scene& scene, int indent = 2);
Scene scene_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace fmcw
