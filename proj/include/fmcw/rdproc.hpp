#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fmcw/matrix.hpp"
#include "fmcw/rfconfig.hpp"
#include "fmcw/scene.hpp"
#include "fmcw/synth.hpp"
#include "fmcw/window.hpp"

namespace fmcw {

struct RdOptions {
    WindowKind range_window = WindowKind::Hann;
    WindowKind doppler_window = WindowKind::Hann;

    bool operator==(const RdOptions&) const = default;
};

/// Range-Doppler map: Doppler rows (zero Doppler at row M/2) by range columns.
struct RdMap {
    ComplexMatrix data;
    RdOptions options;
    std::uint64_t config_hash = 0;

    std::size_t doppler_bins() const noexcept { return data.rows(); }
    std::size_t range_bins() const noexcept { return data.cols(); }
};

/// Range transform along fast time, then Doppler transform along slow time
/// with the zero-Doppler bin moved to row M/2. A tone e^{-j2pi(f_r n + f_d m)}
/// peaks at (M/2 + f_d M, f_r N).
RdMap range_doppler_map(const AdcFrame& frame, const RdOptions& options = {});

struct TargetBin {
    std::size_t doppler = 0;
    std::size_t range = 0;
    /// Indices into Scene::targets of every target mapped to this bin.
    std::vector<std::size_t> sources;

    bool operator==(const TargetBin&) const = default;
};

/// Target bins sorted by (doppler, range), no duplicates.
class TargetBinSet {
public:
    TargetBinSet() = default;

    /// Adds `source` to the bin, creating it if needed.
    void insert(std::size_t doppler, std::size_t range, std::size_t source);
    void insert(const TargetBin& bin);

    bool contains(std::size_t doppler, std::size_t range) const noexcept;
    std::size_t size() const noexcept { return bins_.size(); }
    bool empty() const noexcept { return bins_.empty(); }

    std::span<const TargetBin> bins() const noexcept { return bins_; }
    auto begin() const noexcept { return bins_.begin(); }
    auto end() const noexcept { return bins_.end(); }

    bool operator==(const TargetBinSet&) const = default;

private:
    std::vector<TargetBin> bins_;
};

/// bin = (round(M/2 + f_d M) mod M, round(f_r N) mod N) for every target.
TargetBinSet expected_target_bins(const Scene& scene, const RadarConfig& cfg);

/// Mean noise power per bin from the median power of the bins outside
/// `excluded` (median / ln 2, exact for exponentially distributed power).
/// Throws DegenerateNoiseEstimate when excluded covers half the map or more.
double estimate_noise_power(const RdMap& map, const TargetBinSet& excluded);

enum class ThresholdMode {
    /// T = -sigma^2 ln(pfa) with sigma^2 fixed from the clean map.
    Nominal,
    /// Same pfa, sigma^2 re-estimated on each map being tested, so raised
    /// floors raise the threshold.
    PerMap,
};

std::string_view to_string(ThresholdMode mode);
ThresholdMode threshold_mode_from_string(std::string_view name);

struct ThresholdModel {
    double pfa = 1e-3;
    double nominal_noise_power = 0.0;
    ThresholdMode mode = ThresholdMode::Nominal;
    /// Bins left out of per-map noise estimation.
    TargetBinSet excluded;

    /// Power threshold to apply to `map`.
    double threshold_for(const RdMap& map) const;

    static double threshold(double noise_power, double pfa);
};

/// Noise-power estimate on the clean map with the expected bins excluded.
ThresholdModel make_threshold_model(const RdMap& clean_map, const TargetBinSet& expected, double pfa,
                                    ThresholdMode mode = ThresholdMode::Nominal);

/// Expected bins whose power in the clean map exceeds -sigma^2 ln(pfa).
TargetBinSet nominal_detectable_set(const RdMap& clean_map, const TargetBinSet& expected, double pfa);

/// One flag per bin of `bins`, in set order: power > threshold.
std::vector<bool> detect(const RdMap& map, const TargetBinSet& bins, const ThresholdModel& model);

}  // namespace fmcw
