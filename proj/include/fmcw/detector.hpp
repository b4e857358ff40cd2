#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fmcw {

enum class DetectorKind {
    CellAveragingCfar,
    MedianMad,
    FixedLevel,
};

std::string_view to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(std::string_view name);

struct CfarParams {
    std::size_t training_cells = 16;  // per side
    std::size_t guard_cells = 4;      // per side
    double scale_factor = 10.0;

    bool operator==(const CfarParams&) const = default;
};

struct MadParams {
    double k = 6.0;

    bool operator==(const MadParams&) const = default;
};

struct FixedLevelParams {
    double level = 1.0;

    bool operator==(const FixedLevelParams&) const = default;
};

/// Interference detector producing the per-cell threshold beta.
struct DetectorConfig {
    DetectorKind kind = DetectorKind::MedianMad;
    CfarParams cfar;
    MadParams mad;
    FixedLevelParams fixed;

    void validate() const;

    bool operator==(const DetectorConfig&) const = default;
};

/// Normal-consistency constant for the median absolute deviation.
inline constexpr double kMadToSigma = 1.4826;

/// Per-cell thresholds for a vector of magnitudes.
///
/// CellAveragingCfar: scale_factor times the mean of the training cells on
/// both sides of the cell under test, skipping guard_cells next to it. Near
/// the ends the window shrinks to whatever training cells exist; a cell with
/// none gets +inf.
///
/// MedianMad: median + k * 1.4826 * MAD of the whole vector, broadcast.
///
/// FixedLevel: fixed.level everywhere, for inputs whose interference-free
/// magnitude is known in advance.
std::vector<double> detector_threshold(std::span<const double> magnitudes, const DetectorConfig& config);

/// Allocation-free form; `scratch` is resized as needed.
void detector_threshold(std::span<const double> magnitudes, const DetectorConfig& config, std::span<double> out,
                        std::vector<double>& scratch);

/// Median of the values (mean of the two middle elements for even sizes).
/// Reorders `values`.
double median_inplace(std::span<double> values);

}  // namespace fmcw
