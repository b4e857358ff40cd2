#include "fmcw/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fmcw/error.hpp"

namespace fmcw {

std::string_view to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::CellAveragingCfar: return "ca_cfar";
        case DetectorKind::MedianMad: return "median_mad";
        case DetectorKind::FixedLevel: return "fixed_level";
    }
    return "unknown";
}

DetectorKind detector_kind_from_string(std::string_view name) {
    if (name == "ca_cfar") return DetectorKind::CellAveragingCfar;
    if (name == "median_mad") return DetectorKind::MedianMad;
    if (name == "fixed_level") return DetectorKind::FixedLevel;
    throw Error(ErrorCode::InvalidConfig, "unknown detector '" + std::string(name) + "'");
}

void DetectorConfig::validate() const {
    if (cfar.training_cells < 1) throw Error(ErrorCode::InvalidConfig, "CFAR needs at least one training cell");
    if (!(cfar.scale_factor > 1.0)) throw Error(ErrorCode::InvalidConfig, "CFAR scale_factor must exceed 1");
    if (!(mad.k > 0.0)) throw Error(ErrorCode::InvalidConfig, "MAD multiplier k must be positive");
    if (!(fixed.level >= 0.0) || !std::isfinite(fixed.level)) {
        throw Error(ErrorCode::InvalidConfig, "fixed level must be finite and non-negative");
    }
}

double median_inplace(std::span<double> values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

namespace {

void cell_averaging(std::span<const double> mag, const CfarParams& p, std::span<double> out) {
    const std::size_t n = mag.size();
    const std::size_t reach = p.guard_cells + p.training_cells;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        // leading side: [i - reach, i - guard - 1]
        if (i > p.guard_cells) {
            const std::size_t hi = i - p.guard_cells;  // exclusive
            const std::size_t lo = i > reach ? i - reach : 0;
            for (std::size_t j = lo; j < hi; ++j) sum += mag[j];
            count += hi - lo;
        }
        // trailing side: [i + guard + 1, i + reach]
        const std::size_t lo = i + p.guard_cells + 1;
        const std::size_t hi = std::min(n, i + reach + 1);
        for (std::size_t j = lo; j < hi; ++j) sum += mag[j];
        if (hi > lo) count += hi - lo;

        out[i] = count == 0 ? std::numeric_limits<double>::infinity()
                            : p.scale_factor * (sum / static_cast<double>(count));
    }
}

void median_mad(std::span<const double> mag, const MadParams& p, std::span<double> out, std::vector<double>& scratch) {
    scratch.assign(mag.begin(), mag.end());
    const double median = median_inplace(scratch);
    for (std::size_t i = 0; i < mag.size(); ++i) scratch[i] = std::abs(mag[i] - median);
    const double mad = median_inplace(scratch);
    std::fill(out.begin(), out.end(), median + p.k * kMadToSigma * mad);
}

}  // namespace

void detector_threshold(std::span<const double> magnitudes, const DetectorConfig& config, std::span<double> out,
                        std::vector<double>& scratch) {
    if (magnitudes.empty()) throw Error(ErrorCode::EmptyInput, "detector given an empty vector");
    if (out.size() != magnitudes.size()) throw Error(ErrorCode::DimensionMismatch, "threshold output length mismatch");
    switch (config.kind) {
        case DetectorKind::CellAveragingCfar: cell_averaging(magnitudes, config.cfar, out); break;
        case DetectorKind::MedianMad: median_mad(magnitudes, config.mad, out, scratch); break;
        case DetectorKind::FixedLevel: std::fill(out.begin(), out.end(), config.fixed.level); break;
    }
}

std::vector<double> detector_threshold(std::span<const double> magnitudes, const DetectorConfig& config) {
    config.validate();
    std::vector<double> out(magnitudes.size());
    std::vector<double> scratch;
    detector_threshold(magnitudes, config, out, scratch);
    return out;
}

}  // namespace fmcw
