#include "fmcw/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fmcw/error.hpp"

namespace fmcw {

namespace {

double mean_power(const RdMap& map, const TargetBinSet& bins) {
    double sum = 0.0;
    for (const TargetBin& b : bins) sum += std::norm(map.data(b.doppler, b.range));
    return sum / static_cast<double>(bins.size());
}

}  // namespace

double probability_of_detection(const RdMap& map, const TargetBinSet& detectable, const ThresholdModel& model) {
    if (detectable.empty()) throw Error(ErrorCode::EmptyDetectableSet, "no detectable targets");
    const std::vector<bool> flags = detect(map, detectable, model);
    const auto hits = std::count(flags.begin(), flags.end(), true);
    return static_cast<double>(hits) / static_cast<double>(flags.size());
}

double sinr_db(const RdMap& map, const TargetBinSet& detectable, const TargetBinSet& non_target) {
    if (detectable.empty()) throw Error(ErrorCode::EmptyDetectableSet, "no detectable targets");
    const double noise = estimate_noise_power(map, non_target);
    return 10.0 * std::log10(mean_power(map, detectable) / noise);
}

double sinr_db(const RdMap& map, const TargetBinSet& detectable) { return sinr_db(map, detectable, detectable); }

std::vector<double> phase_errors_deg(const RdMap& reference, const RdMap& mitigated, const TargetBinSet& bins) {
    if (!reference.data.same_shape(mitigated.data)) {
        throw Error(ErrorCode::DimensionMismatch, "reference and mitigated maps differ in shape");
    }
    if (bins.empty()) throw Error(ErrorCode::EmptyBinSet, "no bins to compare");
    const double below_half_turn = std::nextafter(180.0, 0.0);
    std::vector<double> out;
    out.reserve(bins.size());
    for (const TargetBin& b : bins) {
        const Complex r = reference.data(b.doppler, b.range);
        const Complex m = mitigated.data(b.doppler, b.range);
        const double e = std::abs(std::arg(r * std::conj(m))) * (180.0 / kPi);
        out.push_back(std::min(e, below_half_turn));
    }
    return out;
}

void accumulate_cdf_counts(std::span<const double> errors, std::span<const double> grid,
                           std::span<std::size_t> counts) {
    if (counts.size() != grid.size()) throw Error(ErrorCode::DimensionMismatch, "CDF count buffer size mismatch");
    std::vector<double> sorted(errors.begin(), errors.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        counts[g] += static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), grid[g]) - sorted.begin());
    }
}

std::vector<double> empirical_cdf(std::span<const double> errors, std::span<const double> grid) {
    if (errors.empty()) throw Error(ErrorCode::EmptyBinSet, "no errors to summarize");
    std::vector<std::size_t> counts(grid.size(), 0);
    accumulate_cdf_counts(errors, grid, counts);
    std::vector<double> cdf(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        cdf[g] = static_cast<double>(counts[g]) / static_cast<double>(errors.size());
    }
    return cdf;
}

std::vector<double> phase_error_cdf(const RdMap& reference, const RdMap& mitigated, const TargetBinSet& bins,
                                    std::span<const double> grid) {
    const auto errors = phase_errors_deg(reference, mitigated, bins);
    return empirical_cdf(errors, grid);
}

std::vector<double> default_error_grid() {
    std::vector<double> grid(360);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.5 * static_cast<double>(i);
    return grid;
}

}  // namespace fmcw
