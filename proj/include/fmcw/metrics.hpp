#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fmcw/mitigation.hpp"
#include "fmcw/rdproc.hpp"

namespace fmcw {

struct TrialMetrics {
    MitigationMethod method = MitigationMethod::None;
    double p_interference = 0.0;
    double pd = 0.0;
    double sinr_db = 0.0;
    /// Degrees in [0, 180), one per detectable bin in set order.
    std::vector<double> phase_errors_deg;

    bool operator==(const TrialMetrics&) const = default;
};

/// Fraction of `detectable` flagged by detect(). Throws EmptyDetectableSet.
double probability_of_detection(const RdMap& map, const TargetBinSet& detectable, const ThresholdModel& model);

/// 10 log10(mean power over `detectable` / noise power), the noise power
/// being estimate_noise_power(map, non_target). Throws EmptyDetectableSet.
double sinr_db(const RdMap& map, const TargetBinSet& detectable, const TargetBinSet& non_target);

/// Same, with only the detectable bins kept out of the noise estimate.
double sinr_db(const RdMap& map, const TargetBinSet& detectable);

/// |wrap(arg reference - arg mitigated)| in degrees for every bin, mapped to
/// [0, 180). Throws DimensionMismatch, EmptyBinSet.
std::vector<double> phase_errors_deg(const RdMap& reference, const RdMap& mitigated, const TargetBinSet& bins);

/// Fraction of `errors` <= e for each e of `grid`. Throws EmptyBinSet.
std::vector<double> empirical_cdf(std::span<const double> errors, std::span<const double> grid);

std::vector<double> phase_error_cdf(const RdMap& reference, const RdMap& mitigated, const TargetBinSet& bins,
                                    std::span<const double> grid);

/// 0, 0.5, ..., 179.5 degrees.
std::vector<double> default_error_grid();

/// Per-grid-point counts of errors <= e, added to `counts` (sized like grid).
/// Used for pooling errors over many trials with exact integer arithmetic.
void accumulate_cdf_counts(std::span<const double> errors, std::span<const double> grid,
                           std::span<std::size_t> counts);

}  // namespace fmcw
