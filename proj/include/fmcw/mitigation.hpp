#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fmcw/detector.hpp"
#include "fmcw/stft.hpp"
#include "fmcw/synth.hpp"

namespace fmcw {

enum class MitigationMethod {
    None,
    TdTh,
    TfdTh,
};

/// "none", "td_th", "tfd_th"
std::string_view to_string(MitigationMethod method);
MitigationMethod mitigation_method_from_string(std::string_view name);

struct MitigationStats {
    /// Cells set to zero: ADC samples for TD-TH, time-frequency cells for TFD-TH.
    std::size_t zeroed = 0;
    /// Cells inspected.
    std::size_t total = 0;
};

/// Scratch buffers for one worker; reusing them avoids per-row allocation.
struct MitigationWorkspace {
    std::vector<double> magnitude;
    std::vector<double> threshold;
    std::vector<double> scratch;
    TfMatrix tf;
};

/// Time-domain thresholding of one chirp: zero every sample whose magnitude
/// exceeds its threshold. Returns the number of samples zeroed.
std::size_t td_th_row(std::span<Complex> row, const DetectorConfig& det, MitigationWorkspace& ws);

/// Time-frequency thresholding of one chirp: STFT, threshold each frequency
/// row along the time frames, zero exceedances, inverse STFT in place.
/// Returns the number of time-frequency cells zeroed.
std::size_t tfd_th_row(std::span<Complex> row, const StftPlan& plan, const DetectorConfig& det,
                       MitigationWorkspace& ws);

/// Both frame-level forms process chirps independently. With threads > 1 the
/// rows are split into contiguous blocks; the output does not depend on the
/// thread count.
AdcFrame td_th(const AdcFrame& y, const DetectorConfig& det, MitigationStats* stats = nullptr,
               std::size_t threads = 1);
AdcFrame tfd_th(const AdcFrame& y, const StftConfig& stft_cfg, const DetectorConfig& det,
                MitigationStats* stats = nullptr, std::size_t threads = 1);

/// Dispatches on `method`; None returns a copy of `y`.
AdcFrame mitigate(MitigationMethod method, const AdcFrame& y, const StftConfig& stft_cfg, const DetectorConfig& det,
                  MitigationStats* stats = nullptr, std::size_t threads = 1);

}  // namespace fmcw
