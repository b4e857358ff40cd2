#include "fmcw/mitigation.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

#include "fmcw/error.hpp"
#include "fmcw/kernels.hpp"

namespace fmcw {

std::string_view to_string(MitigationMethod method) {
    switch (method) {
        case MitigationMethod::None: return "none";
        case MitigationMethod::TdTh: return "td_th";
        case MitigationMethod::TfdTh: return "tfd_th";
    }
    return "unknown";
}

MitigationMethod mitigation_method_from_string(std::string_view name) {
    if (name == "none") return MitigationMethod::None;
    if (name == "td_th") return MitigationMethod::TdTh;
    if (name == "tfd_th") return MitigationMethod::TfdTh;
    throw Error(ErrorCode::InvalidConfig, "unknown mitigation method '" + std::string(name) + "'");
}

namespace {

std::size_t threshold_and_zero(std::span<Complex> cells, const DetectorConfig& det, MitigationWorkspace& ws) {
    const std::size_t n = cells.size();
    ws.magnitude.resize(n);
    ws.threshold.resize(n);
    kernels::magnitude(cells, ws.magnitude);
    detector_threshold(ws.magnitude, det, ws.threshold, ws.scratch);
    return kernels::zero_exceeding(cells, ws.magnitude, ws.threshold);
}

// Runs fn(first_row, last_row, workspace) over contiguous row blocks and sums
// the returned counts in block order.
template <typename Fn>
std::size_t for_row_blocks(std::size_t rows, std::size_t threads, Fn fn) {
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rows, 1));
    if (threads == 1) {
        MitigationWorkspace ws;
        return fn(0, rows, ws);
    }
    std::vector<std::size_t> counts(threads, 0);
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    MitigationWorkspace ws;
                    counts[t] = fn(rows * t / threads, rows * (t + 1) / threads, ws);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    return total;
}

}  // namespace

std::size_t td_th_row(std::span<Complex> row, const DetectorConfig& det, MitigationWorkspace& ws) {
    return threshold_and_zero(row, det, ws);
}

std::size_t tfd_th_row(std::span<Complex> row, const StftPlan& plan, const DetectorConfig& det,
                       MitigationWorkspace& ws) {
    plan.analyze(row, ws.tf);
    std::size_t zeroed = 0;
    for (std::size_t k = 0; k < ws.tf.data.rows(); ++k) zeroed += threshold_and_zero(ws.tf.data.row(k), det, ws);
    if (zeroed > 0) plan.synthesize(ws.tf, row);
    return zeroed;
}

AdcFrame td_th(const AdcFrame& y, const DetectorConfig& det, MitigationStats* stats, std::size_t threads) {
    det.validate();
    AdcFrame out = y;
    const std::size_t zeroed = for_row_blocks(out.chirps(), threads, [&](std::size_t lo, std::size_t hi, auto& ws) {
        std::size_t count = 0;
        for (std::size_t m = lo; m < hi; ++m) count += td_th_row(out.samples.row(m), det, ws);
        return count;
    });
    if (stats) *stats = {zeroed, out.samples.size()};
    return out;
}

AdcFrame tfd_th(const AdcFrame& y, const StftConfig& stft_cfg, const DetectorConfig& det, MitigationStats* stats,
                std::size_t threads) {
    det.validate();
    AdcFrame out = y;
    const StftPlan plan(stft_cfg, out.samples_per_chirp());
    const std::size_t zeroed = for_row_blocks(out.chirps(), threads, [&](std::size_t lo, std::size_t hi, auto& ws) {
        std::size_t count = 0;
        for (std::size_t m = lo; m < hi; ++m) count += tfd_th_row(out.samples.row(m), plan, det, ws);
        return count;
    });
    if (stats) *stats = {zeroed, out.chirps() * stft_cfg.window_length * plan.frame_count()};
    return out;
}

AdcFrame mitigate(MitigationMethod method, const AdcFrame& y, const StftConfig& stft_cfg, const DetectorConfig& det,
                  MitigationStats* stats, std::size_t threads) {
    switch (method) {
        case MitigationMethod::TdTh: return td_th(y, det, stats, threads);
        case MitigationMethod::TfdTh: return tfd_th(y, stft_cfg, det, stats, threads);
        case MitigationMethod::None: break;
    }
    if (stats) *stats = {0, y.samples.size()};
    return y;
}

}  // namespace fmcw
