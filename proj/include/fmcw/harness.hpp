#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fmcw/config.hpp"
#include "fmcw/metrics.hpp"
#include "fmcw/rdproc.hpp"
#include "fmcw/scene.hpp"
#include "fmcw/synth.hpp"

namespace fmcw {

/// Key of one Monte Carlo trial: derive_seed(master, {bits of p, trial_index}).
std::uint64_t trial_seed(std::uint64_t master_seed, double p, std::size_t trial_index) noexcept;

struct TrialResult {
    double p = 0.0;
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;
    std::size_t interferer_count = 0;
    std::size_t expected_bins = 0;
    std::size_t detectable_bins = 0;
    /// True when no target was detectable on the clean map; metrics is then empty.
    bool excluded = false;
    /// One entry per SweepConfig::methods, in that order.
    std::vector<TrialMetrics> metrics;

    bool operator==(const TrialResult&) const = default;
};

/// Intermediate products of a trial, filled on request for debugging dumps.
struct TrialArtifacts {
    Scene scene;
    AssembledFrame frames;
    TargetBinSet expected;
    TargetBinSet detectable;
    RdMap clean_map;
    std::vector<AdcFrame> mitigated;
    std::vector<RdMap> maps;
};

TrialResult run_trial(const SweepConfig& cfg, double p, std::size_t trial_index,
                      TrialArtifacts* artifacts = nullptr);

struct SweepRow {
    double p = 0.0;
    MitigationMethod method = MitigationMethod::None;
    double mean_pd = 0.0;
    double mean_sinr_db = 0.0;
    /// Trials contributing to the means (excluded trials are not counted).
    std::size_t trial_count = 0;
    /// Pooled phase-error CDF over every detectable bin of every trial.
    std::vector<double> cdf;

    bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
    /// p-major, then methods in configuration order.
    std::vector<SweepRow> rows;
    std::vector<double> e_grid;
    /// Trials with an empty detectable set, per p_grid entry.
    std::vector<std::size_t> excluded_trials;
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (p, trial) pair on cfg.threads workers and reduces in trial
/// order. Any failing trial aborts the sweep with Error(TrialFailed) naming
/// p, the trial index and its seed (the lowest failing work item wins).
SweepResult run_sweep(const SweepConfig& cfg, const ProgressFn& progress = {});

std::string summary_csv(const SweepResult& result);
std::string cdf_csv(const SweepResult& result);
std::string metadata_json(const SweepResult& result, const SweepConfig& cfg);

/// Writes summary.csv, phase_cdf.csv and metadata.json into `dir`.
void export_result(const SweepResult& result, const SweepConfig& cfg, const std::filesystem::path& dir);

/// The configuration embedded in a metadata.json written by export_result.
SweepConfig config_from_metadata(std::string_view metadata);

}  // namespace fmcw
