#include "fmcw/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "fmcw/error.hpp"
#include "fmcw/rng.hpp"

namespace fmcw {

using json = nlohmann::json;

std::uint64_t trial_seed(std::uint64_t master_seed, double p, std::size_t trial_index) noexcept {
    return derive_seed(master_seed, {std::bit_cast<std::uint64_t>(p), static_cast<std::uint64_t>(trial_index)});
}

namespace {

std::uint64_t stream_seed(std::uint64_t trial, Stream stream) {
    return derive_seed(trial, {static_cast<std::uint64_t>(stream)});
}

}  // namespace

TrialResult run_trial(const SweepConfig& cfg, double p, std::size_t trial_index, TrialArtifacts* artifacts) {
    TrialResult result;
    result.p = p;
    result.trial_index = trial_index;
    result.seed = trial_seed(cfg.master_seed, p, trial_index);

    Scene scene = generate_scene(cfg.scenario, cfg.radar, stream_seed(result.seed, Stream::Scene));
    scene = assign_interferers(scene, p, cfg.scenario.category_mix, cfg.scenario.amplitude, cfg.radar,
                               stream_seed(result.seed, Stream::Interferers));
    result.interferer_count = scene.interferers.size();

    AssembledFrame frames = synthesize_scene(cfg.radar, scene, stream_seed(result.seed, Stream::Noise));
    TargetBinSet expected = expected_target_bins(scene, cfg.radar);
    RdMap clean_map = range_doppler_map(frames.clean, cfg.rd);
    const ThresholdModel model = make_threshold_model(clean_map, expected, cfg.pfa, cfg.threshold_mode);
    TargetBinSet detectable = nominal_detectable_set(clean_map, expected, cfg.pfa);
    result.expected_bins = expected.size();
    result.detectable_bins = detectable.size();
    result.excluded = detectable.empty();

    if (!result.excluded) {
        for (MitigationMethod method : cfg.methods) {
            AdcFrame y = mitigate(method, frames.full, cfg.stft, cfg.detector_for(method));
            RdMap map = range_doppler_map(y, cfg.rd);
            TrialMetrics m;
            m.method = method;
            m.p_interference = p;
            m.pd = probability_of_detection(map, detectable, model);
            m.sinr_db = sinr_db(map, detectable, expected);
            m.phase_errors_deg = phase_errors_deg(clean_map, map, detectable);
            result.metrics.push_back(std::move(m));
            if (artifacts) {
                artifacts->mitigated.push_back(std::move(y));
                artifacts->maps.push_back(std::move(map));
            }
        }
    }
    if (artifacts) {
        artifacts->scene = std::move(scene);
        artifacts->frames = std::move(frames);
        artifacts->expected = std::move(expected);
        artifacts->detectable = std::move(detectable);
        artifacts->clean_map = std::move(clean_map);
    }
    return result;
}

SweepResult run_sweep(const SweepConfig& cfg, const ProgressFn& progress) {
    cfg.validate();
    const std::size_t trials = cfg.trials_per_point;
    const std::size_t total = cfg.p_grid.size() * trials;
    std::vector<TrialResult> results(total);

    std::size_t workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    workers = std::min(workers, total);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> abort{false};
    std::mutex error_mutex;
    std::optional<std::size_t> failed_item;
    std::string failure;

    auto work = [&] {
        while (!abort.load(std::memory_order_relaxed)) {
            const std::size_t item = next.fetch_add(1);
            if (item >= total) return;
            const double p = cfg.p_grid[item / trials];
            const std::size_t index = item % trials;
            try {
                results[item] = run_trial(cfg, p, index);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (!failed_item || item < *failed_item) {
                    failed_item = item;
                    failure = fmt::format("trial failed at p={} trial_index={} seed={:#018x}: {}", p, index,
                                          trial_seed(cfg.master_seed, p, index), e.what());
                }
                abort = true;
                return;
            }
            const std::size_t finished = done.fetch_add(1) + 1;
            if (progress) progress(finished, total);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failed_item) throw Error(ErrorCode::TrialFailed, failure);

    SweepResult out;
    out.e_grid = default_error_grid();
    out.config_hash = config_hash(cfg);
    out.master_seed = cfg.master_seed;
    out.excluded_trials.assign(cfg.p_grid.size(), 0);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
        for (std::size_t t = 0; t < trials; ++t) {
            if (results[pi * trials + t].excluded) ++out.excluded_trials[pi];
        }
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            SweepRow row;
            row.p = cfg.p_grid[pi];
            row.method = cfg.methods[mi];
            double pd_sum = 0.0;
            double sinr_sum = 0.0;
            std::size_t error_count = 0;
            std::vector<std::size_t> counts(out.e_grid.size(), 0);
            for (std::size_t t = 0; t < trials; ++t) {
                const TrialResult& r = results[pi * trials + t];
                if (r.excluded) continue;
                const TrialMetrics& m = r.metrics[mi];
                pd_sum += m.pd;
                sinr_sum += m.sinr_db;
                ++row.trial_count;
                error_count += m.phase_errors_deg.size();
                accumulate_cdf_counts(m.phase_errors_deg, out.e_grid, counts);
            }
            const auto n = static_cast<double>(row.trial_count);
            row.mean_pd = row.trial_count ? pd_sum / n : nan;
            row.mean_sinr_db = row.trial_count ? sinr_sum / n : nan;
            row.cdf.resize(counts.size());
            for (std::size_t g = 0; g < counts.size(); ++g) {
                row.cdf[g] = error_count ? static_cast<double>(counts[g]) / static_cast<double>(error_count) : nan;
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

std::string summary_csv(const SweepResult& result) {
    std::string out = "p,method,mean_pd,mean_sinr_db,trial_count\n";
    for (const SweepRow& r : result.rows) {
        out += fmt::format("{},{},{},{},{}\n", r.p, to_string(r.method), r.mean_pd, r.mean_sinr_db, r.trial_count);
    }
    return out;
}

std::string cdf_csv(const SweepResult& result) {
    std::string out = "p,method,e_deg,cdf\n";
    for (const SweepRow& r : result.rows) {
        for (std::size_t g = 0; g < result.e_grid.size(); ++g) {
            out += fmt::format("{},{},{},{}\n", r.p, to_string(r.method), result.e_grid[g], r.cdf[g]);
        }
    }
    return out;
}

std::string metadata_json(const SweepResult& result, const SweepConfig& cfg) {
    json excluded = json::array();
    for (std::size_t i = 0; i < cfg.p_grid.size() && i < result.excluded_trials.size(); ++i) {
        excluded.push_back({{"p", cfg.p_grid[i]}, {"trials", result.excluded_trials[i]}});
    }
    const ScenarioConfig& s = cfg.scenario;
    json doc = {
        {"tool", "fmcwlab"},
        {"version", std::string(kVersion)},
        {"config", json::parse(to_json_string(cfg))},
        {"config_hash", hex64(result.config_hash)},
        {"master_seed", result.master_seed},
        {"e_grid_deg", {{"start", 0.0}, {"step", 0.5}, {"count", result.e_grid.size()}}},
        {"excluded_empty_detectable_set", excluded},
        {"assumptions",
         {{"ego_speed_mps", s.ego_speed_mps},
          {"guardrail_doppler_from_ego", s.guardrail_doppler_from_ego},
          {"gamma_distribution", "uniform within category band"},
          {"interferer_duty_cycle", "equal to victim"},
          {"interferer_doppler", "none"},
          {"receive_filter", "ideal gate at +-fs/2"},
          {"radial_velocity", "folded into the unambiguous interval"},
          {"noise_estimator", "median power of non-target bins / ln 2"},
          {"threshold_mode", std::string(to_string(cfg.threshold_mode))},
          {"phase_reference", "noise-inclusive clean frame"}}},
    };
    return doc.dump(2) + "\n";
}

void export_result(const SweepResult& result, const SweepConfig& cfg, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
    write_text_file(dir / "summary.csv", summary_csv(result));
    write_text_file(dir / "phase_cdf.csv", cdf_csv(result));
    write_text_file(dir / "metadata.json", metadata_json(result, cfg));
}

SweepConfig config_from_metadata(std::string_view metadata) {
    json doc;
    try {
        doc = json::parse(metadata);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, fmt::format("malformed metadata: {}", e.what()));
    }
    if (!doc.contains("config")) throw Error(ErrorCode::InvalidConfig, "metadata has no 'config' section");
    return sweep_config_from_json(doc["config"].dump());
}

}  // namespace fmcw
