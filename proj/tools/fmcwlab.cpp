// fmcwlab: Monte Carlo interference sweeps and single-trial dumps.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "fmcw/config.hpp"
#include "fmcw/error.hpp"
#include "fmcw/frame_io.hpp"
#include "fmcw/harness.hpp"
#include "fmcw/kernels.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> threads;
    bool fast = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "Sweep configuration (JSON); defaults apply when omitted");
    cmd->add_option("--seed", o.seed, "Master seed (overrides sweep.master_seed)");
    cmd->add_option("--out", o.out, "Output directory (overrides output.directory)");
    cmd->add_option("--threads", o.threads, "Worker threads, 0 = all hardware threads");
    cmd->add_flag("--fast", o.fast, "Run 10 trials per point");
}

fmcw::SweepConfig resolve(const CommonOptions& o) {
    fmcw::SweepConfig cfg = o.config_path.empty() ? fmcw::SweepConfig{} : fmcw::load_sweep_config(o.config_path);
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.out) cfg.output_dir = *o.out;
    if (o.threads) cfg.threads = *o.threads;
    if (o.fast) cfg.trials_per_point = fmcw::kFastTrials;
    cfg.validate();
    return cfg;
}

int cmd_validate(const CommonOptions& o) {
    const auto cfg = resolve(o);
    fmt::print("ok config_hash={} scenario={} p_points={} trials={} methods={}\n", fmcw::hex64(fmcw::config_hash(cfg)),
               cfg.scenario.name, cfg.p_grid.size(), cfg.trials_per_point, cfg.methods.size());
    return 0;
}

int cmd_sweep(const CommonOptions& o, bool quiet) {
    const auto cfg = resolve(o);
    std::size_t last_decile = 0;
    auto progress = [&](std::size_t done, std::size_t total) {
        const std::size_t decile = 10 * done / total;
        if (quiet || decile == last_decile) return;
        last_decile = decile;
        std::fprintf(stderr, "\r%3zu%% (%zu/%zu trials)", 10 * decile, done, total);
        if (done == total) std::fputc('\n', stderr);
    };
    const auto result = fmcw::run_sweep(cfg, progress);
    fmcw::export_result(result, cfg, cfg.output_dir);
    std::fputs(fmcw::summary_csv(result).c_str(), stdout);
    return 0;
}

int cmd_trial(const CommonOptions& o, double p, std::size_t index) {
    auto cfg = resolve(o);
    fmcw::TrialArtifacts art;
    const auto r = fmcw::run_trial(cfg, p, index, &art);

    const std::filesystem::path dir = cfg.output_dir;
    std::filesystem::create_directories(dir);
    const std::uint64_t radar_hash = cfg.radar.fingerprint();
    fmcw::write_text_file(dir / "scene.json", fmcw::scene_to_json(art.scene));
    fmcw::write_matrix_file(dir / "frame_full.bin", art.frames.full.samples, radar_hash, "adc_full");
    fmcw::write_matrix_file(dir / "frame_clean.bin", art.frames.clean.samples, radar_hash, "adc_clean");
    fmcw::write_matrix_file(dir / "rd_clean.bin", art.clean_map.data, radar_hash, "rd_clean");
    for (std::size_t i = 0; i < art.maps.size(); ++i) {
        const auto name = fmcw::to_string(cfg.methods[i]);
        fmcw::write_matrix_file(dir / fmt::format("frame_{}.bin", name), art.mitigated[i].samples, radar_hash,
                                fmt::format("adc_{}", name));
        fmcw::write_matrix_file(dir / fmt::format("rd_{}.bin", name), art.maps[i].data, radar_hash,
                                fmt::format("rd_{}", name));
    }

    fmt::print("p={} trial_index={} seed={:#018x} interferers={} expected_bins={} detectable_bins={}\n", r.p,
               r.trial_index, r.seed, r.interferer_count, r.expected_bins, r.detectable_bins);
    if (r.excluded) {
        fmt::print("no detectable targets; trial excluded\n");
        return 0;
    }
    fmt::print("method,pd,sinr_db,median_phase_error_deg\n");
    for (const auto& m : r.metrics) {
        auto errors = m.phase_errors_deg;
        std::nth_element(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(errors.size() / 2), errors.end());
        fmt::print("{},{},{},{}\n", fmcw::to_string(m.method), m.pd, m.sinr_db, errors[errors.size() / 2]);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FMCW radar interference laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    bool quiet = false;
    double p = 0.0;
    std::size_t trial_index = 0;

    auto* validate = app.add_subcommand("validate", "Check a configuration and print its hash");
    add_common(validate, common);
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV + metadata");
    add_common(sweep, common);
    sweep->add_flag("--quiet", quiet, "No progress output");
    auto* trial = app.add_subcommand("trial", "Run one trial and dump scene, frames and RD maps");
    add_common(trial, common);
    trial->add_option("--p", p, "Probability of interference")->required()->check(CLI::Range(0.0, 1.0));
    trial->add_option("--trial-index", trial_index, "Trial index");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(common);
        if (sweep->parsed()) return cmd_sweep(common, quiet);
        if (trial->parsed()) return cmd_trial(common, p, trial_index);
    } catch (const fmcw::Error& e) {
        std::fprintf(stderr, "fmcwlab: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fmcwlab: %s\n", e.what());
        return 1;
    }
    return 0;
}
