// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fmcw/harness.hpp"
#include "fmcw/rng.hpp"
#include "support/constructions.hpp"

using namespace fmcw;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

double energy(std::span<const Complex> x) {
    double e = 0.0;
    for (Complex v : x) e += std::norm(v);
    return e;
}

Outcome duration_law() {
    RadarConfig radar;
    std::string detail;
    bool pass = true;
    for (double gamma : {1.5, 2.0, 4.0, 8.0}) {
        const auto expected = static_cast<long>(std::lround(static_cast<double>(radar.samples_per_chirp) / gamma));
        const InterferenceFrame f = synth_interference(radar, testing::crossing_interferer(radar, gamma));
        long worst = 0;
        for (std::size_t count : f.corrupted_per_chirp) {
            worst = std::max(worst, std::abs(static_cast<long>(count) - expected));
        }
        pass = pass && worst <= 2;
        detail += fmt::format("gamma={} expected={} max_dev={}; ", gamma, expected, worst);
    }
    return {pass, detail};
}

Outcome stft_round_trip() {
    const StftConfig cfg;
    Rng rng(11);
    double worst = 0.0;
    std::vector<Complex> x(512);
    for (int v = 0; v < 1000; ++v) {
        for (Complex& s : x) s = rng.complex_normal(1.0);
        const auto y = istft(stft(x, cfg));
        double diff = 0.0;
        for (std::size_t n = 0; n < x.size(); ++n) diff += std::norm(y[n] - x[n]);
        worst = std::max(worst, std::sqrt(diff / energy(x)));
    }
    return {worst < 1e-10, fmt::format("max relative L2 error {:.3e} over 1000 vectors", worst)};
}

Outcome peak_placement() {
    RadarConfig radar;
    radar.noise_variance = 0.0;
    Rng rng(12);
    int hits = 0;
    for (int s = 0; s < 100; ++s) {
        Target t;
        t.range_m = rng.uniform(1.0, 0.98 * radar.max_unambiguous_range_m());
        t.radial_velocity_mps = rng.uniform(-0.98, 0.98) * radar.max_unambiguous_speed_mps();
        t.amplitude = std::polar(rng.uniform(0.1, 10.0), rng.uniform(0.0, 2.0 * kPi));
        Scene scene;
        scene.targets.push_back(t);
        const TargetBin bin = expected_target_bins(scene, radar).bins()[0];
        const RdMap map = range_doppler_map(synth_target(radar, t));
        std::size_t best = 0;
        for (std::size_t k = 1; k < map.data.size(); ++k) {
            if (std::norm(map.data.flat()[k]) > std::norm(map.data.flat()[best])) best = k;
        }
        hits += best == bin.doppler * map.range_bins() + bin.range;
    }
    return {hits == 100, fmt::format("{}/100 argmax on the predicted bin", hits)};
}

Outcome clean_baseline() {
    std::string detail;
    bool pass = true;
    for (const ScenarioConfig& scenario : {preset_s1(), preset_s2()}) {
        SweepConfig cfg;
        cfg.scenario = scenario;
        cfg.p_grid = {0.0};
        cfg.trials_per_point = 10;
        cfg.threads = 1;
        const SweepResult res = run_sweep(cfg);
        for (const SweepRow& row : res.rows) {
            const double cdf05 = row.cdf[1];
            pass = pass && row.trial_count > 0 && row.mean_pd == 1.0 && cdf05 >= 0.999;
            detail += fmt::format("{}/{}: PD={} CDF(0.5)={:.4f}; ", scenario.name, to_string(row.method), row.mean_pd,
                                  cdf05);
        }
    }
    return {pass, detail};
}

// Mean PD and SINR for every configured method at a single p.
std::vector<SweepRow> point(const ScenarioConfig& scenario, double p, std::uint64_t master_seed) {
    SweepConfig cfg;
    cfg.scenario = scenario;
    cfg.p_grid = {p};
    cfg.trials_per_point = 25;
    cfg.master_seed = master_seed;
    cfg.threads = 1;
    return run_sweep(cfg).rows;
}

Outcome mitigation_benefit() {
    constexpr int kSeeds = 20;
    int good = 0;
    std::string misses;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const auto rows = point(preset_s1(), 0.5, seed);
        const SweepRow& none = rows[0];
        bool ok = true;
        for (std::size_t m = 1; m < rows.size(); ++m) {
            ok = ok && rows[m].mean_pd > none.mean_pd && rows[m].mean_sinr_db > none.mean_sinr_db;
        }
        good += ok;
        if (!ok) {
            misses += fmt::format(" seed {} (PD {:.3f}/{:.3f}/{:.3f}, SINR {:.2f}/{:.2f}/{:.2f})", seed, rows[0].mean_pd,
                                  rows[1].mean_pd, rows[2].mean_pd, rows[0].mean_sinr_db, rows[1].mean_sinr_db,
                                  rows[2].mean_sinr_db);
        }
    }
    const bool pass = good * 10 >= kSeeds * 9;
    return {pass, fmt::format("{}/{} master seeds with TD-TH and TFD-TH above none;{}", good, kSeeds,
                              misses.empty() ? "" : " misses:" + misses)};
}

Outcome comparative_claim() {
    const auto s2 = point(preset_s2(), 1.0, 1);
    const auto s1 = point(preset_s1(), 1.0, 1);
    const double pd_gap_s2 = s2[2].mean_pd - s2[1].mean_pd;
    const double sinr_gap_s2 = s2[2].mean_sinr_db - s2[1].mean_sinr_db;
    const double pd_gap_s1 = s1[2].mean_pd - s1[1].mean_pd;
    const bool pass = pd_gap_s2 > 0.0 && sinr_gap_s2 > 0.0 && pd_gap_s2 > pd_gap_s1;
    return {pass, fmt::format("S2 PD gap {:.4f}, S2 SINR gap {:.2f} dB, S1 PD gap {:.4f}", pd_gap_s2, sinr_gap_s2,
                              pd_gap_s1)};
}

Outcome saturation_demo() {
    RadarConfig radar;
    radar.noise_variance = 0.0;
    radar.chirps_per_frame = 4;
    const Scene scene = testing::saturated_scene(radar);
    const AssembledFrame frames = synthesize_scene(radar, scene, 0);

    std::size_t uncovered = 0;
    for (std::size_t m = 0; m < radar.chirps_per_frame; ++m) {
        for (std::size_t n = 0; n < radar.samples_per_chirp; ++n) {
            uncovered += frames.full.samples(m, n) == frames.clean.samples(m, n);
        }
    }

    // TD-TH given the interference-free magnitude (the tone's, 1) as its level.
    DetectorConfig level;
    level.kind = DetectorKind::FixedLevel;
    level.fixed.level = 2.0;
    MitigationStats stats;
    td_th(frames.full, level, &stats);
    const double zeroed = static_cast<double>(stats.zeroed) / static_cast<double>(frames.full.samples.size());

    // TFD-TH with the sweep's detector: energy of the tone after the mask.
    const SweepConfig defaults;
    double kept = 0.0;
    double total = 0.0;
    for (std::size_t m = 0; m < radar.chirps_per_frame; ++m) {
        kept += energy(testing::tf_masked(frames.full.samples.row(m), frames.clean.samples.row(m), defaults.stft,
                                          defaults.tfd_detector));
        total += energy(frames.clean.samples.row(m));
    }
    const double retained = kept / total;
    const bool pass = uncovered == 0 && zeroed >= 0.95 && retained >= 0.5;
    return {pass, fmt::format("uncovered samples {}, TD-TH zeroed {:.4f}, TFD-TH retained tone energy {:.4f}", uncovered,
                              zeroed, retained)};
}

Outcome degradation_trend() {
    SweepConfig cfg;
    cfg.p_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.trials_per_point = 25;
    cfg.methods = {MitigationMethod::None};
    cfg.threads = 1;
    const SweepResult res = run_sweep(cfg);
    bool pass = true;
    std::string detail = "mean PD";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        detail += fmt::format(" {:.4f}", res.rows[i].mean_pd);
        if (i > 0) pass = pass && res.rows[i].mean_pd <= res.rows[i - 1].mean_pd + 0.02;
    }
    return {pass, detail};
}

Outcome determinism() {
    SweepConfig cfg;
    cfg.scenario = preset_s2();
    cfg.p_grid = {0.0, 0.5, 1.0};
    cfg.trials_per_point = 6;
    const auto root = std::filesystem::temp_directory_path() / "fmcw_acceptance";
    std::vector<std::string> summaries;
    std::vector<std::string> cdfs;
    for (std::size_t threads : {1, 1, 4}) {
        cfg.threads = threads;
        const auto dir = root / fmt::format("run{}", summaries.size());
        export_result(run_sweep(cfg), cfg, dir);
        summaries.push_back(read_text_file(dir / "summary.csv"));
        cdfs.push_back(read_text_file(dir / "phase_cdf.csv"));
    }
    std::filesystem::remove_all(root);
    bool pass = true;
    for (std::size_t i = 1; i < summaries.size(); ++i) pass = pass && summaries[i] == summaries[0] && cdfs[i] == cdfs[0];
    return {pass, fmt::format("3 runs (threads 1, 1, 4), summary {} bytes, cdf {} bytes", summaries[0].size(),
                              cdfs[0].size())};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"duration_law", 1.0, duration_law},
        {"stft_round_trip", 5.0, stft_round_trip},
        {"peak_placement", 10.0, peak_placement},
        {"clean_baseline", 10.0, clean_baseline},
        {"mitigation_benefit", 120.0, mitigation_benefit},
        {"comparative_claim", 240.0, comparative_claim},
        {"saturation_demo", 1.0, saturation_demo},
        {"degradation_trend", 180.0, degradation_trend},
        {"determinism", 60.0, determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, fmt::format("threw: {}", e.what())};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = elapsed < c.limit_s;
        const bool pass = out.pass && in_time;
        failures += !pass;
        fmt::print("{} {} ({:.2f} s, limit {} s{}) {}\n", pass ? "PASS" : "FAIL", c.name, elapsed, c.limit_s,
                   in_time ? "" : ", over time", out.detail);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
