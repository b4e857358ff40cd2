#include "fmcw/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "fmcw/error.hpp"
#include "fmcw/hash.hpp"

namespace fmcw {

using json = nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void check_keys(const json& obj, std::string_view section, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) invalid(fmt::format("'{}' must be an object", section));
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            invalid(fmt::format("unknown key '{}' in '{}'", key, section));
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out, std::string_view section) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        invalid(fmt::format("'{}.{}': {}", section, key, e.what()));
    }
}

json to_json(const RadarConfig& r) {
    return {{"carrier_freq_hz", r.carrier_freq_hz},   {"sweep_bandwidth_hz", r.sweep_bandwidth_hz},
            {"active_time_s", r.active_time_s},       {"pri_s", r.pri_s},
            {"sample_period_s", r.sample_period_s},   {"samples_per_chirp", r.samples_per_chirp},
            {"chirps_per_frame", r.chirps_per_frame}, {"noise_variance", r.noise_variance}};
}

void from_json(const json& j, RadarConfig& r) {
    constexpr const char* s = "radar";
    check_keys(j, s, {"carrier_freq_hz", "sweep_bandwidth_hz", "active_time_s", "pri_s", "sample_period_s",
                      "samples_per_chirp", "chirps_per_frame", "noise_variance"});
    read(j, "carrier_freq_hz", r.carrier_freq_hz, s);
    read(j, "sweep_bandwidth_hz", r.sweep_bandwidth_hz, s);
    read(j, "active_time_s", r.active_time_s, s);
    read(j, "pri_s", r.pri_s, s);
    read(j, "sample_period_s", r.sample_period_s, s);
    read(j, "samples_per_chirp", r.samples_per_chirp, s);
    read(j, "chirps_per_frame", r.chirps_per_frame, s);
    read(j, "noise_variance", r.noise_variance, s);
}

json to_json(const ScenarioConfig& c) {
    const auto& a = c.amplitude;
    return {{"name", c.name},
            {"lane_count", c.lane_count},
            {"vehicle_count", c.vehicle_count},
            {"guardrail_scatterer_count", c.guardrail_scatterer_count},
            {"category_mix",
             {{"uncorrelated", c.category_mix.uncorrelated},
              {"semi_correlated", c.category_mix.semi_correlated},
              {"highly_correlated", c.category_mix.highly_correlated}}},
            {"highway_length_m", c.highway_length_m},
            {"lane_width_m", c.lane_width_m},
            {"ego_lane", c.ego_lane},
            {"ego_speed_mps", c.ego_speed_mps},
            {"min_vehicle_distance_m", c.min_vehicle_distance_m},
            {"field_of_view_deg", c.field_of_view_deg},
            {"vehicle_speed_min_mps", c.vehicle_speed_min_mps},
            {"vehicle_speed_max_mps", c.vehicle_speed_max_mps},
            {"guardrail_doppler_from_ego", c.guardrail_doppler_from_ego},
            {"amplitude",
             {{"reference_range_m", a.reference_range_m},
              {"reference_snr_db", a.reference_snr_db},
              {"reference_inr_db", a.reference_inr_db},
              {"reference_rcs_m2", a.reference_rcs_m2},
              {"vehicle_rcs_m2", a.vehicle_rcs_m2},
              {"guardrail_rcs_m2", a.guardrail_rcs_m2}}}};
}

void from_json(const json& j, ScenarioConfig& c) {
    constexpr const char* s = "scenario";
    check_keys(j, s, {"preset", "name", "lane_count", "vehicle_count", "guardrail_scatterer_count", "category_mix",
                      "highway_length_m", "lane_width_m", "ego_lane", "ego_speed_mps", "min_vehicle_distance_m", "field_of_view_deg",
                      "vehicle_speed_min_mps", "vehicle_speed_max_mps", "guardrail_doppler_from_ego", "amplitude"});
    if (auto it = j.find("preset"); it != j.end()) {
        if (!it->is_string()) invalid("'scenario.preset' must be a string");
        c = preset_by_name(it->get<std::string>());
    }
    read(j, "name", c.name, s);
    read(j, "lane_count", c.lane_count, s);
    read(j, "vehicle_count", c.vehicle_count, s);
    read(j, "guardrail_scatterer_count", c.guardrail_scatterer_count, s);
    read(j, "highway_length_m", c.highway_length_m, s);
    read(j, "lane_width_m", c.lane_width_m, s);
    read(j, "ego_lane", c.ego_lane, s);
    read(j, "ego_speed_mps", c.ego_speed_mps, s);
    read(j, "min_vehicle_distance_m", c.min_vehicle_distance_m, s);
    read(j, "field_of_view_deg", c.field_of_view_deg, s);
    read(j, "vehicle_speed_min_mps", c.vehicle_speed_min_mps, s);
    read(j, "vehicle_speed_max_mps", c.vehicle_speed_max_mps, s);
    read(j, "guardrail_doppler_from_ego", c.guardrail_doppler_from_ego, s);
    if (auto it = j.find("category_mix"); it != j.end()) {
        constexpr const char* m = "scenario.category_mix";
        check_keys(*it, m, {"uncorrelated", "semi_correlated", "highly_correlated"});
        read(*it, "uncorrelated", c.category_mix.uncorrelated, m);
        read(*it, "semi_correlated", c.category_mix.semi_correlated, m);
        read(*it, "highly_correlated", c.category_mix.highly_correlated, m);
    }
    if (auto it = j.find("amplitude"); it != j.end()) {
        constexpr const char* m = "scenario.amplitude";
        check_keys(*it, m, {"reference_range_m", "reference_snr_db", "reference_inr_db", "reference_rcs_m2",
                            "vehicle_rcs_m2", "guardrail_rcs_m2"});
        auto& a = c.amplitude;
        read(*it, "reference_range_m", a.reference_range_m, m);
        read(*it, "reference_snr_db", a.reference_snr_db, m);
        read(*it, "reference_inr_db", a.reference_inr_db, m);
        read(*it, "reference_rcs_m2", a.reference_rcs_m2, m);
        read(*it, "vehicle_rcs_m2", a.vehicle_rcs_m2, m);
        read(*it, "guardrail_rcs_m2", a.guardrail_rcs_m2, m);
    }
}

json to_json(const DetectorConfig& d) {
    return {{"kind", std::string(to_string(d.kind))},
            {"cfar",
             {{"training_cells", d.cfar.training_cells},
              {"guard_cells", d.cfar.guard_cells},
              {"scale_factor", d.cfar.scale_factor}}},
            {"mad", {{"k", d.mad.k}}},
            {"fixed_level", {{"level", d.fixed.level}}}};
}

void from_json(const json& j, DetectorConfig& d, const std::string& section) {
    check_keys(j, section, {"kind", "cfar", "mad", "fixed_level"});
    if (auto k = j.find("kind"); k != j.end()) {
        std::string name;
        read(j, "kind", name, section);
        d.kind = detector_kind_from_string(name);
    }
    if (auto c = j.find("cfar"); c != j.end()) {
        const std::string cs = section + ".cfar";
        check_keys(*c, cs, {"training_cells", "guard_cells", "scale_factor"});
        read(*c, "training_cells", d.cfar.training_cells, cs);
        read(*c, "guard_cells", d.cfar.guard_cells, cs);
        read(*c, "scale_factor", d.cfar.scale_factor, cs);
    }
    if (auto c = j.find("mad"); c != j.end()) {
        const std::string ms = section + ".mad";
        check_keys(*c, ms, {"k"});
        read(*c, "k", d.mad.k, ms);
    }
    if (auto c = j.find("fixed_level"); c != j.end()) {
        const std::string fs = section + ".fixed_level";
        check_keys(*c, fs, {"level"});
        read(*c, "level", d.fixed.level, fs);
    }
}

json to_json(const SweepConfig& cfg, bool with_runtime) {
    json methods = json::array();
    for (auto m : cfg.methods) methods.push_back(std::string(to_string(m)));
    json sweep = {{"p_grid", cfg.p_grid},
                  {"trials_per_point", cfg.trials_per_point},
                  {"methods", methods},
                  {"master_seed", cfg.master_seed}};
    if (with_runtime) sweep["threads"] = cfg.threads;
    json j = {
        {"radar", to_json(cfg.radar)},
        {"scenario", to_json(cfg.scenario)},
        {"sweep", sweep},
        {"detector", {{"td_th", to_json(cfg.td_detector)}, {"tfd_th", to_json(cfg.tfd_detector)}}},
        {"stft",
         {{"window_length", cfg.stft.window_length},
          {"hop", cfg.stft.hop},
          {"window", std::string(to_string(cfg.stft.window))}}},
        {"rdproc",
         {{"pfa", cfg.pfa},
          {"threshold_mode", std::string(to_string(cfg.threshold_mode))},
          {"range_window", std::string(to_string(cfg.rd.range_window))},
          {"doppler_window", std::string(to_string(cfg.rd.doppler_window))}}},
    };
    if (with_runtime) j["output"] = {{"directory", cfg.output_dir}};
    return j;
}

std::string get_string(const json& j, const char* key, std::string_view section, std::string fallback) {
    read(j, key, fallback, section);
    return fallback;
}

}  // namespace

void SweepConfig::validate() const {
    radar.validate();
    scenario.validate();
    td_detector.validate();
    tfd_detector.validate();
    stft.validate();
    if (stft.window_length > radar.samples_per_chirp) invalid("STFT window longer than a chirp");
    if (p_grid.empty()) invalid("p_grid must not be empty");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0)) {
            throw Error(ErrorCode::InvalidProbability, fmt::format("p_grid value {} outside [0, 1]", p_grid[i]));
        }
        if (i > 0 && !(p_grid[i] > p_grid[i - 1])) invalid("p_grid must be strictly ascending");
    }
    if (trials_per_point < 1) invalid("trials_per_point must be at least 1");
    if (methods.empty()) invalid("at least one method is required");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (methods[k] == methods[i]) invalid("methods must not repeat");
        }
    }
    if (!(pfa > 0.0 && pfa <= 1.0)) throw Error(ErrorCode::InvalidProbability, "pfa must lie in (0, 1]");
}

std::string to_json_string(const SweepConfig& cfg, int indent) { return to_json(cfg, true).dump(indent) + "\n"; }

SweepConfig sweep_config_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        invalid(fmt::format("malformed configuration: {}", e.what()));
    }
    SweepConfig cfg;
    check_keys(j, "<root>", {"radar", "scenario", "sweep", "detector", "stft", "rdproc", "output"});
    if (auto it = j.find("radar"); it != j.end()) from_json(*it, cfg.radar);
    if (auto it = j.find("scenario"); it != j.end()) from_json(*it, cfg.scenario);
    if (auto it = j.find("sweep"); it != j.end()) {
        constexpr const char* s = "sweep";
        check_keys(*it, s, {"p_grid", "trials_per_point", "methods", "master_seed", "threads"});
        read(*it, "p_grid", cfg.p_grid, s);
        read(*it, "trials_per_point", cfg.trials_per_point, s);
        read(*it, "master_seed", cfg.master_seed, s);
        read(*it, "threads", cfg.threads, s);
        if (auto m = it->find("methods"); m != it->end()) {
            std::vector<std::string> names;
            read(*it, "methods", names, s);
            cfg.methods.clear();
            for (const auto& n : names) cfg.methods.push_back(mitigation_method_from_string(n));
        }
    }
    if (auto it = j.find("detector"); it != j.end()) {
        check_keys(*it, "detector", {"td_th", "tfd_th"});
        if (auto d = it->find("td_th"); d != it->end()) from_json(*d, cfg.td_detector, "detector.td_th");
        if (auto d = it->find("tfd_th"); d != it->end()) from_json(*d, cfg.tfd_detector, "detector.tfd_th");
    }
    if (auto it = j.find("stft"); it != j.end()) {
        constexpr const char* s = "stft";
        check_keys(*it, s, {"window_length", "hop", "window"});
        read(*it, "window_length", cfg.stft.window_length, s);
        read(*it, "hop", cfg.stft.hop, s);
        if (it->contains("window")) cfg.stft.window = window_kind_from_string(get_string(*it, "window", s, ""));
    }
    if (auto it = j.find("rdproc"); it != j.end()) {
        constexpr const char* s = "rdproc";
        check_keys(*it, s, {"pfa", "threshold_mode", "range_window", "doppler_window"});
        read(*it, "pfa", cfg.pfa, s);
        if (it->contains("threshold_mode")) {
            cfg.threshold_mode = threshold_mode_from_string(get_string(*it, "threshold_mode", s, ""));
        }
        if (it->contains("range_window")) {
            cfg.rd.range_window = window_kind_from_string(get_string(*it, "range_window", s, ""));
        }
        if (it->contains("doppler_window")) {
            cfg.rd.doppler_window = window_kind_from_string(get_string(*it, "doppler_window", s, ""));
        }
    }
    if (auto it = j.find("output"); it != j.end()) {
        check_keys(*it, "output", {"directory"});
        read(*it, "directory", cfg.output_dir, "output");
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    return sweep_config_from_json(read_text_file(path));
}

std::uint64_t config_hash(const SweepConfig& cfg) { return fnv1a(to_json(cfg, false).dump()); }

std::string hex64(std::uint64_t value) { return fmt::format("{:016x}", value); }

std::string scene_to_json(const Scene& scene, int indent) {
    json targets = json::array();
    for (const Target& t : scene.targets) {
        targets.push_back({{"kind", std::string(to_string(t.kind))},
                           {"range_m", t.range_m},
                           {"radial_velocity_mps", t.radial_velocity_mps},
                           {"amplitude", {t.amplitude.real(), t.amplitude.imag()}}});
    }
    json interferers = json::array();
    for (const Interferer& i : scene.interferers) {
        const auto& w = i.waveform;
        interferers.push_back({{"source_target", i.source_target},
                               {"range_m", i.range_m},
                               {"amplitude", {i.amplitude.real(), i.amplitude.imag()}},
                               {"gamma", w.gamma},
                               {"slope_sign", w.slope_sign},
                               {"pri_s", w.pri_s},
                               {"start_offset_s", w.start_offset_s},
                               {"category", std::string(to_string(w.category))}});
    }
    return json{{"seed", scene.seed}, {"targets", targets}, {"interferers", interferers}}.dump(indent) + "\n";
}

Scene scene_from_json(std::string_view text) {
    Scene scene;
    try {
        const json j = json::parse(text);
        scene.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& t : j.at("targets")) {
            Target target;
            target.kind = t.at("kind").get<std::string>() == "guardrail" ? TargetKind::Guardrail : TargetKind::Vehicle;
            target.range_m = t.at("range_m").get<double>();
            target.radial_velocity_mps = t.at("radial_velocity_mps").get<double>();
            target.amplitude = {t.at("amplitude").at(0).get<double>(), t.at("amplitude").at(1).get<double>()};
            scene.targets.push_back(target);
        }
        for (const auto& i : j.at("interferers")) {
            Interferer intf;
            intf.source_target = i.at("source_target").get<std::size_t>();
            intf.range_m = i.at("range_m").get<double>();
            intf.amplitude = {i.at("amplitude").at(0).get<double>(), i.at("amplitude").at(1).get<double>()};
            intf.waveform.gamma = i.at("gamma").get<double>();
            intf.waveform.slope_sign = i.at("slope_sign").get<int>();
            intf.waveform.pri_s = i.at("pri_s").get<double>();
            intf.waveform.start_offset_s = i.at("start_offset_s").get<double>();
            intf.waveform.category = classify_interference(intf.waveform.gamma);
            scene.interferers.push_back(intf);
        }
    } catch (const json::exception& e) {
        invalid(fmt::format("malformed scene document: {}", e.what()));
    }
    return scene;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for reading", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for writing", path.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace fmcw
