#include "fmcw/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fmcw/error.hpp"
#include "fmcw/rng.hpp"

namespace fmcw {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

// Power the calibration is referenced to; noise-free configs use unit power
// so targets keep a non-zero amplitude.
double reference_power(const RadarConfig& radar) {
    return radar.noise_variance > 0.0 ? radar.noise_variance : 1.0;
}

double target_amplitude(double range_m, double rcs_m2, const AmplitudeModel& model, const RadarConfig& radar) {
    const double ref = std::sqrt(reference_power(radar) * db_to_power(model.reference_snr_db) * rcs_m2 /
                                 model.reference_rcs_m2);
    const double ratio = model.reference_range_m / range_m;
    return ref * ratio * ratio;
}

double interferer_amplitude(double range_m, const AmplitudeModel& model, const RadarConfig& radar) {
    const double ref = std::sqrt(reference_power(radar) * db_to_power(model.reference_inr_db));
    return ref * model.reference_range_m / range_m;
}

Target make_target(double x, double lateral, double relative_speed_x, double rcs, TargetKind kind,
                   const ScenarioConfig& scenario, const RadarConfig& radar) {
    const double range = std::hypot(x, lateral);
    if (!(range > 0.0) || !(range < radar.max_unambiguous_range_m())) {
        throw Error(ErrorCode::InfeasibleGeometry,
                    "target at " + std::to_string(range) + " m outside (0, " +
                        std::to_string(radar.max_unambiguous_range_m()) + ") m");
    }
    Target t;
    t.range_m = range;
    t.radial_velocity_mps = fold_radial_velocity(relative_speed_x * x / range, radar);
    t.amplitude = Complex(target_amplitude(range, rcs, scenario.amplitude, radar), 0.0);
    t.kind = kind;
    return t;
}

}  // namespace

std::string_view to_string(TargetKind kind) {
    return kind == TargetKind::Vehicle ? "vehicle" : "guardrail";
}

void CategoryMix::validate() const {
    require(uncorrelated >= 0.0 && semi_correlated >= 0.0 && highly_correlated >= 0.0,
            "category mix weights must be non-negative");
    require(std::abs(uncorrelated + semi_correlated + highly_correlated - 1.0) <= 1e-9,
            "category mix weights must sum to 1");
}

void AmplitudeModel::validate() const {
    require(reference_range_m > 0.0, "reference_range_m must be positive");
    require(std::isfinite(reference_snr_db) && std::isfinite(reference_inr_db), "reference SNR/INR must be finite");
    require(reference_rcs_m2 > 0.0 && vehicle_rcs_m2 > 0.0 && guardrail_rcs_m2 > 0.0, "RCS values must be positive");
}

void ScenarioConfig::validate() const {
    require(lane_count >= 1, "lane_count must be at least 1");
    require(ego_lane >= 1 && ego_lane <= lane_count, "ego_lane must lie in [1, lane_count]");
    require(highway_length_m > 0.0 && lane_width_m > 0.0, "highway dimensions must be positive");
    require(min_vehicle_distance_m > 0.0 && min_vehicle_distance_m <= highway_length_m,
            "min_vehicle_distance_m must lie in (0, highway_length_m]");
    require(vehicle_speed_min_mps >= 0.0 && vehicle_speed_min_mps <= vehicle_speed_max_mps,
            "vehicle speed range must be ordered and non-negative");
    require(std::isfinite(ego_speed_mps), "ego_speed_mps must be finite");
    require(field_of_view_deg > 0.0 && field_of_view_deg <= 90.0, "field_of_view_deg must lie in (0, 90]");
    category_mix.validate();
    amplitude.validate();
}

ScenarioConfig preset_s1() {
    ScenarioConfig s;
    s.name = "S1";
    s.category_mix = {0.90, 0.05, 0.05};
    return s;
}

ScenarioConfig preset_s2() {
    ScenarioConfig s;
    s.name = "S2";
    s.category_mix = {0.05, 0.05, 0.90};
    return s;
}

ScenarioConfig preset_by_name(std::string_view name) {
    if (name == "S1" || name == "s1") return preset_s1();
    if (name == "S2" || name == "s2") return preset_s2();
    throw Error(ErrorCode::InvalidConfig, "unknown scenario preset '" + std::string(name) + "'");
}

std::size_t Scene::vehicle_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(targets.begin(), targets.end(), [](const Target& t) { return t.kind == TargetKind::Vehicle; }));
}

double fold_radial_velocity(double radial_velocity_mps, const RadarConfig& radar) noexcept {
    const double span = 2.0 * radar.max_unambiguous_speed_mps();
    return radial_velocity_mps - span * std::round(radial_velocity_mps / span);
}

Scene generate_scene(const ScenarioConfig& scenario, const RadarConfig& radar, std::uint64_t seed) {
    scenario.validate();
    radar.validate();

    Scene scene;
    scene.seed = seed;
    scene.targets.reserve(scenario.vehicle_count + scenario.guardrail_scatterer_count);
    Rng rng(seed);

    const double width = scenario.lane_width_m;
    const auto ego_lane = static_cast<double>(scenario.ego_lane);
    const double tan_fov = std::tan(scenario.field_of_view_deg * kPi / 180.0);
    // Longitudinal distance from which a point at `lateral` is inside the field of view.
    auto visible_from = [&](double lateral) {
        return scenario.field_of_view_deg >= 90.0 ? 0.0 : std::abs(lateral) / tan_fov;
    };
    constexpr int kMaxDraws = 10000;
    for (std::size_t v = 0; v < scenario.vehicle_count; ++v) {
        std::size_t lane = 0;
        double lateral = 0.0;
        double x = 0.0;
        for (int draw = 0;; ++draw) {
            if (draw == kMaxDraws) {
                throw Error(ErrorCode::InfeasibleGeometry, "no lane position inside the field of view");
            }
            lane = std::min<std::size_t>(scenario.lane_count - 1,
                                         static_cast<std::size_t>(rng.uniform() * static_cast<double>(scenario.lane_count)));
            lateral = (static_cast<double>(lane + 1) - ego_lane) * width;
            x = rng.uniform(scenario.min_vehicle_distance_m, scenario.highway_length_m);
            if (x >= visible_from(lateral)) break;
        }
        const double speed = rng.uniform(scenario.vehicle_speed_min_mps, scenario.vehicle_speed_max_mps);
        const double direction = lane < scenario.lane_count / 2 ? 1.0 : -1.0;
        scene.targets.push_back(make_target(x, lateral, direction * speed - scenario.ego_speed_mps,
                                            scenario.amplitude.vehicle_rcs_m2, TargetKind::Vehicle, scenario, radar));
    }

    const std::size_t left_count = (scenario.guardrail_scatterer_count + 1) / 2;
    const std::size_t right_count = scenario.guardrail_scatterer_count / 2;
    const double left_edge = -(ego_lane - 0.5) * width;
    const double right_edge = (static_cast<double>(scenario.lane_count) - ego_lane + 0.5) * width;
    const double guardrail_speed = scenario.guardrail_doppler_from_ego ? -scenario.ego_speed_mps : 0.0;
    for (const auto& [count, lateral] : std::array{std::pair{left_count, left_edge}, std::pair{right_count, right_edge}}) {
        const double start = std::min(visible_from(lateral), scenario.highway_length_m);
        const double spacing = (scenario.highway_length_m - start) / static_cast<double>(count);
        for (std::size_t k = 0; k < count; ++k) {
            const double x = start + (static_cast<double>(k) + 0.5) * spacing;
            scene.targets.push_back(make_target(x, lateral, guardrail_speed, scenario.amplitude.guardrail_rcs_m2,
                                                TargetKind::Guardrail, scenario, radar));
        }
    }
    return scene;
}

Scene assign_interferers(const Scene& scene, double p_interference, const CategoryMix& mix,
                         const AmplitudeModel& amplitude, const RadarConfig& radar, std::uint64_t seed) {
    if (!(p_interference >= 0.0 && p_interference <= 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "probability of interference " + std::to_string(p_interference) +
                                                       " outside [0, 1]");
    }
    mix.validate();
    amplitude.validate();

    constexpr std::array categories{InterferenceCategory::Uncorrelated, InterferenceCategory::SemiCorrelated,
                                    InterferenceCategory::HighlyCorrelated};
    const std::array weights{mix.uncorrelated, mix.semi_correlated, mix.highly_correlated};

    Scene out = scene;
    out.interferers.clear();
    Rng rng(seed);
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        const Target& t = scene.targets[i];
        if (t.kind != TargetKind::Vehicle) continue;
        if (!rng.bernoulli(p_interference)) continue;

        Interferer intf;
        intf.source_target = i;
        intf.range_m = t.range_m;
        intf.waveform.category = categories[rng.categorical(weights)];
        const GammaBand band = gamma_band(intf.waveform.category);
        intf.waveform.gamma = rng.uniform_open_closed(band.lower_exclusive, band.upper_inclusive);
        intf.waveform.slope_sign = rng.bernoulli(0.5) ? 1 : -1;
        intf.waveform.pri_s = rng.uniform(0.5, 1.5) * radar.pri_s;
        intf.waveform.start_offset_s = rng.uniform(0.0, intf.waveform.pri_s);
        const double phase = rng.uniform(0.0, 2.0 * kPi);
        intf.amplitude = std::polar(interferer_amplitude(t.range_m, amplitude, radar), phase);
        out.interferers.push_back(intf);
    }
    return out;
}

}  // namespace fmcw
