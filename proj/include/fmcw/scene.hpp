#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fmcw/matrix.hpp"
#include "fmcw/rfconfig.hpp"

namespace fmcw {

enum class TargetKind {
    Vehicle,
    Guardrail,
};

std::string_view to_string(TargetKind kind);

/// Point target. radial_velocity_mps is the velocity the victim observes,
/// i.e. folded into (-v_max, v_max) of the victim's Doppler sampling.
struct Target {
    double range_m = 0.0;
    double radial_velocity_mps = 0.0;
    Complex amplitude{};
    TargetKind kind = TargetKind::Vehicle;

    bool operator==(const Target&) const = default;
};

struct Interferer {
    /// Index into Scene::targets of the vehicle carrying this radar.
    std::size_t source_target = 0;
    double range_m = 0.0;
    Complex amplitude{};
    InterfererWaveform waveform;

    bool operator==(const Interferer&) const = default;
};

/// Fractions of Uncorrelated / SemiCorrelated / HighlyCorrelated interferers.
struct CategoryMix {
    double uncorrelated = 1.0;
    double semi_correlated = 0.0;
    double highly_correlated = 0.0;

    void validate() const;

    bool operator==(const CategoryMix&) const = default;
};

/// Radar-equation calibration: per-sample SNR of a reference-RCS target and
/// per-sample INR of an interferer, both at reference_range_m.
struct AmplitudeModel {
    double reference_range_m = 100.0;
    double reference_snr_db = -10.0;
    double reference_inr_db = 20.0;
    double reference_rcs_m2 = 10.0;
    double vehicle_rcs_m2 = 10.0;
    double guardrail_rcs_m2 = 1.0;

    void validate() const;

    bool operator==(const AmplitudeModel&) const = default;
};

/// Straight highway ahead of the victim. Lanes are numbered 1..lane_count
/// from the left edge; lanes 1..lane_count/2 travel with the victim, the
/// rest travel against it.
struct ScenarioConfig {
    std::string name = "custom";
    std::size_t lane_count = 6;
    std::size_t vehicle_count = 34;
    std::size_t guardrail_scatterer_count = 74;
    CategoryMix category_mix;
    double highway_length_m = 200.0;
    double lane_width_m = 3.5;
    std::size_t ego_lane = 3;
    double ego_speed_mps = 25.0;
    /// Vehicles are placed at longitudinal distance in [min_vehicle_distance_m, highway_length_m].
    double min_vehicle_distance_m = 5.0;
    /// Azimuth half-angle of the sensor. Vehicles are drawn inside it and
    /// guardrail scatterers are spread over the visible part of each edge.
    double field_of_view_deg = 15.0;
    double vehicle_speed_min_mps = 15.0;
    double vehicle_speed_max_mps = 40.0;
    /// When false, guardrail scatterers are given zero radial velocity.
    bool guardrail_doppler_from_ego = false;
    AmplitudeModel amplitude;

    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Highway presets: 6 lanes, 34 vehicles, 74 guardrail scatterers.
/// S1 is dominated by uncorrelated interferers (90/5/5), S2 by highly
/// correlated ones (5/5/90).
ScenarioConfig preset_s1();
ScenarioConfig preset_s2();
ScenarioConfig preset_by_name(std::string_view name);

struct Scene {
    std::vector<Target> targets;
    std::vector<Interferer> interferers;
    std::uint64_t seed = 0;

    std::size_t vehicle_count() const noexcept;

    bool operator==(const Scene&) const = default;
};

/// Wrap a radial velocity into the victim's unambiguous interval.
double fold_radial_velocity(double radial_velocity_mps, const RadarConfig& radar) noexcept;

Scene generate_scene(const ScenarioConfig& scenario, const RadarConfig& radar, std::uint64_t seed);

/// Each vehicle independently carries an interfering radar with probability
/// p_interference. Returns a copy of `scene` with the interferer list replaced.
Scene assign_interferers(const Scene& scene, double p_interference, const CategoryMix& mix,
                         const AmplitudeModel& amplitude, const RadarConfig& radar, std::uint64_t seed);

}  // namespace fmcw
