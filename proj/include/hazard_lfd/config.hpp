#pragma once
// Tunable parameters for every stage. Defaults here mirror
// config/defaults.json; any field may be overridden from a JSON file.

#include <cstdint>
#include <filesystem>
#include <string>

#include "hazard_lfd/geometry.hpp"

namespace hazard_lfd {

struct RoadConfig {
    double lane_width{3.5};
    double sub_lane_width{0.2};

    [[nodiscard]] RoadSpec road(Traffic traffic) const {
        return RoadSpec::two_lane(traffic, lane_width, sub_lane_width);
    }
};

/// Default footprints and placement for the study's parked vehicles.
struct HazardGeometry {
    double moderate_length{5.0};
    double moderate_width{2.0};
    double large_length{10.0};
    double large_width{2.6};
    /// Fraction of the vehicle width protruding into the ego lane when near.
    double near_intrusion_fraction{0.1};
    /// Gap between the ego lane edge and a far vehicle's side.
    double far_curb_gap{0.6};
    /// Longitudinal world position of the hazard center.
    double center_y{60.0};

    [[nodiscard]] HazardDescriptor make(SizeClass size, Closeness closeness,
                                        const RoadSpec& road) const;
};

struct TrainingParams {
    double epsilon{0.1};
    double deviation_threshold{0.1};
    double persistence{1.0};
};

struct GenerationParams {
    double t_horizon{5.0};
    double grid_spacing{0.5};
    double horizon_floor{10.0};
    double release_time{2.0};
    double lane_keep_half_width{0.2};
    /// Longitudinal box overlap, as a fraction of the shorter box, above
    /// which two hazards count as stacked side by side.
    double max_overlap_fraction{0.5};
};

struct DemogenParams {
    double start_y{-60.0};
    double end_y{40.0};
    double sample_spacing{0.25};

    double onset_ramp{1.0};
    double onset_level{0.12};
    double swerve_fraction{0.4};
    double swerve_level{0.75};
    double min_swerve_span{2.0};
    double hold_margin{2.0};
    double return_length{16.0};

    double approach_speed{10.0};
    double approach_speed_sigma{0.8};
    double slowdown_near{0.65};
    double slowdown_far{0.8};
    double slowdown_sigma{0.05};

    double peak_near{1.0};
    double peak_far{0.55};
    double peak_large_bonus{0.2};
    double bidirectional_peak_scale{0.75};
    double peak_sigma{0.2};
    double peak_min{0.3};

    double style_peak_offset{0.15};
    double style_onset_offset{1.0};
    double style_mix{0.5};

    double lateral_noise_sigma{0.015};
    double d_thresh_jitter_sigma{1.0};
    double curvature_jitter_sigma{1.0};

    bool unidirectional_returns{false};
    bool bidirectional_returns{true};
};

struct AnalysisParams {
    double bin_width{0.5};
    double alpha{0.05};
    int exact_max_n{25};
};

struct RunConfig {
    RoadConfig road;
    HazardGeometry hazard;
    TrainingParams training;
    GenerationParams generation;
    DemogenParams demogen;
    AnalysisParams analysis;
    std::uint64_t seed{20190101};
    std::string calibration_path;
};

/// Defaults overlaid with the fields present in the JSON file.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
[[nodiscard]] RunConfig config_from_json_text(const std::string& text);
[[nodiscard]] std::string config_to_json_text(const RunConfig& config);

}  // namespace hazard_lfd
