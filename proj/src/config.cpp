#include "hazard_lfd/config.hpp"

#include "json.hpp"

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"

namespace hazard_lfd {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RoadConfig, lane_width, sub_lane_width)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(HazardGeometry, moderate_length, moderate_width,
                                                large_length, large_width,
                                                near_intrusion_fraction, far_curb_gap, center_y)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TrainingParams, epsilon, deviation_threshold,
                                                persistence)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenerationParams, t_horizon, grid_spacing,
                                                horizon_floor, release_time,
                                                lane_keep_half_width, max_overlap_fraction)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    DemogenParams, start_y, end_y, sample_spacing, onset_ramp, onset_level, swerve_fraction,
    swerve_level, min_swerve_span, hold_margin, return_length, approach_speed,
    approach_speed_sigma, slowdown_near, slowdown_far, slowdown_sigma, peak_near, peak_far,
    peak_large_bonus, bidirectional_peak_scale, peak_sigma, peak_min, style_peak_offset,
    style_onset_offset, style_mix, lateral_noise_sigma, d_thresh_jitter_sigma,
    curvature_jitter_sigma, unidirectional_returns, bidirectional_returns)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(AnalysisParams, bin_width, alpha, exact_max_n)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, road, hazard, training, generation,
                                                demogen, analysis, seed, calibration_path)

HazardDescriptor HazardGeometry::make(SizeClass size, Closeness closeness,
                                      const RoadSpec& road) const {
    HazardDescriptor h;
    h.size = size;
    h.closeness = closeness;
    h.length = size == SizeClass::Large ? large_length : moderate_length;
    h.width = size == SizeClass::Large ? large_width : moderate_width;
    const double lane_edge = road.right_limit;
    h.center.x = closeness == Closeness::Near
                     ? lane_edge - h.width / 2.0 + near_intrusion_fraction * h.width
                     : lane_edge - far_curb_gap - h.width / 2.0;
    h.center.y = center_y;
    return h;
}

RunConfig config_from_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text).get<RunConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("config: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    return config_from_json_text(read_file(path));
}

std::string config_to_json_text(const RunConfig& config) {
    return nlohmann::json(config).dump(2) + "\n";
}

}  // namespace hazard_lfd
