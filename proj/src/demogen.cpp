#include "hazard_lfd/demogen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/rng.hpp"
#include "hazard_lfd/spline.hpp"

namespace hazard_lfd {

namespace {

double smoothstep(double s) noexcept {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * (3.0 - 2.0 * s);
}

// Lateral offset from the lane center as a function of hazard-centric y,
// before peak normalization.
CubicSpline lateral_shape(double onset, double curvature, double peak, double hazard_length,
                          bool returns, const DemogenParams& p) {
    const double c = std::max(curvature, onset + p.min_swerve_span);
    const double release = std::max(c, hazard_length / 2.0) + p.hold_margin;
    std::vector<Knot> knots{{onset - p.onset_ramp, 0.0},
                            {onset, p.onset_level},
                            {onset + p.swerve_fraction * (c - onset), p.swerve_level * peak},
                            {c, peak},
                            {release, peak}};
    if (returns) {
        const double step = p.return_length / 2.0;
        const double settle[] = {0.5 * peak, 0.0, 0.0};
        for (int k = 0; k < 3; ++k) {
            const double y = release + static_cast<double>(k + 1) * step;
            if (y < p.end_y) knots.push_back({y, settle[k]});
        }
        if (knots.back().y < p.end_y) knots.push_back({p.end_y, 0.0});
    } else if (release < p.end_y) {
        knots.push_back({p.end_y, peak});
    }
    return fit_natural_cubic(knots);
}

double slowdown_weight(double y, double onset, double hazard_length, double release,
                       const DemogenParams& p) {
    const double full = std::max(-hazard_length / 2.0, onset + p.min_swerve_span);
    if (y < full) return smoothstep((y - onset) / (full - onset));
    if (y <= release) return 1.0;
    return 1.0 - smoothstep((y - release) / p.return_length);
}

}  // namespace

std::string_view to_string(ReturnBehavior behavior) noexcept {
    return behavior == ReturnBehavior::ReturnToLane ? "return_to_lane" : "hold_lane";
}

std::string_view to_string(DrivingStyle style) noexcept {
    return style == DrivingStyle::GoalOriented ? "goal_oriented" : "safety_oriented";
}

void DriverProfile::validate() const {
    if (!(d_thresh > 0.0)) throw Error(ErrorCode::InvalidArgument, "d_thresh must be positive");
    if (!(peak_deviation > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "peak_deviation must be positive");
    }
    if (!(approach_speed > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "approach_speed must be positive");
    }
    if (!(slowdown_factor > 0.0 && slowdown_factor <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "slowdown_factor must be in (0, 1]");
    }
    if (lateral_noise_sigma < 0.0 || d_thresh_jitter_sigma < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "sigmas must be non-negative");
    }
}

GeneratedDemo generate_demo_detailed(const DriverProfile& profile, const HazardDescriptor& hazard,
                                     const RoadSpec& road, std::uint64_t seed,
                                     const DemogenParams& p) {
    profile.validate();
    hazard.validate();
    road.validate();
    if (profile.peak_deviation > road.left_allowance()) {
        throw Error(ErrorCode::InfeasibleProfile,
                    "peak deviation " + std::to_string(profile.peak_deviation) +
                        " m exceeds the road allowance of " +
                        std::to_string(road.left_allowance()) + " m");
    }

    SplitMix64 rng(seed);
    const double onset = -(profile.d_thresh + profile.d_thresh_jitter_sigma * rng.normal());
    const bool returns = profile.return_behavior == ReturnBehavior::ReturnToLane;
    const CubicSpline shape = lateral_shape(onset, profile.curvature_point, profile.peak_deviation,
                                            hazard.length, returns, p);
    const double release =
        std::max(std::max(profile.curvature_point, onset + p.min_swerve_span), hazard.length / 2.0) +
        p.hold_margin;

    const auto count = static_cast<std::size_t>(std::floor((p.end_y - p.start_y) / p.sample_spacing + 1e-9)) + 1;
    std::vector<double> ys(count);
    std::vector<double> lateral(count, 0.0);
    std::vector<double> slope(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        ys[i] = p.start_y + static_cast<double>(i) * p.sample_spacing;
        if (ys[i] >= shape.min_y()) {
            lateral[i] = shape.clamped(ys[i]);
            if (ys[i] <= shape.max_y()) slope[i] = shape.derivative(ys[i], 1, false);
        }
    }
    // Cubic overshoot between knots is removed by scaling the whole bump so
    // the sampled maximum is exactly the profile's peak.
    const double sampled_peak = *std::max_element(lateral.begin(), lateral.end());
    const double scale = sampled_peak > 0.0 ? profile.peak_deviation / sampled_peak : 1.0;

    std::vector<Frame> frames;
    frames.reserve(count);
    double t = 0.0;
    double prev_speed = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double clean = lateral[i] * scale;
        const double noisy = std::clamp(clean + profile.lateral_noise_sigma * rng.normal(),
                                        road.right_limit, road.left_allowance());
        const double heading = std::atan(slope[i] * scale);
        const double w = slowdown_weight(ys[i], onset, hazard.length, release, p);
        const double speed = profile.approach_speed * (1.0 - (1.0 - profile.slowdown_factor) * w);
        if (i > 0) {
            const double ds = p.sample_spacing * std::hypot(1.0, slope[i] * scale);
            t += 2.0 * ds / (speed + prev_speed);
        }
        prev_speed = speed;
        Frame f;
        f.t = t;
        f.x = noisy;
        f.y = hazard.center.y + ys[i];
        f.heading = heading;
        f.vx = speed * std::sin(heading);
        f.vy = speed * std::cos(heading);
        frames.push_back(f);
    }
    return {Trajectory(std::move(frames), FrameKind::World), onset};
}

Trajectory generate_demo(const DriverProfile& profile, const HazardDescriptor& hazard,
                         const RoadSpec& road, std::uint64_t seed, const DemogenParams& params) {
    return generate_demo_detailed(profile, hazard, road, seed, params).trajectory;
}

std::vector<std::uint64_t> demo_seeds(std::uint64_t master_seed, std::size_t n) {
    SplitMix64 rng(master_seed);
    std::vector<std::uint64_t> seeds(n);
    for (auto& s : seeds) s = rng.next();
    return seeds;
}

DrivingStyle style_for_index(std::size_t i, double style_mix) {
    if (!(style_mix >= 0.0 && style_mix <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "style_mix must be in [0, 1]");
    }
    const auto before = std::floor(static_cast<double>(i) * style_mix);
    const auto after = std::floor(static_cast<double>(i + 1) * style_mix);
    return after > before ? DrivingStyle::SafetyOriented : DrivingStyle::GoalOriented;
}

DriverProfile draw_profile(const ScenarioCalibration& calibration, DrivingStyle style,
                           std::uint64_t seed, const DemogenParams& p) {
    // Separate stream from the one generate_demo uses with the same seed.
    SplitMix64 rng(seed ^ 0xD1B54A32D192ED03ULL);
    const ScenarioLabel& label = calibration.label;
    const bool near = label.closeness == Closeness::Near;
    const bool safety = style == DrivingStyle::SafetyOriented;
    // Offsets cancel in the population mean: +delta*(1-mix) vs -delta*mix.
    const double style_weight = safety ? 1.0 - p.style_mix : -p.style_mix;

    DriverProfile profile;
    profile.d_thresh =
        std::max(calibration.d_thresh_mu + style_weight * p.style_onset_offset, p.onset_ramp);
    profile.curvature_point = calibration.curvature_point_mu + p.curvature_jitter_sigma * rng.normal();

    double peak = near ? p.peak_near : p.peak_far;
    if (label.size == SizeClass::Large) peak += p.peak_large_bonus;
    if (label.traffic == Traffic::Bidirectional) peak *= p.bidirectional_peak_scale;
    peak += style_weight * p.style_peak_offset + p.peak_sigma * rng.normal();
    profile.peak_deviation = std::max(peak, p.peak_min);

    const bool returns = label.traffic == Traffic::Bidirectional ? p.bidirectional_returns
                                                                 : p.unidirectional_returns;
    profile.return_behavior = returns ? ReturnBehavior::ReturnToLane : ReturnBehavior::HoldLane;
    profile.approach_speed = std::max(p.approach_speed + p.approach_speed_sigma * rng.normal(), 1.0);
    const double slowdown = (near ? p.slowdown_near : p.slowdown_far) + p.slowdown_sigma * rng.normal();
    profile.slowdown_factor = std::clamp(slowdown, 0.05, 1.0);
    profile.lateral_noise_sigma = p.lateral_noise_sigma;
    profile.d_thresh_jitter_sigma = p.d_thresh_jitter_sigma;
    profile.style = style;
    return profile;
}

std::vector<PopulationMember> generate_population(std::size_t n,
                                                  const ScenarioCalibration& calibration,
                                                  const HazardDescriptor& hazard,
                                                  const RoadSpec& road, std::uint64_t master_seed,
                                                  const DemogenParams& params) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "a population needs at least 2 demos");
    std::vector<PopulationMember> members;
    members.reserve(n);
    const auto seeds = demo_seeds(master_seed, n);
    for (std::size_t i = 0; i < n; ++i) {
        DriverProfile profile =
            draw_profile(calibration, style_for_index(i, params.style_mix), seeds[i], params);
        Trajectory traj = generate_demo(profile, hazard, road, seeds[i], params);
        members.push_back({seeds[i], profile, std::move(traj)});
    }
    return members;
}

std::vector<PopulationMember> generate_population(std::size_t n, const ScenarioLabel& label,
                                                  const HazardDescriptor& hazard,
                                                  const RoadSpec& road, std::uint64_t master_seed,
                                                  const DemogenParams& params,
                                                  const CalibrationTable& table) {
    return generate_population(n, default_calibration(label, table), hazard, road, master_seed,
                               params);
}

}  // namespace hazard_lfd
