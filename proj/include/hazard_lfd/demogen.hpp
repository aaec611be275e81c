#pragma once
// Synthetic demonstrations: seeded, noisy evasive trajectories past one
// parked vehicle, with population statistics set by the calibration table.

#include <cstdint>
#include <span>
#include <vector>

#include "hazard_lfd/calibration.hpp"
#include "hazard_lfd/config.hpp"
#include "hazard_lfd/geometry.hpp"

namespace hazard_lfd {

enum class ReturnBehavior { ReturnToLane, HoldLane };
enum class DrivingStyle { GoalOriented, SafetyOriented };

[[nodiscard]] std::string_view to_string(ReturnBehavior behavior) noexcept;
[[nodiscard]] std::string_view to_string(DrivingStyle style) noexcept;

struct DriverProfile {
    double d_thresh{36.0};
    /// Largest lateral offset from the lane center, meters (positive = left).
    double peak_deviation{1.0};
    /// Hazard-centric y of the maximum-curvature point.
    double curvature_point{-2.0};
    ReturnBehavior return_behavior{ReturnBehavior::HoldLane};
    double approach_speed{10.0};
    double slowdown_factor{0.7};
    double lateral_noise_sigma{0.015};
    double d_thresh_jitter_sigma{1.0};
    DrivingStyle style{DrivingStyle::GoalOriented};

    /// Throws InvalidArgument.
    void validate() const;

    friend bool operator==(const DriverProfile&, const DriverProfile&) = default;
};

struct GeneratedDemo {
    Trajectory trajectory;
    /// Hazard-centric y where the lateral deviation starts.
    double onset_y{0.0};
};

/// World-frame trajectory (road heading 0, ego lane centered on x = 0).
/// Throws InfeasibleProfile if the peak exceeds the road allowance.
[[nodiscard]] GeneratedDemo generate_demo_detailed(const DriverProfile& profile,
                                                   const HazardDescriptor& hazard,
                                                   const RoadSpec& road, std::uint64_t seed,
                                                   const DemogenParams& params = {});
[[nodiscard]] Trajectory generate_demo(const DriverProfile& profile, const HazardDescriptor& hazard,
                                       const RoadSpec& road, std::uint64_t seed,
                                       const DemogenParams& params = {});

/// First n outputs of SplitMix64(master_seed).
[[nodiscard]] std::vector<std::uint64_t> demo_seeds(std::uint64_t master_seed, std::size_t n);

/// Style of demo i: safety oriented when floor((i+1)*mix) > floor(i*mix),
/// so any prefix of n demos holds floor(n*mix) safety-oriented ones.
[[nodiscard]] DrivingStyle style_for_index(std::size_t i, double style_mix);

/// Profile for one demo, drawn around the calibration from its own seed.
[[nodiscard]] DriverProfile draw_profile(const ScenarioCalibration& calibration,
                                         DrivingStyle style, std::uint64_t seed,
                                         const DemogenParams& params = {});

struct PopulationMember {
    std::uint64_t seed{0};
    DriverProfile profile;
    Trajectory trajectory;
};

/// Throws InvalidArgument for n < 2, InfeasibleProfile.
[[nodiscard]] std::vector<PopulationMember> generate_population(
    std::size_t n, const ScenarioCalibration& calibration, const HazardDescriptor& hazard,
    const RoadSpec& road, std::uint64_t master_seed, const DemogenParams& params = {});

/// Population for a scenario label using default_calibration.
[[nodiscard]] std::vector<PopulationMember> generate_population(
    std::size_t n, const ScenarioLabel& label, const HazardDescriptor& hazard,
    const RoadSpec& road, std::uint64_t master_seed, const DemogenParams& params = {},
    const CalibrationTable& table = builtin_calibration());

}  // namespace hazard_lfd
