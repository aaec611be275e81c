#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hazard_lfd/config.hpp"
#include "hazard_lfd/geometry.hpp"

namespace hazard_lfd {

struct KeyFrame {
    double y{0.0};
    double lateral{0.0};
    double speed{0.0};

    friend bool operator==(const KeyFrame&, const KeyFrame&) = default;
};

struct ClusteredKeyFrame {
    double y_mu{0.0};
    double lateral_mu{0.0};
    double lateral_sigma{0.0};
    double speed_mu{0.0};
    double speed_sigma{0.0};
    std::size_t support{1};

    friend bool operator==(const ClusteredKeyFrame&, const ClusteredKeyFrame&) = default;
};

/// Per-scenario behavior model: trigger distance plus ordered (mu, sigma)
/// key-frames in the hazard-centric frame.
struct ScenarioModel {
    ScenarioLabel label;
    double d_thresh{0.0};
    std::vector<ClusteredKeyFrame> keyframes;
    std::size_t n_demos{0};
    double epsilon{0.1};

    /// Throws InvalidArgument unless d_thresh > 0, there are at least two
    /// key-frames, y_mu strictly increases and all sigmas are non-negative.
    void validate() const;

    friend bool operator==(const ScenarioModel&, const ScenarioModel&) = default;
};

// ─── Extraction ──────────────────────────────────────────────────────────

struct ExtractionTrace {
    /// Sample indices of the key-frames, ascending.
    std::vector<std::size_t> indices;
    /// Maximum reconstruction error of each fitted knot set, in fit order.
    /// The last entry is below epsilon.
    std::vector<double> max_errors;
};

/// Greedy knot insertion on the lateral channel: start from the two
/// endpoints, refit a natural cubic and add the worst-fitting sample until
/// every sample is reconstructed within epsilon.
/// Throws TooShort (< 2 frames), NonMonotoneY, or InvalidArgument (epsilon <= 0).
[[nodiscard]] ExtractionTrace trace_keyframe_extraction(const Trajectory& traj, double epsilon);

/// Key-frames carry the lateral offset and scalar speed at the chosen samples.
[[nodiscard]] std::vector<KeyFrame> extract_keyframes(const Trajectory& traj, double epsilon);

// ─── Alignment and clustering ────────────────────────────────────────────

struct GroupMember {
    std::size_t demo{0};
    KeyFrame frame;
};

struct Alignment {
    std::size_t reference{0};
    /// One group per reference key-frame, holding every key-frame matched to it.
    std::vector<std::vector<GroupMember>> groups;
};

/// DTW-warps every demonstration's lateral key-frame sequence onto the
/// demonstration with the median key-frame count (earliest index on ties).
/// Throws TooFewDemos (< 2) or TooShort (a demo with < 2 key-frames).
[[nodiscard]] Alignment align_demonstrations(std::span<const std::vector<KeyFrame>> demos);

/// Mean and sample standard deviation per group. A demonstration with
/// several members in one group contributes their average once; support
/// counts demonstrations. Output sorted by y_mu. Throws EmptyGroup.
[[nodiscard]] std::vector<ClusteredKeyFrame> cluster_keyframes(
    std::span<const std::vector<GroupMember>> groups);

// ─── Trigger distance ────────────────────────────────────────────────────

/// Hazard-centric y of the first frame whose lateral deviation from the
/// lane center exceeds the threshold and stays above it for `persistence`
/// metres of travel.
[[nodiscard]] std::optional<double> detect_onset(const Trajectory& traj, double lane_center_lateral,
                                                 const TrainingParams& params);

/// Mean of -onset over the demonstrations that deviate at all.
/// Throws NoBehaviorDetected if none does.
[[nodiscard]] double estimate_d_thresh(std::span<const Trajectory> demos, double lane_center_lateral,
                                       const TrainingParams& params);

// ─── Training ────────────────────────────────────────────────────────────

struct TrainingResult {
    ScenarioModel model;
    /// Input indices excluded because a frame left the road.
    std::vector<std::size_t> rejected;
};

/// Throws InsufficientDemos when fewer than two on-road demonstrations remain.
[[nodiscard]] TrainingResult train_scenario_model(std::span<const Trajectory> demos,
                                                  const HazardDescriptor& hazard,
                                                  const RoadSpec& road, const ScenarioLabel& label,
                                                  const TrainingParams& params,
                                                  double road_heading = 0.0);

}  // namespace hazard_lfd
