#pragma once
// Sub-lane and speed envelopes from scenario models.
//
// Envelopes live in the world frame with the road travelling along +y
// (road heading 0), so world x is the lateral offset from the ego lane
// center and world y is the longitudinal station.

#include <cstddef>
#include <span>
#include <vector>

#include "hazard_lfd/config.hpp"
#include "hazard_lfd/geometry.hpp"
#include "hazard_lfd/keyframe.hpp"
#include "hazard_lfd/spline.hpp"

namespace hazard_lfd {

struct EgoState {
    double x{0.0};
    double y{0.0};
    double heading{0.0};
    double speed{0.0};
    int sub_lane{0};

    friend bool operator==(const EgoState&, const EgoState&) = default;
};

struct EnvelopePoint {
    double y{0.0};
    double lateral_min{0.0};
    double lateral_max{0.0};
    /// Model mean before road clamping.
    double lateral_mean{0.0};
    int sub_lane_min{0};
    int sub_lane_max{0};
    double speed_min{0.0};
    double speed_max{0.0};
    double speed_mean{0.0};

    friend bool operator==(const EnvelopePoint&, const EnvelopePoint&) = default;
};

enum class JunctionKind { DisjointBoxes, OverlappingBoxes };

/// Where hazard `second`'s model takes over from the preceding one.
struct Junction {
    std::size_t first{0};
    std::size_t second{0};
    double y{0.0};
    JunctionKind kind{JunctionKind::DisjointBoxes};

    friend bool operator==(const Junction&, const Junction&) = default;
};

struct ConstraintEnvelope {
    std::vector<EnvelopePoint> points;
    double horizon_m{0.0};
    double grid_spacing{0.5};
    EgoState ego;
    RoadSpec road;
    std::vector<HazardDescriptor> hazards;
    std::vector<Junction> junctions;

    friend bool operator==(const ConstraintEnvelope&, const ConstraintEnvelope&) = default;
};

/// max(speed * t_horizon, floor). Throws NegativeSpeed.
[[nodiscard]] double distance_horizon(double speed, double t_horizon = 5.0, double floor = 10.0);

/// Knots of the boundary curves: mean +/- one sigma and the mean itself,
/// for lateral offset and speed.
struct BandKnots {
    std::vector<Knot> lateral_upper;
    std::vector<Knot> lateral_lower;
    std::vector<Knot> lateral_mean;
    std::vector<Knot> speed_upper;
    std::vector<Knot> speed_lower;
    std::vector<Knot> speed_mean;
};

/// Model key-frames shifted by `offset` (hazard center for world coordinates).
[[nodiscard]] BandKnots band_knots(const ScenarioModel& model, Vec2 offset = {});

struct BandCurves {
    CubicSpline lateral_upper;
    CubicSpline lateral_lower;
    CubicSpline lateral_mean;
    CubicSpline speed_upper;
    CubicSpline speed_lower;
    CubicSpline speed_mean;
};

[[nodiscard]] BandCurves fit_band(const BandKnots& knots);

struct BandSample {
    double lateral_min{0.0};
    double lateral_max{0.0};
    double lateral_mean{0.0};
    double speed_min{0.0};
    double speed_max{0.0};
    double speed_mean{0.0};
};

/// Band at y, holding the end key-frame values outside the key-frame span.
/// Bounds are ordered even where the boundary splines cross.
[[nodiscard]] BandSample sample_band(const BandCurves& band, double y) noexcept;

/// Ego travels towards a single hazard. Grid points before the model's
/// trigger distance get a lane-keeping band. Throws ModelRoadMismatch,
/// OffRoadEgo or NegativeSpeed.
[[nodiscard]] ConstraintEnvelope generate_single(const ScenarioModel& model, const EgoState& ego,
                                                 const HazardDescriptor& hazard,
                                                 const RoadSpec& road,
                                                 const GenerationParams& params = {});

/// Junction for the model of h2 taking over from h1, as a y coordinate in
/// h2's hazard-centric frame: h1's box end when the boxes are disjoint,
/// the midpoint of the centers when they overlap.
/// Throws OrderViolation if h2 precedes h1.
[[nodiscard]] double adapted_d_thresh(const HazardDescriptor& h1, const HazardDescriptor& h2,
                                      double model2_d_thresh);

/// True when h2's trigger point falls before h1's behavior has been
/// released (box end plus release_time of travel at ego_speed).
[[nodiscard]] bool is_interacting(const HazardDescriptor& h1, const HazardDescriptor& h2,
                                  const ScenarioModel& model1, const ScenarioModel& model2,
                                  double ego_speed, double release_time = 2.0);

/// Hazards in encounter order, one model per hazard. Interacting
/// neighbours are merged into one set of boundary splines at the adapted
/// junction; isolated hazards are handled as single hazards.
/// Throws UnsupportedOverlap for side-by-side hazards, OrderViolation,
/// ModelRoadMismatch.
[[nodiscard]] ConstraintEnvelope generate_multi(std::span<const ScenarioModel> models,
                                                const EgoState& ego,
                                                std::span<const HazardDescriptor> hazards,
                                                const RoadSpec& road,
                                                const GenerationParams& params = {});

}  // namespace hazard_lfd
