#pragma once
// Coordinate frames, trajectories, hazards and roads.
//
// Conventions:
// - y is longitudinal (forward along the direction of travel), x is lateral
//   with +x to the left of travel.
// - Headings are measured from the +y axis towards +x, so a heading h
//   points along (sin h, cos h). Values are kept in (-pi, pi].
// - In the world frame the ego lane center line passes through x = 0 when
//   the road heading is 0.
// - The hazard-centric frame has its origin at the hazard center and +y
//   along the road travel direction.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hazard_lfd {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Wraps an angle into (-pi, pi].
[[nodiscard]] double wrap_angle(double radians) noexcept;

struct Frame {
    double t{0.0};
    double x{0.0};
    double y{0.0};
    double heading{0.0};
    double vx{0.0};
    double vy{0.0};

    [[nodiscard]] double speed() const noexcept;

    friend bool operator==(const Frame&, const Frame&) = default;
};

enum class FrameKind { World, HazardCentric };

/// Ordered, timestamped ego samples in one coordinate frame.
/// Holds at least two frames with strictly increasing timestamps.
class Trajectory {
public:
    Trajectory(std::vector<Frame> frames, FrameKind kind);

    [[nodiscard]] FrameKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return frames_.size(); }
    [[nodiscard]] std::span<const Frame> frames() const noexcept { return frames_; }
    [[nodiscard]] const Frame& operator[](std::size_t i) const noexcept { return frames_[i]; }
    [[nodiscard]] const Frame& front() const noexcept { return frames_.front(); }
    [[nodiscard]] const Frame& back() const noexcept { return frames_.back(); }

    auto begin() const noexcept { return frames_.begin(); }
    auto end() const noexcept { return frames_.end(); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::vector<Frame> frames_;
    FrameKind kind_;
};

enum class SizeClass { Moderate, Large };
enum class Closeness { Near, Far };
enum class Traffic { Unidirectional, Bidirectional };

/// One parked-vehicle hazard. length runs along y, width along x.
struct HazardDescriptor {
    Vec2 center;
    double length{5.0};
    double width{2.0};
    SizeClass size{SizeClass::Moderate};
    Closeness closeness{Closeness::Near};

    [[nodiscard]] double box_start_y() const noexcept { return center.y - length / 2.0; }
    [[nodiscard]] double box_end_y() const noexcept { return center.y + length / 2.0; }
    [[nodiscard]] double box_right_x() const noexcept { return center.x - width / 2.0; }
    [[nodiscard]] double box_left_x() const noexcept { return center.x + width / 2.0; }

    /// Throws InvalidArgument unless length and width are positive.
    void validate() const;

    friend bool operator==(const HazardDescriptor&, const HazardDescriptor&) = default;
};

struct RoadSpec {
    double lane_width{3.5};
    double sub_lane_width{0.2};
    Traffic traffic{Traffic::Unidirectional};
    double left_limit{5.25};
    double right_limit{-1.75};

    /// Two-lane road: ego lane centered on x = 0 plus one lane to its left,
    /// which carries opposing traffic on bidirectional roads.
    [[nodiscard]] static RoadSpec two_lane(Traffic traffic, double lane_width = 3.5,
                                           double sub_lane_width = 0.2);

    /// Left edge of the ego lane.
    [[nodiscard]] double own_lane_left() const noexcept { return lane_width / 2.0; }

    /// Largest lateral offset a vehicle may legally occupy: the whole drivable
    /// surface on unidirectional roads, the ego lane on bidirectional ones.
    [[nodiscard]] double left_allowance() const noexcept;

    void validate() const;

    friend bool operator==(const RoadSpec&, const RoadSpec&) = default;
};

struct ScenarioLabel {
    SizeClass size{SizeClass::Moderate};
    Closeness closeness{Closeness::Near};
    Traffic traffic{Traffic::Unidirectional};

    /// Canonical text form, e.g. "uni/large/near".
    [[nodiscard]] std::string to_string() const;
    /// Accepts the canonical form; throws InvalidArgument otherwise.
    [[nodiscard]] static ScenarioLabel parse(std::string_view text);

    friend bool operator==(const ScenarioLabel&, const ScenarioLabel&) = default;
};

/// All eight size x closeness x traffic scenarios in a fixed order.
[[nodiscard]] std::array<ScenarioLabel, 8> all_scenario_labels();

[[nodiscard]] std::string_view to_string(SizeClass size) noexcept;
[[nodiscard]] std::string_view to_string(Closeness closeness) noexcept;
[[nodiscard]] std::string_view to_string(Traffic traffic) noexcept;
[[nodiscard]] SizeClass parse_size(std::string_view text);
[[nodiscard]] Closeness parse_closeness(std::string_view text);
[[nodiscard]] Traffic parse_traffic(std::string_view text);

// ─── Frame transforms ─────────────────────────────────────────────────────

[[nodiscard]] Vec2 to_hazard_point(Vec2 world, const HazardDescriptor& hazard,
                                   double road_heading) noexcept;
[[nodiscard]] Vec2 from_hazard_point(Vec2 local, const HazardDescriptor& hazard,
                                     double road_heading) noexcept;

[[nodiscard]] Trajectory to_hazard_centric(const Trajectory& traj, const HazardDescriptor& hazard,
                                           double road_heading);
[[nodiscard]] Trajectory from_hazard_centric(const Trajectory& traj,
                                             const HazardDescriptor& hazard,
                                             double road_heading);

/// Hazard-centric lateral coordinate of the ego lane center line.
[[nodiscard]] double lane_center_lateral(const HazardDescriptor& hazard,
                                         double road_heading) noexcept;

/// Index of the 0.2 m (sub_lane_width) strip containing x_offset, counted
/// from the right road limit. x_offset == left_limit maps to the last strip.
[[nodiscard]] int sub_lane_index(double x_offset, const RoadSpec& road);

/// Number of strips covering [right_limit, left_limit].
[[nodiscard]] int sub_lane_count(const RoadSpec& road);

}  // namespace hazard_lfd
