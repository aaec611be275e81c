#include "hazard_lfd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hazard_lfd/error.hpp"

namespace hazard_lfd {

namespace {

constexpr double kIndexSlack = 1e-9;

struct Axes {
    Vec2 left;
    Vec2 travel;
};

Axes road_axes(double road_heading) noexcept {
    const double s = std::sin(road_heading);
    const double c = std::cos(road_heading);
    return {{c, -s}, {s, c}};
}

double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }

Frame transform_frame(const Frame& f, const HazardDescriptor& hazard, double road_heading,
                      bool inverse) {
    const Axes axes = road_axes(road_heading);
    Frame out = f;
    if (inverse) {
        const Vec2 p = from_hazard_point({f.x, f.y}, hazard, road_heading);
        out.x = p.x;
        out.y = p.y;
        out.vx = f.vx * axes.left.x + f.vy * axes.travel.x;
        out.vy = f.vx * axes.left.y + f.vy * axes.travel.y;
        out.heading = wrap_angle(f.heading + road_heading);
    } else {
        const Vec2 p = to_hazard_point({f.x, f.y}, hazard, road_heading);
        out.x = p.x;
        out.y = p.y;
        out.vx = dot({f.vx, f.vy}, axes.left);
        out.vy = dot({f.vx, f.vy}, axes.travel);
        out.heading = wrap_angle(f.heading - road_heading);
    }
    return out;
}

}  // namespace

double wrap_angle(double radians) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(radians, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

double Frame::speed() const noexcept { return std::hypot(vx, vy); }

Trajectory::Trajectory(std::vector<Frame> frames, FrameKind kind)
    : frames_(std::move(frames)), kind_(kind) {
    if (frames_.size() < 2) {
        throw Error(ErrorCode::TooShort, "trajectory needs at least 2 frames");
    }
    for (std::size_t i = 1; i < frames_.size(); ++i) {
        if (!(frames_[i].t > frames_[i - 1].t)) {
            throw Error(ErrorCode::InvalidArgument,
                        "timestamps must strictly increase (frame " + std::to_string(i) + ")");
        }
    }
}

void HazardDescriptor::validate() const {
    if (!(length > 0.0) || !(width > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "hazard length and width must be positive");
    }
}

RoadSpec RoadSpec::two_lane(Traffic traffic, double lane_width, double sub_lane_width) {
    RoadSpec road;
    road.lane_width = lane_width;
    road.sub_lane_width = sub_lane_width;
    road.traffic = traffic;
    road.right_limit = -lane_width / 2.0;
    road.left_limit = 1.5 * lane_width;
    return road;
}

double RoadSpec::left_allowance() const noexcept {
    return traffic == Traffic::Bidirectional ? std::min(own_lane_left(), left_limit) : left_limit;
}

void RoadSpec::validate() const {
    if (!(sub_lane_width > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "sub_lane_width must be positive");
    }
    if (!(left_limit > right_limit)) {
        throw Error(ErrorCode::InvalidArgument, "left_limit must exceed right_limit");
    }
    if (!(lane_width > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "lane_width must be positive");
    }
}

std::string_view to_string(SizeClass size) noexcept {
    return size == SizeClass::Moderate ? "moderate" : "large";
}

std::string_view to_string(Closeness closeness) noexcept {
    return closeness == Closeness::Near ? "near" : "far";
}

std::string_view to_string(Traffic traffic) noexcept {
    return traffic == Traffic::Unidirectional ? "uni" : "bi";
}

SizeClass parse_size(std::string_view text) {
    if (text == "moderate" || text == "small") return SizeClass::Moderate;
    if (text == "large") return SizeClass::Large;
    throw Error(ErrorCode::InvalidArgument, "unknown size class '" + std::string(text) + "'");
}

Closeness parse_closeness(std::string_view text) {
    if (text == "near") return Closeness::Near;
    if (text == "far") return Closeness::Far;
    throw Error(ErrorCode::InvalidArgument, "unknown closeness '" + std::string(text) + "'");
}

Traffic parse_traffic(std::string_view text) {
    if (text == "uni" || text == "unidirectional") return Traffic::Unidirectional;
    if (text == "bi" || text == "bidirectional") return Traffic::Bidirectional;
    throw Error(ErrorCode::InvalidArgument, "unknown traffic '" + std::string(text) + "'");
}

std::string ScenarioLabel::to_string() const {
    std::string out(hazard_lfd::to_string(traffic));
    out += '/';
    out += hazard_lfd::to_string(size);
    out += '/';
    out += hazard_lfd::to_string(closeness);
    return out;
}

ScenarioLabel ScenarioLabel::parse(std::string_view text) {
    const auto first = text.find('/');
    const auto second = first == std::string_view::npos ? first : text.find('/', first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos) {
        throw Error(ErrorCode::InvalidArgument,
                    "label must look like traffic/size/closeness, got '" + std::string(text) + "'");
    }
    ScenarioLabel label;
    label.traffic = parse_traffic(text.substr(0, first));
    label.size = parse_size(text.substr(first + 1, second - first - 1));
    label.closeness = parse_closeness(text.substr(second + 1));
    return label;
}

std::array<ScenarioLabel, 8> all_scenario_labels() {
    std::array<ScenarioLabel, 8> labels{};
    std::size_t i = 0;
    for (Traffic traffic : {Traffic::Unidirectional, Traffic::Bidirectional}) {
        for (SizeClass size : {SizeClass::Moderate, SizeClass::Large}) {
            for (Closeness closeness : {Closeness::Near, Closeness::Far}) {
                labels[i++] = ScenarioLabel{size, closeness, traffic};
            }
        }
    }
    return labels;
}

Vec2 to_hazard_point(Vec2 world, const HazardDescriptor& hazard, double road_heading) noexcept {
    const Axes axes = road_axes(road_heading);
    const Vec2 rel{world.x - hazard.center.x, world.y - hazard.center.y};
    return {dot(rel, axes.left), dot(rel, axes.travel)};
}

Vec2 from_hazard_point(Vec2 local, const HazardDescriptor& hazard, double road_heading) noexcept {
    const Axes axes = road_axes(road_heading);
    return {hazard.center.x + local.x * axes.left.x + local.y * axes.travel.x,
            hazard.center.y + local.x * axes.left.y + local.y * axes.travel.y};
}

Trajectory to_hazard_centric(const Trajectory& traj, const HazardDescriptor& hazard,
                             double road_heading) {
    if (traj.kind() != FrameKind::World) {
        throw Error(ErrorCode::WrongFrameKind, "to_hazard_centric expects a world trajectory");
    }
    std::vector<Frame> out;
    out.reserve(traj.size());
    for (const Frame& f : traj) out.push_back(transform_frame(f, hazard, road_heading, false));
    return Trajectory(std::move(out), FrameKind::HazardCentric);
}

Trajectory from_hazard_centric(const Trajectory& traj, const HazardDescriptor& hazard,
                               double road_heading) {
    if (traj.kind() != FrameKind::HazardCentric) {
        throw Error(ErrorCode::WrongFrameKind,
                    "from_hazard_centric expects a hazard-centric trajectory");
    }
    std::vector<Frame> out;
    out.reserve(traj.size());
    for (const Frame& f : traj) out.push_back(transform_frame(f, hazard, road_heading, true));
    return Trajectory(std::move(out), FrameKind::World);
}

double lane_center_lateral(const HazardDescriptor& hazard, double road_heading) noexcept {
    return to_hazard_point({0.0, 0.0}, hazard, road_heading).x;
}

int sub_lane_count(const RoadSpec& road) {
    road.validate();
    const double strips = (road.left_limit - road.right_limit) / road.sub_lane_width;
    return std::max(1, static_cast<int>(std::ceil(strips - kIndexSlack)));
}

int sub_lane_index(double x_offset, const RoadSpec& road) {
    road.validate();
    if (!(x_offset >= road.right_limit && x_offset <= road.left_limit)) {
        throw Error(ErrorCode::OffRoad, "lateral offset " + std::to_string(x_offset) +
                                            " outside road limits");
    }
    const int index =
        static_cast<int>(std::floor((x_offset - road.right_limit) / road.sub_lane_width + kIndexSlack));
    return std::min(index, sub_lane_count(road) - 1);
}

}  // namespace hazard_lfd
