#include "hazard_lfd/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hazard_lfd/error.hpp"

namespace hazard_lfd {

namespace {

struct Chain {
    double start_y{0.0};
    BandCurves curves;
};

void check_traffic(const ScenarioModel& model, const RoadSpec& road) {
    if (model.label.traffic != road.traffic) {
        throw Error(ErrorCode::ModelRoadMismatch,
                    "model " + model.label.to_string() + " used on a " +
                        std::string(to_string(road.traffic)) + " road");
    }
}

EnvelopePoint point_at(double y, std::span<const Chain> chains, const RoadSpec& road,
                       const GenerationParams& params) {
    const Chain* active = nullptr;
    for (const Chain& c : chains) {
        if (c.start_y <= y) active = &c;
    }

    BandSample band;
    if (active != nullptr) {
        band = sample_band(active->curves, y);
    } else {
        const BandSample first = sample_band(chains.front().curves, chains.front().start_y);
        band.lateral_min = -params.lane_keep_half_width;
        band.lateral_max = params.lane_keep_half_width;
        band.lateral_mean = 0.0;
        band.speed_min = first.speed_min;
        band.speed_max = first.speed_max;
        band.speed_mean = first.speed_mean;
    }

    EnvelopePoint p;
    p.y = y;
    p.lateral_mean = band.lateral_mean;
    p.speed_mean = band.speed_mean;
    const double right = road.right_limit;
    const double left = road.left_allowance();
    p.lateral_min = std::clamp(band.lateral_min, right, left);
    p.lateral_max = std::clamp(band.lateral_max, right, left);
    if (p.lateral_min > p.lateral_max) p.lateral_min = p.lateral_max;
    p.speed_min = std::max(band.speed_min, 0.0);
    p.speed_max = std::max(band.speed_max, 0.0);
    if (p.speed_min > p.speed_max) p.speed_min = p.speed_max;
    p.sub_lane_min = sub_lane_index(p.lateral_min, road);
    p.sub_lane_max = sub_lane_index(p.lateral_max, road);
    return p;
}

ConstraintEnvelope sample_envelope(std::span<const Chain> chains, const EgoState& ego,
                                   const RoadSpec& road, const GenerationParams& params) {
    ConstraintEnvelope env;
    env.horizon_m = distance_horizon(ego.speed, params.t_horizon, params.horizon_floor);
    env.grid_spacing = params.grid_spacing;
    env.ego = ego;
    env.road = road;
    const auto steps = static_cast<std::size_t>(std::floor(env.horizon_m / params.grid_spacing + 1e-9));
    env.points.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        env.points.push_back(
            point_at(ego.y + static_cast<double>(k) * params.grid_spacing, chains, road, params));
    }
    return env;
}

void check_ego(const EgoState& ego, const RoadSpec& road) {
    if (!(ego.x >= road.right_limit && ego.x <= road.left_limit)) {
        throw Error(ErrorCode::OffRoadEgo, "ego lateral " + std::to_string(ego.x) + " is off the road");
    }
    if (ego.speed < 0.0) throw Error(ErrorCode::NegativeSpeed, "ego speed is negative");
}

double longitudinal_overlap(const HazardDescriptor& a, const HazardDescriptor& b) noexcept {
    return std::min(a.box_end_y(), b.box_end_y()) - std::max(a.box_start_y(), b.box_start_y());
}

}  // namespace

double distance_horizon(double speed, double t_horizon, double floor) {
    if (speed < 0.0) throw Error(ErrorCode::NegativeSpeed, "speed must be non-negative");
    return std::max(speed * t_horizon, floor);
}

BandKnots band_knots(const ScenarioModel& model, Vec2 offset) {
    BandKnots k;
    for (const auto& f : model.keyframes) {
        const double y = f.y_mu + offset.y;
        const double lat = f.lateral_mu + offset.x;
        k.lateral_upper.push_back({y, lat + f.lateral_sigma});
        k.lateral_lower.push_back({y, lat - f.lateral_sigma});
        k.lateral_mean.push_back({y, lat});
        k.speed_upper.push_back({y, f.speed_mu + f.speed_sigma});
        k.speed_lower.push_back({y, f.speed_mu - f.speed_sigma});
        k.speed_mean.push_back({y, f.speed_mu});
    }
    return k;
}

BandCurves fit_band(const BandKnots& k) {
    return {fit_natural_cubic(k.lateral_upper), fit_natural_cubic(k.lateral_lower),
            fit_natural_cubic(k.lateral_mean),  fit_natural_cubic(k.speed_upper),
            fit_natural_cubic(k.speed_lower),   fit_natural_cubic(k.speed_mean)};
}

BandSample sample_band(const BandCurves& band, double y) noexcept {
    const double lu = band.lateral_upper.clamped(y);
    const double ll = band.lateral_lower.clamped(y);
    const double su = band.speed_upper.clamped(y);
    const double sl = band.speed_lower.clamped(y);
    return {std::min(lu, ll), std::max(lu, ll), band.lateral_mean.clamped(y),
            std::min(su, sl), std::max(su, sl), band.speed_mean.clamped(y)};
}

ConstraintEnvelope generate_single(const ScenarioModel& model, const EgoState& ego,
                                   const HazardDescriptor& hazard, const RoadSpec& road,
                                   const GenerationParams& params) {
    road.validate();
    hazard.validate();
    check_traffic(model, road);
    check_ego(ego, road);
    const Chain chain{hazard.center.y - model.d_thresh, fit_band(band_knots(model, hazard.center))};
    ConstraintEnvelope env = sample_envelope(std::span(&chain, 1), ego, road, params);
    env.hazards = {hazard};
    return env;
}

double adapted_d_thresh(const HazardDescriptor& h1, const HazardDescriptor& h2,
                        double model2_d_thresh) {
    if (!(model2_d_thresh > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "model d_thresh must be positive");
    }
    if (h1.center.y > h2.center.y) {
        throw Error(ErrorCode::OrderViolation, "second hazard precedes the first");
    }
    const bool overlap = h1.box_end_y() > h2.box_start_y();
    const double junction_world = overlap ? (h1.center.y + h2.center.y) / 2.0 : h1.box_end_y();
    return junction_world - h2.center.y;
}

bool is_interacting(const HazardDescriptor& h1, const HazardDescriptor& h2,
                    const ScenarioModel& /*model1*/, const ScenarioModel& model2,
                    double ego_speed, double release_time) {
    const double release_margin = ego_speed * release_time;
    return (h2.center.y - model2.d_thresh) < (h1.box_end_y() + release_margin);
}

ConstraintEnvelope generate_multi(std::span<const ScenarioModel> models, const EgoState& ego,
                                  std::span<const HazardDescriptor> hazards, const RoadSpec& road,
                                  const GenerationParams& params) {
    if (models.size() != hazards.size() || hazards.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need exactly one model per hazard");
    }
    if (hazards.size() == 1) return generate_single(models[0], ego, hazards[0], road, params);

    road.validate();
    check_ego(ego, road);
    for (const auto& m : models) check_traffic(m, road);
    for (std::size_t i = 0; i < hazards.size(); ++i) {
        hazards[i].validate();
        if (i == 0) continue;
        const auto& prev = hazards[i - 1];
        const auto& cur = hazards[i];
        if (prev.center.y > cur.center.y) {
            throw Error(ErrorCode::OrderViolation, "hazards must be sorted by encounter order");
        }
        const double overlap = longitudinal_overlap(prev, cur);
        if (overlap > params.max_overlap_fraction * std::min(prev.length, cur.length)) {
            throw Error(ErrorCode::UnsupportedOverlap,
                        "hazards " + std::to_string(i - 1) + " and " + std::to_string(i) +
                            " overlap by " + std::to_string(overlap) + " m");
        }
    }

    std::vector<Chain> chains;
    std::vector<Junction> junctions;
    BandKnots knots = band_knots(models[0], hazards[0].center);
    double start_y = hazards[0].center.y - models[0].d_thresh;
    for (std::size_t i = 1; i < hazards.size(); ++i) {
        const BandKnots next = band_knots(models[i], hazards[i].center);
        if (!is_interacting(hazards[i - 1], hazards[i], models[i - 1], models[i], ego.speed,
                            params.release_time)) {
            chains.push_back({start_y, fit_band(knots)});
            knots = next;
            start_y = hazards[i].center.y - models[i].d_thresh;
            continue;
        }
        const double junction =
            adapted_d_thresh(hazards[i - 1], hazards[i], models[i].d_thresh) + hazards[i].center.y;
        const auto merge = [junction](const std::vector<Knot>& a, const std::vector<Knot>& b) {
            const CubicSpline s = piecewise_combine(a, b, junction);
            return std::vector<Knot>(s.knots().begin(), s.knots().end());
        };
        knots.lateral_upper = merge(knots.lateral_upper, next.lateral_upper);
        knots.lateral_lower = merge(knots.lateral_lower, next.lateral_lower);
        knots.lateral_mean = merge(knots.lateral_mean, next.lateral_mean);
        knots.speed_upper = merge(knots.speed_upper, next.speed_upper);
        knots.speed_lower = merge(knots.speed_lower, next.speed_lower);
        knots.speed_mean = merge(knots.speed_mean, next.speed_mean);
        const bool overlapping = hazards[i - 1].box_end_y() > hazards[i].box_start_y();
        junctions.push_back({i - 1, i, junction,
                             overlapping ? JunctionKind::OverlappingBoxes : JunctionKind::DisjointBoxes});
    }
    chains.push_back({start_y, fit_band(knots)});

    ConstraintEnvelope env = sample_envelope(chains, ego, road, params);
    env.hazards.assign(hazards.begin(), hazards.end());
    env.junctions = std::move(junctions);
    return env;
}

}  // namespace hazard_lfd
