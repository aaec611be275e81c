#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "test_support.hpp"

#include "hazard_lfd/config.hpp"
#include "hazard_lfd/constraints.hpp"
#include "hazard_lfd/demogen.hpp"
#include "hazard_lfd/envelope_io.hpp"
#include "hazard_lfd/keyframe.hpp"

using namespace hazard_lfd;

namespace {

const RunConfig kConfig;

RoadSpec road_for(Traffic t) { return kConfig.road.road(t); }

HazardDescriptor hazard_for(const ScenarioLabel& l, double center_y = 60.0) {
    HazardDescriptor h = kConfig.hazard.make(l.size, l.closeness, road_for(l.traffic));
    h.center.y = center_y;
    return h;
}

const ScenarioModel& trained(const std::string& text) {
    static std::map<std::string, ScenarioModel> cache;
    auto it = cache.find(text);
    if (it == cache.end()) {
        const ScenarioLabel label = ScenarioLabel::parse(text);
        const RoadSpec road = road_for(label.traffic);
        const HazardDescriptor hazard = hazard_for(label);
        std::vector<Trajectory> demos;
        for (auto& m : generate_population(20, label, hazard, road, 99)) demos.push_back(m.trajectory);
        it = cache.emplace(text, train_scenario_model(demos, hazard, road, label, TrainingParams{}).model)
                 .first;
    }
    return it->second;
}

ScenarioModel toy_model(Traffic traffic, double sigma) {
    ScenarioModel m;
    m.label.traffic = traffic;
    m.d_thresh = 20.0;
    m.keyframes = {{-20.0, 2.0, sigma, 10.0, sigma, 5},
                   {-8.0, 3.0, sigma, 8.0, sigma, 5},
                   {0.0, 3.5, sigma, 7.0, sigma, 5},
                   {10.0, 2.5, sigma, 8.5, sigma, 5}};
    return m;
}

EgoState ego_at(double y, double speed) {
    EgoState e;
    e.y = y;
    e.speed = speed;
    e.sub_lane = 8;
    return e;
}

const EnvelopePoint& point_at(const ConstraintEnvelope& env, double y) {
    const auto it = std::find_if(env.points.begin(), env.points.end(),
                                 [&](const EnvelopePoint& p) { return std::abs(p.y - y) < 1e-9; });
    REQUIRE(it != env.points.end());
    return *it;
}

void check_envelope_invariants(const ConstraintEnvelope& env) {
    for (const auto& p : env.points) {
        CHECK(p.lateral_min <= p.lateral_max);
        CHECK(p.speed_min <= p.speed_max);
        CHECK(p.speed_min >= 0.0);
        CHECK(p.lateral_min >= env.road.right_limit);
        CHECK(p.lateral_max <= env.road.left_allowance());
        CHECK(p.sub_lane_min <= p.sub_lane_max);
    }
}

void check_clearance(const ConstraintEnvelope& env) {
    for (const auto& h : env.hazards) {
        for (const auto& p : env.points) {
            if (p.y < h.box_start_y() || p.y > h.box_end_y()) continue;
            CHECK(p.lateral_min - h.center.x >= h.width / 2.0 + 0.3);
        }
    }
}

}  // namespace

TEST_CASE("distance horizon") {
    CHECK(distance_horizon(10.0) == 50.0);
    CHECK(distance_horizon(0.0) == 10.0);
    CHECK(distance_horizon(7.2) == doctest::Approx(36.0));
    CHECK_THROWS_CODE(distance_horizon(-1.0), ErrorCode::NegativeSpeed);
}

TEST_CASE("single hazard: grid and knot values") {
    const ScenarioModel m = toy_model(Traffic::Unidirectional, 0.3);
    const RoadSpec road = road_for(Traffic::Unidirectional);
    HazardDescriptor h;
    h.center = {-2.5, 60.0};
    const ConstraintEnvelope env = generate_single(m, ego_at(30.0, 10.0), h, road);
    CHECK(env.horizon_m == 50.0);
    REQUIRE(env.points.size() == 101);
    CHECK(env.points.front().y == 30.0);
    CHECK(env.points.back().y == 80.0);
    for (const auto& k : m.keyframes) {
        const EnvelopePoint& p = point_at(env, h.center.y + k.y_mu);
        CHECK((p.lateral_min + p.lateral_max) / 2.0 == doctest::Approx(k.lateral_mu + h.center.x));
        CHECK(p.lateral_max - p.lateral_min == doctest::Approx(2.0 * k.lateral_sigma));
        CHECK(p.speed_max - p.speed_min == doctest::Approx(2.0 * k.speed_sigma));
        CHECK(p.lateral_mean == doctest::Approx(k.lateral_mu + h.center.x));
    }
    // Before the trigger: lane keeping around the lane center.
    const EnvelopePoint& early = point_at(env, 35.0);
    CHECK(early.lateral_min == -0.2);
    CHECK(early.lateral_max == 0.2);
    CHECK(early.speed_mean == m.keyframes.front().speed_mu);
    // Past the last key-frame the end values are held.
    const EnvelopePoint& late = point_at(env, 78.0);
    CHECK(late.lateral_mean == doctest::Approx(m.keyframes.back().lateral_mu + h.center.x));
    check_envelope_invariants(env);
}

TEST_CASE("single hazard: zero spread collapses the band") {
    const ScenarioModel m = toy_model(Traffic::Unidirectional, 0.0);
    HazardDescriptor h;
    h.center = {-2.5, 60.0};
    const ConstraintEnvelope env =
        generate_single(m, ego_at(30.0, 10.0), h, road_for(Traffic::Unidirectional));
    for (const auto& p : env.points) {
        if (p.y < 40.0) continue;
        CHECK(p.lateral_min == p.lateral_max);
        CHECK(p.speed_min == p.speed_max);
    }
}

TEST_CASE("single hazard: bidirectional bound stays in the own lane") {
    const ScenarioModel m = toy_model(Traffic::Bidirectional, 1.5);
    const RoadSpec road = road_for(Traffic::Bidirectional);
    HazardDescriptor h;
    h.center = {-2.5, 60.0};
    const ConstraintEnvelope env = generate_single(m, ego_at(30.0, 10.0), h, road);
    double highest = -1e9;
    for (const auto& p : env.points) highest = std::max(highest, p.lateral_max);
    CHECK(highest == road.own_lane_left());
    check_envelope_invariants(env);
}

TEST_CASE("single hazard: errors") {
    const ScenarioModel uni = toy_model(Traffic::Unidirectional, 0.2);
    HazardDescriptor h;
    h.center = {-2.5, 60.0};
    CHECK_THROWS_CODE(generate_single(uni, ego_at(0, 10), h, road_for(Traffic::Bidirectional)),
                      ErrorCode::ModelRoadMismatch);
    EgoState off = ego_at(0, 10);
    off.x = 9.0;
    CHECK_THROWS_CODE(generate_single(uni, off, h, road_for(Traffic::Unidirectional)),
                      ErrorCode::OffRoadEgo);
    CHECK_THROWS_CODE(generate_single(uni, ego_at(0, -1), h, road_for(Traffic::Unidirectional)),
                      ErrorCode::NegativeSpeed);
}

TEST_CASE("property: band bounds bracket the mean before clamping") {
    test_support::Gen g(31);
    for (int trial = 0; trial < 100; ++trial) {
        ScenarioModel m;
        m.d_thresh = 30.0;
        double y = -30.0;
        const int n = g.integer(2, 12);
        for (int i = 0; i < n; ++i) {
            m.keyframes.push_back({y, g.uniform(-1, 3), g.uniform(0, 0.8), g.uniform(5, 12),
                                   g.uniform(0, 2), 3});
            y += g.uniform(0.5, 8.0);
        }
        const BandCurves band = fit_band(band_knots(m));
        for (double q = -35.0; q <= y + 5.0; q += 0.25) {
            const BandSample s = sample_band(band, q);
            CHECK(s.lateral_min <= s.lateral_mean + 1e-12);
            CHECK(s.lateral_mean <= s.lateral_max + 1e-12);
            CHECK(s.speed_min <= s.speed_mean + 1e-12);
            CHECK(s.speed_mean <= s.speed_max + 1e-12);
        }
    }
}

TEST_CASE("single hazard envelopes from trained models keep clear of the hazard") {
    for (const auto& label : all_scenario_labels()) {
        const std::string name = label.to_string();
        CAPTURE(name);
        const ScenarioModel& m = trained(name);
        const RoadSpec road = road_for(label.traffic);
        for (double ego_y : {0.0, 20.0, 40.0, 55.0}) {
            const ConstraintEnvelope env = generate_single(m, ego_at(ego_y, 12.0), hazard_for(label), road);
            check_envelope_invariants(env);
            check_clearance(env);
        }
    }
}

TEST_CASE("adapted trigger distance") {
    HazardDescriptor h1;
    h1.center = {-2.5, 0.0};
    h1.length = 8.0;
    HazardDescriptor h2 = h1;
    h2.center.y = 30.0;
    CHECK(adapted_d_thresh(h1, h2, 36.0) == -26.0);
    h2.center.y = 6.0;
    CHECK(adapted_d_thresh(h1, h2, 36.0) == -3.0);
    CHECK(adapted_d_thresh(h1, h1, 36.0) == 0.0);
    CHECK_THROWS_CODE(adapted_d_thresh(h2, h1, 36.0), ErrorCode::OrderViolation);
}

TEST_CASE("interaction test") {
    ScenarioModel m = toy_model(Traffic::Unidirectional, 0.2);
    m.d_thresh = 37.0;
    HazardDescriptor h1;
    h1.center = {-2.5, 0.0};
    h1.length = 8.0;
    HazardDescriptor h2 = h1;
    h2.center.y = 200.0;
    CHECK_FALSE(is_interacting(h1, h2, m, m, 10.0));
    h2.center.y = h1.box_end_y() + 20.0;
    CHECK(is_interacting(h1, h2, m, m, 10.0));
    // Trigger point exactly at the release margin (box end + 2 s at 10 m/s).
    h2.center.y = h1.box_end_y() + 20.0 + 37.0;
    CHECK_FALSE(is_interacting(h1, h2, m, m, 10.0));
    h2.center.y -= 1e-9;
    CHECK(is_interacting(h1, h2, m, m, 10.0));
}

TEST_CASE("multi: one hazard is exactly the single-hazard envelope") {
    const ScenarioModel& m = trained("uni/large/near");
    const ScenarioLabel label = m.label;
    const RoadSpec road = road_for(label.traffic);
    const HazardDescriptor h = hazard_for(label);
    const std::vector<ScenarioModel> models{m};
    const std::vector<HazardDescriptor> hazards{h};
    const EgoState ego = ego_at(25.0, 11.0);
    CHECK(generate_multi(models, ego, hazards, road) == generate_single(m, ego, h, road));
}

TEST_CASE("multi: disjoint identical hazards merge at the first box end") {
    const ScenarioModel& m = trained("uni/large/near");
    const RoadSpec road = road_for(Traffic::Unidirectional);
    const HazardDescriptor h1 = hazard_for(m.label, 60.0);
    const HazardDescriptor h2 = hazard_for(m.label, 90.0);
    const std::vector<ScenarioModel> models{m, m};
    const std::vector<HazardDescriptor> hazards{h1, h2};
    const EgoState ego = ego_at(30.0, 15.0);
    const ConstraintEnvelope env = generate_multi(models, ego, hazards, road);

    REQUIRE(env.junctions.size() == 1);
    CHECK(env.junctions[0].y == h1.box_end_y());
    CHECK(env.junctions[0].kind == JunctionKind::DisjointBoxes);

    // Oracle: one fit over the hand-merged knot set.
    const BandKnots a = band_knots(m, h1.center);
    const BandKnots b = band_knots(m, h2.center);
    const auto merge = [&](const std::vector<Knot>& ka, const std::vector<Knot>& kb) {
        std::vector<Knot> out;
        for (const auto& k : ka) {
            if (k.y < h1.box_end_y()) out.push_back(k);
        }
        for (const auto& k : kb) {
            if (k.y >= h1.box_end_y()) out.push_back(k);
        }
        return fit_natural_cubic(out);
    };
    const CubicSpline upper = merge(a.lateral_upper, b.lateral_upper);
    const CubicSpline lower = merge(a.lateral_lower, b.lateral_lower);
    for (const auto& p : env.points) {
        if (p.y < upper.min_y() || p.y > upper.max_y()) continue;
        const double hi = std::clamp(std::max(upper(p.y), lower(p.y)), road.right_limit, road.left_limit);
        const double lo = std::clamp(std::min(upper(p.y), lower(p.y)), road.right_limit, road.left_limit);
        CHECK(p.lateral_max == hi);
        CHECK(p.lateral_min == lo);
    }
    // Before the junction the first model alone, after it the second.
    const CubicSpline first = fit_natural_cubic(a.lateral_upper);
    const CubicSpline second = fit_natural_cubic(b.lateral_upper);
    CHECK(upper(a.lateral_upper.front().y) == doctest::Approx(first(a.lateral_upper.front().y)));
    CHECK(upper(b.lateral_upper.back().y) == doctest::Approx(second(b.lateral_upper.back().y)));

    // Smooth across the junction.
    const double j = h1.box_end_y();
    for (int order : {1, 2}) {
        const double l = upper.derivative(j, order, true);
        const double r = upper.derivative(j, order, false);
        CHECK(std::abs(l - r) <= 1e-6 * std::max({1.0, std::abs(l), std::abs(r)}));
    }
    check_envelope_invariants(env);
    check_clearance(env);
}

TEST_CASE("multi: overlapping boxes merge at the center average") {
    const ScenarioModel& m = trained("bi/moderate/near");
    const RoadSpec road = road_for(Traffic::Bidirectional);
    const HazardDescriptor h1 = hazard_for(m.label, 60.0);
    const HazardDescriptor h2 = hazard_for(m.label, h1.center.y + h1.length - 1.0);
    const std::vector<ScenarioModel> models{m, m};
    const std::vector<HazardDescriptor> hazards{h1, h2};
    const ConstraintEnvelope env = generate_multi(models, ego_at(40.0, 10.0), hazards, road);
    REQUIRE(env.junctions.size() == 1);
    CHECK(env.junctions[0].y == (h1.center.y + h2.center.y) / 2.0);
    CHECK(env.junctions[0].kind == JunctionKind::OverlappingBoxes);
    check_envelope_invariants(env);
}

TEST_CASE("multi: three hazards on a bidirectional road") {
    const ScenarioModel& near = trained("bi/large/near");
    const ScenarioModel& far = trained("bi/moderate/far");
    const RoadSpec road = road_for(Traffic::Bidirectional);
    const std::vector<ScenarioModel> models{near, far, near};
    const std::vector<HazardDescriptor> hazards{hazard_for(near.label, 60.0),
                                                hazard_for(far.label, 78.0),
                                                hazard_for(near.label, 95.0)};
    const ConstraintEnvelope env = generate_multi(models, ego_at(40.0, 14.0), hazards, road);
    CHECK(env.hazards.size() == 3);
    CHECK(env.junctions.size() == 2);
    check_envelope_invariants(env);
    check_clearance(env);
    for (const auto& p : env.points) CHECK(p.lateral_max <= road.own_lane_left());
}

TEST_CASE("multi: isolated hazards are treated separately") {
    const ScenarioModel& m = trained("bi/moderate/far");
    const RoadSpec road = road_for(Traffic::Bidirectional);
    const HazardDescriptor h1 = hazard_for(m.label, 60.0);
    const HazardDescriptor h2 = hazard_for(m.label, 260.0);
    const std::vector<ScenarioModel> models{m, m};
    const std::vector<HazardDescriptor> hazards{h1, h2};
    const EgoState ego = ego_at(40.0, 60.0);
    const ConstraintEnvelope env = generate_multi(models, ego, hazards, road);
    CHECK(env.junctions.empty());
    const ConstraintEnvelope first = generate_single(m, ego, h1, road);
    for (std::size_t i = 0; i < env.points.size(); ++i) {
        if (env.points[i].y >= h2.center.y - m.d_thresh) break;
        CHECK(env.points[i] == first.points[i]);
    }
    const auto in_second = std::find_if(env.points.begin(), env.points.end(),
                                        [&](const EnvelopePoint& p) { return p.y == h2.center.y; });
    REQUIRE(in_second != env.points.end());
    const ConstraintEnvelope second = generate_single(m, ego, h2, road);
    CHECK(*in_second == second.points[static_cast<std::size_t>(in_second - env.points.begin())]);
}

TEST_CASE("multi: errors") {
    const ScenarioModel& m = trained("uni/moderate/near");
    const RoadSpec road = road_for(Traffic::Unidirectional);
    const HazardDescriptor h1 = hazard_for(m.label, 60.0);
    HazardDescriptor beside = h1;
    beside.center.x -= 3.0;
    const std::vector<ScenarioModel> two{m, m};
    CHECK_THROWS_CODE(generate_multi(two, ego_at(0, 10), std::vector<HazardDescriptor>{h1, beside}, road),
                      ErrorCode::UnsupportedOverlap);
    const HazardDescriptor later = hazard_for(m.label, 80.0);
    CHECK_THROWS_CODE(generate_multi(two, ego_at(0, 10), std::vector<HazardDescriptor>{later, h1}, road),
                      ErrorCode::OrderViolation);
    const ScenarioModel& bi = trained("bi/moderate/near");
    const std::vector<ScenarioModel> mixed{m, bi};
    CHECK_THROWS_CODE(generate_multi(mixed, ego_at(0, 10), std::vector<HazardDescriptor>{h1, later}, road),
                      ErrorCode::ModelRoadMismatch);
    CHECK_THROWS_CODE(generate_multi(two, ego_at(0, 10), std::vector<HazardDescriptor>{h1}, road),
                      ErrorCode::InvalidArgument);
}

TEST_CASE("envelope documents") {
    const ScenarioModel& m = trained("uni/large/far");
    const RoadSpec road = road_for(Traffic::Unidirectional);
    const std::vector<ScenarioModel> models{m, m};
    const std::vector<HazardDescriptor> hazards{hazard_for(m.label, 60.0), hazard_for(m.label, 85.0)};
    const ConstraintEnvelope env = generate_multi(models, ego_at(30.0, 12.0), hazards, road);
    CHECK(envelope_from_json_text(envelope_to_json_text(env)) == env);
    const std::string csv = envelope_to_csv_text(env);
    CHECK(csv.rfind("y,lat_min,lat_max,sublane_min,sublane_max,v_min,v_max\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == env.points.size() + 1);
    CHECK_THROWS_CODE(envelope_from_json_text("{\"format_version\": 2}"), ErrorCode::MalformedDocument);
    CHECK_THROWS_CODE(envelope_from_json_text("nope"), ErrorCode::MalformedDocument);
}
