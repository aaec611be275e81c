#include "hazard_lfd/envelope_io.hpp"

#include "json.hpp"

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"

namespace hazard_lfd {

using nlohmann::json;

namespace {

std::string_view to_string(JunctionKind kind) noexcept {
    return kind == JunctionKind::DisjointBoxes ? "disjoint" : "overlapping";
}

JunctionKind parse_junction_kind(const std::string& text) {
    if (text == "disjoint") return JunctionKind::DisjointBoxes;
    if (text == "overlapping") return JunctionKind::OverlappingBoxes;
    throw Error(ErrorCode::MalformedDocument, "unknown junction kind '" + text + "'");
}

}  // namespace

std::string envelope_to_json_text(const ConstraintEnvelope& env) {
    json doc;
    doc["format_version"] = kEnvelopeFormatVersion;
    doc["frame"] = "world";
    doc["horizon_m"] = env.horizon_m;
    doc["grid_spacing"] = env.grid_spacing;
    doc["ego"] = {{"x", env.ego.x},
                  {"y", env.ego.y},
                  {"heading", env.ego.heading},
                  {"speed", env.ego.speed},
                  {"sub_lane", env.ego.sub_lane}};
    doc["road"] = {{"lane_width", env.road.lane_width},
                   {"sub_lane_width", env.road.sub_lane_width},
                   {"traffic", hazard_lfd::to_string(env.road.traffic)},
                   {"left_limit", env.road.left_limit},
                   {"right_limit", env.road.right_limit}};
    json hazards = json::array();
    for (const auto& h : env.hazards) {
        hazards.push_back({{"center_x", h.center.x},
                           {"center_y", h.center.y},
                           {"length", h.length},
                           {"width", h.width},
                           {"size", hazard_lfd::to_string(h.size)},
                           {"closeness", hazard_lfd::to_string(h.closeness)}});
    }
    doc["hazards"] = std::move(hazards);
    json junctions = json::array();
    for (const auto& j : env.junctions) {
        junctions.push_back(
            {{"first", j.first}, {"second", j.second}, {"y", j.y}, {"kind", to_string(j.kind)}});
    }
    doc["junctions"] = std::move(junctions);
    json points = json::array();
    for (const auto& p : env.points) {
        points.push_back({{"y", p.y},
                          {"lat_min", p.lateral_min},
                          {"lat_max", p.lateral_max},
                          {"lat_mean", p.lateral_mean},
                          {"sublane_min", p.sub_lane_min},
                          {"sublane_max", p.sub_lane_max},
                          {"v_min", p.speed_min},
                          {"v_max", p.speed_max},
                          {"v_mean", p.speed_mean}});
    }
    doc["points"] = std::move(points);
    return doc.dump(2) + "\n";
}

ConstraintEnvelope envelope_from_json_text(const std::string& text) {
    try {
        const json doc = json::parse(text);
        const int version = doc.at("format_version").get<int>();
        if (version != kEnvelopeFormatVersion) {
            throw Error(ErrorCode::MalformedDocument,
                        "unsupported envelope format_version " + std::to_string(version));
        }
        ConstraintEnvelope env;
        env.horizon_m = doc.at("horizon_m").get<double>();
        env.grid_spacing = doc.at("grid_spacing").get<double>();
        const json& ego = doc.at("ego");
        env.ego = {ego.at("x").get<double>(), ego.at("y").get<double>(),
                   ego.at("heading").get<double>(), ego.at("speed").get<double>(),
                   ego.at("sub_lane").get<int>()};
        const json& road = doc.at("road");
        env.road.lane_width = road.at("lane_width").get<double>();
        env.road.sub_lane_width = road.at("sub_lane_width").get<double>();
        env.road.traffic = parse_traffic(road.at("traffic").get<std::string>());
        env.road.left_limit = road.at("left_limit").get<double>();
        env.road.right_limit = road.at("right_limit").get<double>();
        for (const auto& h : doc.at("hazards")) {
            HazardDescriptor hazard;
            hazard.center = {h.at("center_x").get<double>(), h.at("center_y").get<double>()};
            hazard.length = h.at("length").get<double>();
            hazard.width = h.at("width").get<double>();
            hazard.size = parse_size(h.at("size").get<std::string>());
            hazard.closeness = parse_closeness(h.at("closeness").get<std::string>());
            env.hazards.push_back(hazard);
        }
        for (const auto& j : doc.at("junctions")) {
            env.junctions.push_back({j.at("first").get<std::size_t>(),
                                     j.at("second").get<std::size_t>(), j.at("y").get<double>(),
                                     parse_junction_kind(j.at("kind").get<std::string>())});
        }
        for (const auto& p : doc.at("points")) {
            env.points.push_back({p.at("y").get<double>(), p.at("lat_min").get<double>(),
                                  p.at("lat_max").get<double>(), p.at("lat_mean").get<double>(),
                                  p.at("sublane_min").get<int>(), p.at("sublane_max").get<int>(),
                                  p.at("v_min").get<double>(), p.at("v_max").get<double>(),
                                  p.at("v_mean").get<double>()});
        }
        return env;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("envelope: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedDocument) throw;
        throw Error(ErrorCode::MalformedDocument, std::string("envelope: ") + e.what());
    }
}

std::string envelope_to_csv_text(const ConstraintEnvelope& env) {
    std::string out = "y,lat_min,lat_max,sublane_min,sublane_max,v_min,v_max\n";
    for (const auto& p : env.points) {
        out += format_double(p.y) + ',' + format_double(p.lateral_min) + ',' +
               format_double(p.lateral_max) + ',' + std::to_string(p.sub_lane_min) + ',' +
               std::to_string(p.sub_lane_max) + ',' + format_double(p.speed_min) + ',' +
               format_double(p.speed_max) + '\n';
    }
    return out;
}

void write_envelope(const std::filesystem::path& json_path, const ConstraintEnvelope& env) {
    write_file_atomic(json_path, envelope_to_json_text(env));
}

ConstraintEnvelope read_envelope(const std::filesystem::path& path) {
    return envelope_from_json_text(read_file(path));
}

}  // namespace hazard_lfd
