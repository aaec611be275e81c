#include "hazard_lfd/calibration.hpp"

#include <cstdlib>

#include "json.hpp"

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"

namespace hazard_lfd {

using nlohmann::json;

namespace {

bool is_variable(std::string_view v) {
    return v == "moderate" || v == "large" || v == "near" || v == "far";
}

}  // namespace

const CalibrationRow& CalibrationTable::row(Traffic traffic, std::string_view variable) const {
    for (const auto& r : rows) {
        if (r.traffic == traffic && r.variable == variable) return r;
    }
    throw Error(ErrorCode::InvalidArgument, "no calibration row for " +
                                                std::string(to_string(traffic)) + "/" +
                                                std::string(variable));
}

const CalibrationTable& builtin_calibration() {
    static const CalibrationTable table{{
        {Traffic::Unidirectional, "moderate", 36.5, -5.56, false},
        {Traffic::Unidirectional, "large", 37.01, -5.01, false},
        {Traffic::Unidirectional, "near", 36.18, -0.36, false},
        {Traffic::Unidirectional, "far", 40.0, -13.17, true},
        {Traffic::Bidirectional, "moderate", 15.4, -10.92, false},
        {Traffic::Bidirectional, "large", 14.93, 0.01, false},
        {Traffic::Bidirectional, "near", 16.15, -2.72, false},
        {Traffic::Bidirectional, "far", 12.97, -8.06, false},
    }};
    return table;
}

CalibrationTable calibration_from_json_text(const std::string& text) {
    try {
        const json doc = json::parse(text);
        const int version = doc.at("format_version").get<int>();
        if (version != kCalibrationFormatVersion) {
            throw Error(ErrorCode::MalformedDocument,
                        "unsupported calibration format_version " + std::to_string(version));
        }
        CalibrationTable table;
        for (const auto& r : doc.at("rows")) {
            CalibrationRow row;
            row.traffic = parse_traffic(r.at("traffic").get<std::string>());
            row.variable = r.at("variable").get<std::string>();
            if (row.variable == "small") row.variable = "moderate";
            if (!is_variable(row.variable)) {
                throw Error(ErrorCode::MalformedDocument,
                            "unknown calibration variable '" + row.variable + "'");
            }
            row.d_thresh = r.at("d_thresh").get<double>();
            row.curvature_point = r.at("curvature_point").get<double>();
            row.censored = r.value("censored", false);
            if (!(row.d_thresh > 0.0)) {
                throw Error(ErrorCode::MalformedDocument, "calibration d_thresh must be positive");
            }
            table.rows.push_back(std::move(row));
        }
        for (Traffic t : {Traffic::Unidirectional, Traffic::Bidirectional}) {
            for (std::string_view v : {"moderate", "large", "near", "far"}) {
                (void)table.row(t, v);
            }
        }
        return table;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("calibration: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedDocument) throw;
        throw Error(ErrorCode::MalformedDocument, std::string("calibration: ") + e.what());
    }
}

CalibrationTable load_calibration(const std::filesystem::path& path) {
    return calibration_from_json_text(read_file(path));
}

CalibrationTable resolve_calibration(const std::string& configured) {
    if (const char* env = std::getenv(kCalibrationEnvVar.data()); env != nullptr && *env != '\0') {
        return load_calibration(env);
    }
    if (!configured.empty()) return load_calibration(configured);
    return builtin_calibration();
}

ScenarioCalibration default_calibration(const ScenarioLabel& label, const CalibrationTable& table) {
    const CalibrationRow& size = table.row(label.traffic, to_string(label.size));
    const CalibrationRow& place = table.row(label.traffic, to_string(label.closeness));
    return {label, (size.d_thresh + place.d_thresh) / 2.0,
            (size.curvature_point + place.curvature_point) / 2.0,
            size.censored || place.censored};
}

ScenarioCalibration marginal_calibration(Traffic traffic, std::string_view variable,
                                         const CalibrationTable& table) {
    const CalibrationRow& r = table.row(traffic, variable);
    ScenarioLabel label;
    label.traffic = traffic;
    if (variable == "moderate" || variable == "large") {
        label.size = parse_size(variable);
        label.closeness = Closeness::Near;
    } else {
        label.size = SizeClass::Moderate;
        label.closeness = parse_closeness(variable);
    }
    return {label, r.d_thresh, r.curvature_point, r.censored};
}

}  // namespace hazard_lfd
