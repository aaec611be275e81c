#pragma once
// Per-scenario calibration constants for the demonstration generator.
//
// The measured table is marginal: one row per traffic condition and
// independent variable (moderate, large, near, far). A full scenario label
// combines its size row and its closeness row by averaging.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hazard_lfd/geometry.hpp"

namespace hazard_lfd {

inline constexpr int kCalibrationFormatVersion = 1;
inline constexpr std::string_view kCalibrationEnvVar = "HAZARD_LFD_CALIBRATION";

struct CalibrationRow {
    Traffic traffic{Traffic::Unidirectional};
    /// "moderate", "large", "near" or "far".
    std::string variable;
    double d_thresh{0.0};
    double curvature_point{0.0};
    /// The true value is at least d_thresh.
    bool censored{false};

    friend bool operator==(const CalibrationRow&, const CalibrationRow&) = default;
};

struct CalibrationTable {
    std::vector<CalibrationRow> rows;

    /// Throws InvalidArgument when the row is missing.
    [[nodiscard]] const CalibrationRow& row(Traffic traffic, std::string_view variable) const;

    friend bool operator==(const CalibrationTable&, const CalibrationTable&) = default;
};

struct ScenarioCalibration {
    ScenarioLabel label;
    double d_thresh_mu{0.0};
    double curvature_point_mu{0.0};
    bool censored{false};

    friend bool operator==(const ScenarioCalibration&, const ScenarioCalibration&) = default;
};

/// Compiled-in copy of data/calibration_v1.json.
[[nodiscard]] const CalibrationTable& builtin_calibration();

/// Throws MalformedDocument.
[[nodiscard]] CalibrationTable calibration_from_json_text(const std::string& text);
[[nodiscard]] CalibrationTable load_calibration(const std::filesystem::path& path);

/// Table from $HAZARD_LFD_CALIBRATION if set, else `configured` if non-empty,
/// else the builtin table.
[[nodiscard]] CalibrationTable resolve_calibration(const std::string& configured = {});

/// Average of the label's size row and closeness row.
[[nodiscard]] ScenarioCalibration default_calibration(
    const ScenarioLabel& label, const CalibrationTable& table = builtin_calibration());

/// One marginal row. Size rows are paired with near hazards and closeness
/// rows with moderate hazards to obtain a concrete scenario.
[[nodiscard]] ScenarioCalibration marginal_calibration(
    Traffic traffic, std::string_view variable,
    const CalibrationTable& table = builtin_calibration());

}  // namespace hazard_lfd
