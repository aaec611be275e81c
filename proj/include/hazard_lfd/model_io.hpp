#pragma once
// Scenario model document (JSON):
//   { "format_version": 1, "label": "uni/large/near", "d_thresh": ..,
//     "epsilon": .., "n_demos": ..,
//     "keyframes": [ { "y_mu", "lateral_mu", "lateral_sigma",
//                      "speed_mu", "speed_sigma", "support" }, ... ] }

#include <filesystem>
#include <string>

#include "hazard_lfd/keyframe.hpp"

namespace hazard_lfd {

inline constexpr int kModelFormatVersion = 1;

[[nodiscard]] std::string model_to_json_text(const ScenarioModel& model);
/// Throws MalformedDocument on missing or mistyped fields, or a model that
/// fails validation.
[[nodiscard]] ScenarioModel model_from_json_text(const std::string& text);

void write_model(const std::filesystem::path& path, const ScenarioModel& model);
[[nodiscard]] ScenarioModel read_model(const std::filesystem::path& path);

}  // namespace hazard_lfd
