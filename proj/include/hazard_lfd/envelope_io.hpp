#pragma once
// Envelope documents.
//
// JSON: { "format_version": 1, "frame": "world", "horizon_m", "grid_spacing",
//         "ego": {..}, "road": {..}, "hazards": [..], "junctions": [..],
//         "points": [ { "y", "lat_min", "lat_max", "lat_mean", "sublane_min",
//                       "sublane_max", "v_min", "v_max", "v_mean" }, ... ] }
// CSV:  y,lat_min,lat_max,sublane_min,sublane_max,v_min,v_max

#include <filesystem>
#include <string>

#include "hazard_lfd/constraints.hpp"

namespace hazard_lfd {

inline constexpr int kEnvelopeFormatVersion = 1;

[[nodiscard]] std::string envelope_to_json_text(const ConstraintEnvelope& env);
/// Throws MalformedDocument.
[[nodiscard]] ConstraintEnvelope envelope_from_json_text(const std::string& text);
[[nodiscard]] std::string envelope_to_csv_text(const ConstraintEnvelope& env);

void write_envelope(const std::filesystem::path& json_path, const ConstraintEnvelope& env);
[[nodiscard]] ConstraintEnvelope read_envelope(const std::filesystem::path& path);

}  // namespace hazard_lfd
