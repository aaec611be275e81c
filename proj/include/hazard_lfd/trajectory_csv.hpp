#pragma once
// Trajectory CSV: header row naming the columns t,x,y,heading,vx,vy (any
// order, extra columns ignored), one world-frame frame per row, SI units.

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "hazard_lfd/geometry.hpp"

namespace hazard_lfd {

/// Throws Error(MalformedCsv) naming the offending row and column.
[[nodiscard]] Trajectory parse_trajectory_csv(std::istream& in, std::string_view source = "<stream>");
[[nodiscard]] Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Canonical column order, shortest round-trip number text.
[[nodiscard]] std::string format_trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

}  // namespace hazard_lfd
