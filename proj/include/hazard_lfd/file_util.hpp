#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace hazard_lfd {

/// Shortest decimal text that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a digest, used for manifest checksums.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace hazard_lfd
