#include "hazard_lfd/trajectory_csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <vector>

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"

namespace hazard_lfd {

namespace {

constexpr std::array<std::string_view, 6> kColumns{"t", "x", "y", "heading", "vx", "vy"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

[[noreturn]] void fail(std::string_view source, std::size_t row, std::string_view what) {
    throw Error(ErrorCode::MalformedCsv,
                std::string(source) + " row " + std::to_string(row) + ": " + std::string(what));
}

}  // namespace

Trajectory parse_trajectory_csv(std::istream& in, std::string_view source) {
    std::string line;
    if (!std::getline(in, line)) fail(source, 1, "missing header row");

    std::array<std::size_t, kColumns.size()> column_of{};
    const auto header = split(line);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        bool found = false;
        for (std::size_t h = 0; h < header.size(); ++h) {
            if (header[h] == kColumns[c]) {
                column_of[c] = h;
                found = true;
                break;
            }
        }
        if (!found) fail(source, 1, "missing column '" + std::string(kColumns[c]) + "'");
    }

    std::vector<Frame> frames;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        std::array<double, kColumns.size()> values{};
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            if (column_of[c] >= cells.size()) {
                fail(source, row, "missing value for column '" + std::string(kColumns[c]) + "'");
            }
            const auto v = parse_number(cells[column_of[c]]);
            if (!v) {
                fail(source, row, "column '" + std::string(kColumns[c]) + "' is not a number");
            }
            values[c] = *v;
        }
        frames.push_back({values[0], values[1], values[2], values[3], values[4], values[5]});
    }
    try {
        return Trajectory(std::move(frames), FrameKind::World);
    } catch (const Error& e) {
        fail(source, row, e.what());
    }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedCsv, "cannot open " + path.string());
    return parse_trajectory_csv(in, path.string());
}

std::string format_trajectory_csv(const Trajectory& traj) {
    std::string out = "t,x,y,heading,vx,vy\n";
    for (const Frame& f : traj) {
        out += format_double(f.t);
        for (double v : {f.x, f.y, f.heading, f.vx, f.vy}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    write_file_atomic(path, format_trajectory_csv(traj));
}

}  // namespace hazard_lfd
