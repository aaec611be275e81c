#pragma once
// Binned speed / sub-lane measures and scenario contrasts.

#include <string>
#include <vector>

#include "hazard_lfd/config.hpp"
#include "hazard_lfd/geometry.hpp"
#include "hazard_lfd/stats.hpp"

namespace hazard_lfd {

struct BinnedSeries {
    std::vector<double> bin_start;
    std::vector<double> mean_value;
    std::vector<std::size_t> sample_count;

    [[nodiscard]] std::size_t size() const noexcept { return bin_start.size(); }
    /// Unweighted mean of the bin means.
    [[nodiscard]] double mean_of_bins() const;
};

struct BinnedMeasures {
    BinnedSeries speed;
    BinnedSeries sub_lane;
};

/// Frames with y < -d_thresh are dropped; the rest go to bins
/// [k * bin_width, (k + 1) * bin_width) by hazard-centric y. Sub-lanes are
/// counted from the right road edge using the offset from the lane center.
/// Throws WrongFrameKind, EmptyAfterThreshold.
[[nodiscard]] BinnedMeasures bin_measures(const Trajectory& hazard_centric, const RoadSpec& road,
                                          double d_thresh, double lane_center_lateral,
                                          double bin_width = 0.5);

/// Demonstrations of one scenario. Demo i of every population is assumed
/// to come from the same driver.
struct Population {
    std::string name;
    ScenarioLabel label;
    HazardDescriptor hazard;
    RoadSpec road;
    /// World frame, road heading 0.
    std::vector<Trajectory> demos;
};

struct ReportRow {
    std::string contrast;
    /// "speed" or "sub_lane".
    std::string variable;
    TestResult result;
    bool significant{false};
};

struct SignificanceReport {
    std::vector<ReportRow> rows;
    double alpha{0.05};
};

/// Both tests on per-demo bin-averaged speed and sub-lane for every pair of
/// populations. Identical samples report p = 1. Throws
/// CrossTrafficComparison when populations differ in traffic, LengthMismatch
/// when their sizes differ.
[[nodiscard]] SignificanceReport significance_report(std::span<const Population> populations,
                                                     const AnalysisParams& analysis = {},
                                                     const TrainingParams& training = {});

[[nodiscard]] std::string report_to_csv_text(const SignificanceReport& report);
[[nodiscard]] std::string report_to_text(const SignificanceReport& report);

}  // namespace hazard_lfd
