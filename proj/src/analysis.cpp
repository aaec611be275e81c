#include "hazard_lfd/analysis.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"
#include "hazard_lfd/keyframe.hpp"

namespace hazard_lfd {

namespace {

struct Accumulator {
    double speed{0.0};
    double sub_lane{0.0};
    std::size_t count{0};
};

std::string contrast_name(const Population& a, const Population& b) {
    std::string vars;
    if (a.label.size != b.label.size) vars = "size";
    if (a.label.closeness != b.label.closeness) vars += vars.empty() ? "closeness" : "+closeness";
    if (vars.empty()) vars = "none";
    const auto display = [](const Population& p) {
        return p.name.empty() ? p.label.to_string() : p.name;
    };
    return vars + ": " + display(a) + " vs " + display(b);
}

// Flat p = 1 row for samples that cannot be told apart.
TestResult run_test(TestMethod method, const std::vector<double>& a, const std::vector<double>& b,
                    std::size_t exact_max_n) {
    try {
        if (method == TestMethod::PairedT) return paired_t_test(a, b);
        return wilcoxon_signed_rank(a, b, exact_max_n);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AllZeroDifferences) {
            return {0.0, 1.0, 0, TestMethod::WilcoxonExact};
        }
        if (e.code() != ErrorCode::DegenerateSample) throw;
        const double shift = a.front() - b.front();
        if (shift == 0.0) return {0.0, 1.0, a.size(), TestMethod::PairedT};
        return {std::copysign(INFINITY, shift), 0.0, a.size(), TestMethod::PairedT};
    }
}

}  // namespace

double BinnedSeries::mean_of_bins() const {
    if (mean_value.empty()) throw Error(ErrorCode::EmptyAfterThreshold, "no bins");
    return std::accumulate(mean_value.begin(), mean_value.end(), 0.0) /
           static_cast<double>(mean_value.size());
}

BinnedMeasures bin_measures(const Trajectory& traj, const RoadSpec& road, double d_thresh,
                            double lane_center_lateral, double bin_width) {
    if (traj.kind() != FrameKind::HazardCentric) {
        throw Error(ErrorCode::WrongFrameKind, "binning needs a hazard-centric trajectory");
    }
    if (!(bin_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
    std::map<long long, Accumulator> bins;
    for (const Frame& f : traj) {
        if (f.y < -d_thresh) continue;
        auto& acc = bins[static_cast<long long>(std::floor(f.y / bin_width))];
        acc.speed += f.speed();
        acc.sub_lane += static_cast<double>(sub_lane_index(f.x - lane_center_lateral, road));
        ++acc.count;
    }
    if (bins.empty()) {
        throw Error(ErrorCode::EmptyAfterThreshold,
                    "no frames past the trigger distance " + format_double(d_thresh));
    }
    BinnedMeasures out;
    for (const auto& [k, acc] : bins) {
        const double start = static_cast<double>(k) * bin_width;
        const double n = static_cast<double>(acc.count);
        out.speed.bin_start.push_back(start);
        out.speed.mean_value.push_back(acc.speed / n);
        out.speed.sample_count.push_back(acc.count);
        out.sub_lane.bin_start.push_back(start);
        out.sub_lane.mean_value.push_back(acc.sub_lane / n);
        out.sub_lane.sample_count.push_back(acc.count);
    }
    return out;
}

SignificanceReport significance_report(std::span<const Population> populations,
                                       const AnalysisParams& analysis,
                                       const TrainingParams& training) {
    for (const auto& p : populations) {
        if (p.label.traffic != populations.front().label.traffic) {
            throw Error(ErrorCode::CrossTrafficComparison,
                        "cannot compare " + populations.front().label.to_string() + " with " +
                            p.label.to_string() + ": traffic conditions differ");
        }
        if (p.demos.size() != populations.front().demos.size()) {
            throw Error(ErrorCode::LengthMismatch, "populations must have matching sizes");
        }
    }

    // Per-demo scalars: speed and sub-lane, each the mean of its bin means.
    std::vector<std::vector<double>> speed(populations.size());
    std::vector<std::vector<double>> sub_lane(populations.size());
    for (std::size_t k = 0; k < populations.size(); ++k) {
        const Population& pop = populations[k];
        const double lane_center = lane_center_lateral(pop.hazard, 0.0);
        std::vector<Trajectory> local;
        for (const auto& d : pop.demos) local.push_back(to_hazard_centric(d, pop.hazard, 0.0));
        const double d_thresh = estimate_d_thresh(local, lane_center, training);
        for (const auto& d : local) {
            const BinnedMeasures m =
                bin_measures(d, pop.road, d_thresh, lane_center, analysis.bin_width);
            speed[k].push_back(m.speed.mean_of_bins());
            sub_lane[k].push_back(m.sub_lane.mean_of_bins());
        }
    }

    SignificanceReport report;
    report.alpha = analysis.alpha;
    const auto exact_max = static_cast<std::size_t>(std::max(analysis.exact_max_n, 0));
    for (std::size_t i = 0; i < populations.size(); ++i) {
        for (std::size_t j = i + 1; j < populations.size(); ++j) {
            const std::string name = contrast_name(populations[i], populations[j]);
            for (const auto& [variable, values] :
                 {std::pair{"speed", &speed}, std::pair{"sub_lane", &sub_lane}}) {
                for (TestMethod m : {TestMethod::PairedT, TestMethod::WilcoxonExact}) {
                    const TestResult r = run_test(m, (*values)[i], (*values)[j], exact_max);
                    report.rows.push_back({name, variable, r, r.p_value < analysis.alpha});
                }
            }
        }
    }
    return report;
}

std::string report_to_csv_text(const SignificanceReport& report) {
    std::string out = "contrast,variable,test,statistic,p,n,significant\n";
    for (const auto& row : report.rows) {
        out += row.contrast + ',' + row.variable + ',' + std::string(to_string(row.result.method)) +
               ',' + format_double(row.result.statistic) + ',' + format_double(row.result.p_value) +
               ',' + std::to_string(row.result.n) + ',' + (row.significant ? "yes" : "no") + '\n';
    }
    return out;
}

std::string report_to_text(const SignificanceReport& report) {
    std::ostringstream out;
    std::size_t significant = 0;
    for (const auto& row : report.rows) {
        out << row.contrast << "  " << row.variable << "  " << to_string(row.result.method)
            << "  stat=" << format_double(row.result.statistic)
            << "  p=" << format_double(row.result.p_value) << "  n=" << row.result.n
            << (row.significant ? "  significant" : "") << '\n';
        if (row.significant) ++significant;
    }
    out << significant << " of " << report.rows.size() << " tests significant at alpha "
        << format_double(report.alpha) << '\n';
    return out.str();
}

}  // namespace hazard_lfd
