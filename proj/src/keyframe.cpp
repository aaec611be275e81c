#include "hazard_lfd/keyframe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hazard_lfd/dtw.hpp"
#include "hazard_lfd/error.hpp"
#include "hazard_lfd/spline.hpp"

namespace hazard_lfd {

void ScenarioModel::validate() const {
    if (!(d_thresh > 0.0)) throw Error(ErrorCode::InvalidArgument, "d_thresh must be positive");
    if (keyframes.size() < 2) throw Error(ErrorCode::InvalidArgument, "model needs 2+ key-frames");
    for (std::size_t i = 0; i < keyframes.size(); ++i) {
        const auto& k = keyframes[i];
        if (!(k.lateral_sigma >= 0.0) || !(k.speed_sigma >= 0.0) || k.support < 1) {
            throw Error(ErrorCode::InvalidArgument,
                        "key-frame " + std::to_string(i) + " has negative sigma or no support");
        }
        if (i > 0 && !(k.y_mu > keyframes[i - 1].y_mu)) {
            throw Error(ErrorCode::InvalidArgument, "key-frame y_mu must strictly increase");
        }
    }
}

ExtractionTrace trace_keyframe_extraction(const Trajectory& traj, double epsilon) {
    if (traj.kind() != FrameKind::HazardCentric) {
        throw Error(ErrorCode::WrongFrameKind, "key-frame extraction expects hazard-centric input");
    }
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    const std::size_t n = traj.size();
    if (n < 2) throw Error(ErrorCode::TooShort, "need at least 2 frames");

    std::vector<Knot> channel(n);
    for (std::size_t i = 0; i < n; ++i) {
        channel[i] = {traj[i].y, traj[i].x};
        if (i > 0 && !(channel[i].y > channel[i - 1].y)) {
            throw Error(ErrorCode::NonMonotoneY,
                        "longitudinal position reverses at frame " + std::to_string(i));
        }
    }

    ExtractionTrace trace;
    trace.indices = {0, n - 1};
    std::vector<Knot> knots;
    while (true) {
        knots.clear();
        for (std::size_t i : trace.indices) knots.push_back(channel[i]);
        const CubicSpline spline = fit_natural_cubic(knots);
        const MaxError worst = max_error_point(spline, channel);
        trace.max_errors.push_back(worst.error);
        if (worst.error < epsilon) break;
        const auto pos = std::lower_bound(trace.indices.begin(), trace.indices.end(), worst.index);
        if (pos != trace.indices.end() && *pos == worst.index) break;
        trace.indices.insert(pos, worst.index);
    }
    return trace;
}

std::vector<KeyFrame> extract_keyframes(const Trajectory& traj, double epsilon) {
    const ExtractionTrace trace = trace_keyframe_extraction(traj, epsilon);
    std::vector<KeyFrame> out;
    out.reserve(trace.indices.size());
    for (std::size_t i : trace.indices) out.push_back({traj[i].y, traj[i].x, traj[i].speed()});
    return out;
}

Alignment align_demonstrations(std::span<const std::vector<KeyFrame>> demos) {
    if (demos.size() < 2) throw Error(ErrorCode::TooFewDemos, "need at least 2 demonstrations");
    for (std::size_t d = 0; d < demos.size(); ++d) {
        if (demos[d].size() < 2) {
            throw Error(ErrorCode::TooShort, "demonstration " + std::to_string(d) +
                                                 " has fewer than 2 key-frames");
        }
    }

    std::vector<std::size_t> counts;
    counts.reserve(demos.size());
    for (const auto& d : demos) counts.push_back(d.size());
    std::vector<std::size_t> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t median = sorted[(sorted.size() - 1) / 2];

    Alignment out;
    out.reference = static_cast<std::size_t>(
        std::distance(counts.begin(), std::find(counts.begin(), counts.end(), median)));

    const auto& ref = demos[out.reference];
    std::vector<double> ref_lateral;
    for (const auto& k : ref) ref_lateral.push_back(k.lateral);

    out.groups.resize(ref.size());
    std::vector<double> lateral;
    for (std::size_t d = 0; d < demos.size(); ++d) {
        if (d == out.reference) {
            for (std::size_t j = 0; j < ref.size(); ++j) out.groups[j].push_back({d, ref[j]});
            continue;
        }
        lateral.clear();
        for (const auto& k : demos[d]) lateral.push_back(k.lateral);
        const DtwResult warp = dtw_align(lateral, ref_lateral);
        for (const auto& [i, j] : warp.path) out.groups[j].push_back({d, demos[d][i]});
    }
    return out;
}

std::vector<ClusteredKeyFrame> cluster_keyframes(std::span<const std::vector<GroupMember>> groups) {
    struct Sample {
        double y, lateral, speed;
    };
    // Identical values give their own value and a zero spread exactly,
    // rather than a rounding residue.
    const auto mean_sd = [](const std::vector<Sample>& s, auto field) {
        const double n = static_cast<double>(s.size());
        if (std::all_of(s.begin(), s.end(), [&](const Sample& v) { return field(v) == field(s.front()); })) {
            return std::pair{field(s.front()), 0.0};
        }
        double mean = 0.0;
        for (const auto& v : s) mean += field(v);
        mean /= n;
        if (s.size() < 2) return std::pair{mean, 0.0};
        double ss = 0.0;
        for (const auto& v : s) ss += (field(v) - mean) * (field(v) - mean);
        return std::pair{mean, std::sqrt(ss / (n - 1.0))};
    };

    std::vector<ClusteredKeyFrame> out;
    out.reserve(groups.size());
    std::vector<Sample> per_demo;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& group = groups[g];
        if (group.empty()) throw Error(ErrorCode::EmptyGroup, "group " + std::to_string(g) + " is empty");

        // Collapse members of the same demonstration into one sample.
        std::vector<GroupMember> members(group.begin(), group.end());
        std::stable_sort(members.begin(), members.end(),
                         [](const GroupMember& a, const GroupMember& b) { return a.demo < b.demo; });
        per_demo.clear();
        for (std::size_t i = 0; i < members.size();) {
            std::vector<Sample> own;
            std::size_t j = i;
            for (; j < members.size() && members[j].demo == members[i].demo; ++j) {
                own.push_back({members[j].frame.y, members[j].frame.lateral, members[j].frame.speed});
            }
            per_demo.push_back({mean_sd(own, [](const Sample& v) { return v.y; }).first,
                                mean_sd(own, [](const Sample& v) { return v.lateral; }).first,
                                mean_sd(own, [](const Sample& v) { return v.speed; }).first});
            i = j;
        }

        ClusteredKeyFrame c;
        c.y_mu = mean_sd(per_demo, [](const Sample& s) { return s.y; }).first;
        std::tie(c.lateral_mu, c.lateral_sigma) =
            mean_sd(per_demo, [](const Sample& s) { return s.lateral; });
        std::tie(c.speed_mu, c.speed_sigma) = mean_sd(per_demo, [](const Sample& s) { return s.speed; });
        c.support = per_demo.size();
        out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.y_mu < b.y_mu; });
    // Coincident means would break the spline's strictly increasing abscissae.
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return !(b.y_mu > a.y_mu); }),
              out.end());
    return out;
}

std::optional<double> detect_onset(const Trajectory& traj, double lane_center_lateral,
                                   const TrainingParams& params) {
    const auto frames = traj.frames();
    const auto deviates = [&](const Frame& f) {
        return std::abs(f.x - lane_center_lateral) > params.deviation_threshold;
    };
    constexpr double slack = 1e-9;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (!deviates(frames[i])) continue;
        const double window_end = frames[i].y + params.persistence;
        if (frames.back().y < window_end - slack) return std::nullopt;
        bool held = true;
        for (std::size_t j = i + 1; j < frames.size() && frames[j].y <= window_end + slack; ++j) {
            if (!deviates(frames[j])) {
                held = false;
                break;
            }
        }
        if (held) return frames[i].y;
    }
    return std::nullopt;
}

double estimate_d_thresh(std::span<const Trajectory> demos, double lane_center_lateral,
                         const TrainingParams& params) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& demo : demos) {
        if (const auto onset = detect_onset(demo, lane_center_lateral, params)) {
            sum += -*onset;
            ++count;
        }
    }
    if (count == 0) throw Error(ErrorCode::NoBehaviorDetected, "no demonstration deviates");
    return sum / static_cast<double>(count);
}

TrainingResult train_scenario_model(std::span<const Trajectory> demos,
                                    const HazardDescriptor& hazard, const RoadSpec& road,
                                    const ScenarioLabel& label, const TrainingParams& params,
                                    double road_heading) {
    hazard.validate();
    road.validate();
    const double lane_center = lane_center_lateral(hazard, road_heading);

    TrainingResult result;
    std::vector<Trajectory> good;
    for (std::size_t d = 0; d < demos.size(); ++d) {
        Trajectory local = to_hazard_centric(demos[d], hazard, road_heading);
        const bool on_road = std::all_of(local.begin(), local.end(), [&](const Frame& f) {
            const double offset = f.x - lane_center;
            return offset >= road.right_limit && offset <= road.left_limit;
        });
        if (on_road) {
            good.push_back(std::move(local));
        } else {
            result.rejected.push_back(d);
        }
    }
    if (good.size() < 2) {
        throw Error(ErrorCode::InsufficientDemos,
                    std::to_string(good.size()) + " usable demonstration(s), need 2");
    }

    const double d_thresh = estimate_d_thresh(good, lane_center, params);

    std::vector<std::vector<KeyFrame>> keyframes;
    for (const auto& demo : good) {
        std::vector<Frame> active;
        for (const Frame& f : demo) {
            if (f.y >= -d_thresh) active.push_back(f);
        }
        if (active.size() < 2) continue;
        keyframes.push_back(
            extract_keyframes(Trajectory(std::move(active), FrameKind::HazardCentric), params.epsilon));
    }
    if (keyframes.size() < 2) {
        throw Error(ErrorCode::InsufficientDemos, "fewer than 2 demonstrations reach the trigger");
    }

    const Alignment alignment = align_demonstrations(keyframes);
    ScenarioModel& model = result.model;
    model.label = label;
    model.d_thresh = d_thresh;
    model.keyframes = cluster_keyframes(alignment.groups);
    model.n_demos = keyframes.size();
    model.epsilon = params.epsilon;
    model.validate();
    return result;
}

}  // namespace hazard_lfd
