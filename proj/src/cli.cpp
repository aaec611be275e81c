#include "hazard_lfd/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hazard_lfd/analysis.hpp"
#include "hazard_lfd/calibration.hpp"
#include "hazard_lfd/config.hpp"
#include "hazard_lfd/constraints.hpp"
#include "hazard_lfd/demogen.hpp"
#include "hazard_lfd/envelope_io.hpp"
#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"
#include "hazard_lfd/keyframe.hpp"
#include "hazard_lfd/model_io.hpp"
#include "hazard_lfd/svg_plot.hpp"
#include "hazard_lfd/trajectory_csv.hpp"

namespace hazard_lfd::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kManifestFormatVersion = 1;

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    bool to_stdout{false};
};

struct Context {
    RunConfig config;
    CalibrationTable calibration;
    fs::path out_dir;
    bool to_stdout{false};
    std::ostream& out;
    std::ostream& err;

    /// Progress messages; kept off stdout when stdout carries data.
    std::ostream& info() { return to_stdout ? err : out; }

    void emit(const fs::path& path, const std::string& content) {
        write_file_atomic(path, content);
        if (to_stdout) out << content;
    }
};

ExitCode exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InsufficientDemos: return kInsufficientDemos;
        case ErrorCode::MalformedCsv: return kMalformedCsv;
        case ErrorCode::UnsupportedOverlap: return kUnsupportedOverlap;
        case ErrorCode::ModelRoadMismatch: return kModelRoadMismatch;
        case ErrorCode::InfeasibleProfile: return kInfeasibleProfile;
        case ErrorCode::CrossTrafficComparison: return kCrossTraffic;
        default: return kFailure;
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double parse_number(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw Error(ErrorCode::InvalidArgument, what + ": '" + text + "' is not a number");
    }
    return v;
}

json hazard_to_json(const HazardDescriptor& h) {
    return {{"center_x", h.center.x}, {"center_y", h.center.y},
            {"length", h.length},     {"width", h.width},
            {"size", to_string(h.size)}, {"closeness", to_string(h.closeness)}};
}

HazardDescriptor hazard_from_json(const json& j) {
    HazardDescriptor h;
    h.center = {j.at("center_x").get<double>(), j.at("center_y").get<double>()};
    h.length = j.at("length").get<double>();
    h.width = j.at("width").get<double>();
    h.size = parse_size(j.at("size").get<std::string>());
    h.closeness = parse_closeness(j.at("closeness").get<std::string>());
    return h;
}

json road_to_json(const RoadSpec& r) {
    return {{"lane_width", r.lane_width},   {"sub_lane_width", r.sub_lane_width},
            {"traffic", to_string(r.traffic)}, {"left_limit", r.left_limit},
            {"right_limit", r.right_limit}};
}

RoadSpec road_from_json(const json& j) {
    RoadSpec r;
    r.lane_width = j.at("lane_width").get<double>();
    r.sub_lane_width = j.at("sub_lane_width").get<double>();
    r.traffic = parse_traffic(j.at("traffic").get<std::string>());
    r.left_limit = j.at("left_limit").get<double>();
    r.right_limit = j.at("right_limit").get<double>();
    return r;
}

/// "size/closeness[@center_y]" with default geometry, or
/// "center_x,center_y,length,width,size,closeness".
HazardDescriptor parse_hazard(const std::string& text, const RunConfig& config,
                              const RoadSpec& road) {
    if (text.find(',') == std::string::npos) {
        const auto at = text.find('@');
        const auto parts = split(text.substr(0, at), '/');
        if (parts.size() != 2) {
            throw Error(ErrorCode::InvalidArgument,
                        "hazard '" + text + "': expected size/closeness[@y]");
        }
        HazardDescriptor h =
            config.hazard.make(parse_size(parts[0]), parse_closeness(parts[1]), road);
        if (at != std::string::npos) h.center.y = parse_number(text.substr(at + 1), "hazard y");
        return h;
    }
    const auto parts = split(text, ',');
    if (parts.size() != 6) {
        throw Error(ErrorCode::InvalidArgument,
                    "hazard '" + text + "': expected center_x,center_y,length,width,size,closeness");
    }
    HazardDescriptor h;
    h.center = {parse_number(parts[0], "hazard center_x"), parse_number(parts[1], "hazard center_y")};
    h.length = parse_number(parts[2], "hazard length");
    h.width = parse_number(parts[3], "hazard width");
    h.size = parse_size(parts[4]);
    h.closeness = parse_closeness(parts[5]);
    h.validate();
    return h;
}

EgoState parse_ego(const std::string& text, const RoadSpec& road) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) {
        throw Error(ErrorCode::InvalidArgument, "ego '" + text + "': expected x,y,heading,speed");
    }
    EgoState ego;
    ego.x = parse_number(parts[0], "ego x");
    ego.y = parse_number(parts[1], "ego y");
    ego.heading = parse_number(parts[2], "ego heading");
    ego.speed = parse_number(parts[3], "ego speed");
    if (ego.x < road.right_limit || ego.x > road.left_limit) {
        throw Error(ErrorCode::OffRoadEgo, "ego lateral " + parts[0] + " is off the road");
    }
    ego.sub_lane = sub_lane_index(ego.x, road);
    return ego;
}

std::vector<fs::path> csv_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw Error(ErrorCode::InvalidArgument, dir.string() + " is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::optional<json> read_manifest(const fs::path& dir) {
    const fs::path path = dir / "manifest.json";
    if (!fs::exists(path)) return std::nullopt;
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, path.string() + ": " + e.what());
    }
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// ─── Commands ────────────────────────────────────────────────────────────

struct SimulateArgs {
    std::string label;
    std::string marginal;
    std::size_t count{24};
};

int cmd_simulate(Context& ctx, const SimulateArgs& args) {
    if (args.label.empty() == args.marginal.empty()) {
        throw Error(ErrorCode::InvalidArgument, "simulate needs exactly one of --label or --marginal");
    }
    ScenarioCalibration cal;
    if (!args.label.empty()) {
        cal = default_calibration(ScenarioLabel::parse(args.label), ctx.calibration);
    } else {
        const auto parts = split(args.marginal, '/');
        if (parts.size() != 2) {
            throw Error(ErrorCode::InvalidArgument,
                        "marginal '" + args.marginal + "': expected traffic/variable");
        }
        const std::string variable = parts[1] == "small" ? "moderate" : parts[1];
        cal = marginal_calibration(parse_traffic(parts[0]), variable, ctx.calibration);
    }
    const RunConfig& cfg = ctx.config;
    const RoadSpec road = cfg.road.road(cal.label.traffic);
    const HazardDescriptor hazard = cfg.hazard.make(cal.label.size, cal.label.closeness, road);
    const auto members =
        generate_population(args.count, cal, hazard, road, cfg.seed, cfg.demogen);

    json demos = json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "demo_%03zu.csv", i);
        const std::string csv = format_trajectory_csv(members[i].trajectory);
        write_file_atomic(ctx.out_dir / name, csv);
        const DriverProfile& p = members[i].profile;
        demos.push_back({{"file", name},
                         {"seed", members[i].seed},
                         {"style", to_string(p.style)},
                         {"d_thresh", p.d_thresh},
                         {"peak_deviation", p.peak_deviation},
                         {"curvature_point", p.curvature_point},
                         {"return_behavior", to_string(p.return_behavior)},
                         {"approach_speed", p.approach_speed},
                         {"slowdown_factor", p.slowdown_factor},
                         {"lateral_noise_sigma", p.lateral_noise_sigma},
                         {"d_thresh_jitter_sigma", p.d_thresh_jitter_sigma},
                         {"checksum", hex64(fnv1a64(csv))}});
    }
    json manifest;
    manifest["format_version"] = kManifestFormatVersion;
    manifest["label"] = cal.label.to_string();
    manifest["calibration"] = {{"d_thresh_mu", cal.d_thresh_mu},
                               {"curvature_point_mu", cal.curvature_point_mu},
                               {"censored", cal.censored},
                               {"marginal", args.marginal}};
    manifest["master_seed"] = cfg.seed;
    manifest["count"] = members.size();
    manifest["road"] = road_to_json(road);
    manifest["hazard"] = hazard_to_json(hazard);
    manifest["demos"] = std::move(demos);
    ctx.emit(ctx.out_dir / "manifest.json", manifest.dump(2) + "\n");
    ctx.info() << "simulated " << members.size() << " demos for " << cal.label.to_string()
               << " (d_thresh " << format_double(cal.d_thresh_mu) << " m, seed " << cfg.seed
               << ") into " << ctx.out_dir.string() << '\n';
    return kOk;
}

struct TrainArgs {
    std::string demo_dir;
    std::string label;
    std::string hazard;
};

int cmd_train(Context& ctx, const TrainArgs& args) {
    const fs::path dir = args.demo_dir;
    const auto files = csv_files(dir);
    const auto manifest = read_manifest(dir);

    std::optional<ScenarioLabel> label;
    if (!args.label.empty()) {
        label = ScenarioLabel::parse(args.label);
    } else if (manifest) {
        label = ScenarioLabel::parse(manifest->at("label").get<std::string>());
    }
    if (!label) {
        throw Error(ErrorCode::InvalidArgument,
                    "train needs --label when the demo directory has no manifest.json");
    }
    RoadSpec road = ctx.config.road.road(label->traffic);
    if (manifest && manifest->contains("road") && args.label.empty()) {
        road = road_from_json(manifest->at("road"));
    }
    HazardDescriptor hazard = ctx.config.hazard.make(label->size, label->closeness, road);
    if (!args.hazard.empty()) {
        hazard = parse_hazard(args.hazard, ctx.config, road);
    } else if (manifest && manifest->contains("hazard")) {
        hazard = hazard_from_json(manifest->at("hazard"));
    }

    std::vector<Trajectory> demos;
    demos.reserve(files.size());
    for (const auto& f : files) demos.push_back(read_trajectory_csv(f));

    const TrainingResult result =
        train_scenario_model(demos, hazard, road, *label, ctx.config.training);
    ctx.emit(ctx.out_dir / "model.json", model_to_json_text(result.model));

    auto& info = ctx.info();
    info << "demos: " << demos.size() << '\n' << "rejected:";
    if (result.rejected.empty()) info << " none";
    for (std::size_t i : result.rejected) info << ' ' << files[i].filename().string();
    info << '\n'
         << "d_thresh: " << format_double(result.model.d_thresh) << " m\n"
         << "key-frames: " << result.model.keyframes.size() << '\n';
    return kOk;
}

struct GenerateArgs {
    std::vector<std::string> models;
    std::vector<std::string> hazards;
    std::string ego = "0,0,0,10";
    std::string traffic;
};

int cmd_generate(Context& ctx, const GenerateArgs& args) {
    std::vector<ScenarioModel> models;
    for (const auto& path : args.models) models.push_back(read_model(path));
    const Traffic traffic =
        args.traffic.empty() ? models.front().label.traffic : parse_traffic(args.traffic);
    const RoadSpec road = ctx.config.road.road(traffic);

    std::vector<HazardDescriptor> hazards;
    if (args.hazards.empty()) {
        for (const auto& m : models) {
            hazards.push_back(ctx.config.hazard.make(m.label.size, m.label.closeness, road));
        }
    } else {
        for (const auto& h : args.hazards) hazards.push_back(parse_hazard(h, ctx.config, road));
    }
    if (hazards.size() != models.size()) {
        throw Error(ErrorCode::InvalidArgument, std::to_string(models.size()) + " model(s) for " +
                                                    std::to_string(hazards.size()) + " hazard(s)");
    }
    const EgoState ego = parse_ego(args.ego, road);
    const ConstraintEnvelope env =
        generate_multi(models, ego, hazards, road, ctx.config.generation);

    ctx.emit(ctx.out_dir / "envelope.json", envelope_to_json_text(env));
    write_file_atomic(ctx.out_dir / "envelope.csv", envelope_to_csv_text(env));

    auto& info = ctx.info();
    info << "envelope: " << env.points.size() << " points over " << format_double(env.horizon_m)
         << " m, " << env.hazards.size() << " hazard(s)\n";
    for (const auto& j : env.junctions) {
        info << "junction " << j.first << "->" << j.second << " at y=" << format_double(j.y)
             << (j.kind == JunctionKind::DisjointBoxes ? " (disjoint boxes)" : " (overlapping boxes)")
             << '\n';
    }
    return kOk;
}

struct AnalyzeArgs {
    std::vector<std::string> populations;
};

int cmd_analyze(Context& ctx, const AnalyzeArgs& args) {
    if (args.populations.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "analyze needs at least two populations");
    }
    std::vector<Population> pops;
    for (const auto& d : args.populations) {
        const fs::path dir = fs::path(d).lexically_normal();
        const auto manifest = read_manifest(dir);
        if (!manifest) {
            throw Error(ErrorCode::InvalidArgument, dir.string() + " has no manifest.json");
        }
        Population pop;
        pop.label = ScenarioLabel::parse(manifest->at("label").get<std::string>());
        pop.road = road_from_json(manifest->at("road"));
        pop.hazard = hazard_from_json(manifest->at("hazard"));
        pop.name = (dir.has_filename() ? dir : dir.parent_path()).filename().string();
        for (const auto& f : csv_files(dir)) pop.demos.push_back(read_trajectory_csv(f));
        pops.push_back(std::move(pop));
    }
    const SignificanceReport report =
        significance_report(pops, ctx.config.analysis, ctx.config.training);
    ctx.emit(ctx.out_dir / "report.csv", report_to_csv_text(report));
    const std::string text = report_to_text(report);
    write_file_atomic(ctx.out_dir / "report.txt", text);
    ctx.info() << text;
    return kOk;
}

struct PlotArgs {
    std::string input;
};

int cmd_plot(Context& ctx, const PlotArgs& args) {
    std::string svg;
    try {
        const std::string text = read_file(args.input);
        const json doc = json::parse(text);
        if (doc.contains("points")) {
            svg = envelope_to_svg(envelope_from_json_text(text));
        } else if (doc.contains("keyframes")) {
            svg = model_to_svg(model_from_json_text(text));
        } else {
            throw Error(ErrorCode::MalformedDocument,
                        args.input + " is neither an envelope nor a model document");
        }
    } catch (const std::exception& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kMalformedPlotInput;
    }
    ctx.emit(ctx.out_dir / "plot.svg", svg);
    ctx.info() << "wrote " << (ctx.out_dir / "plot.svg").string() << '\n';
    return kOk;
}

Context make_context(const Globals& g, std::ostream& out, std::ostream& err) {
    RunConfig config = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
    if (g.seed) config.seed = *g.seed;
    if (const char* env = std::getenv(kCalibrationEnvVar.data()); env != nullptr && *env != '\0') {
        config.calibration_path = env;
    }
    CalibrationTable table = config.calibration_path.empty()
                                 ? builtin_calibration()
                                 : load_calibration(config.calibration_path);
    return {std::move(config), std::move(table), fs::path(g.out_dir), g.to_stdout, out, err};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Driving constraints for occluding hazards, learned from demonstrations",
                 "hazard_lfd"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--config", g.config_path, "JSON file overriding default parameters");
    app.add_option("--seed", g.seed, "Master seed (u64)");
    app.add_option("--out", g.out_dir, "Output directory");
    app.add_flag("--stdout", g.to_stdout, "Also print the main output document on stdout");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic demonstration population");
    simulate->add_option("--label", sim.label, "Scenario, e.g. uni/large/near");
    simulate->add_option("--marginal", sim.marginal, "Single calibration row, e.g. bi/far");
    simulate->add_option("-n,--count", sim.count, "Number of demonstrations")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "Train a scenario model from trajectory CSVs");
    train->add_option("--demos", tr.demo_dir, "Directory of trajectory CSVs")->required();
    train->add_option("--label", tr.label, "Scenario label (default: from manifest.json)");
    train->add_option("--hazard", tr.hazard, "Hazard used in the demonstrations");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a constraint envelope");
    generate->add_option("--model", gen.models, "Model file, one per hazard")->required();
    generate->add_option("--hazard", gen.hazards,
                         "size/closeness[@y] or cx,cy,length,width,size,closeness");
    generate->add_option("--ego", gen.ego, "x,y,heading,speed");
    generate->add_option("--traffic", gen.traffic, "uni or bi (default: first model's)");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Paired tests between populations");
    analyze->add_option("--population", an.populations, "Simulated population directory")
        ->required();

    PlotArgs pl;
    auto* plot = app.add_subcommand("plot", "Render an envelope or model as SVG");
    plot->add_option("--input", pl.input, "Envelope or model JSON")->required();

    for (auto* sub : {simulate, train, generate, analyze, plot}) sub->fallthrough();

    std::vector<const char*> argv{"hazard_lfd"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    try {
        Context ctx = make_context(g, out, err);
        fs::create_directories(ctx.out_dir);
        write_file_atomic(ctx.out_dir / "resolved_config.json", config_to_json_text(ctx.config));
        if (simulate->parsed()) return cmd_simulate(ctx, sim);
        if (train->parsed()) return cmd_train(ctx, tr);
        if (generate->parsed()) return cmd_generate(ctx, gen);
        if (analyze->parsed()) return cmd_analyze(ctx, an);
        return cmd_plot(ctx, pl);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace hazard_lfd::cli
