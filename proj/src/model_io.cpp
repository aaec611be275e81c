#include "hazard_lfd/model_io.hpp"

#include "json.hpp"

#include "hazard_lfd/error.hpp"
#include "hazard_lfd/file_util.hpp"

namespace hazard_lfd {

using nlohmann::json;

std::string model_to_json_text(const ScenarioModel& model) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["label"] = model.label.to_string();
    doc["d_thresh"] = model.d_thresh;
    doc["epsilon"] = model.epsilon;
    doc["n_demos"] = model.n_demos;
    json frames = json::array();
    for (const auto& k : model.keyframes) {
        frames.push_back({{"y_mu", k.y_mu},
                          {"lateral_mu", k.lateral_mu},
                          {"lateral_sigma", k.lateral_sigma},
                          {"speed_mu", k.speed_mu},
                          {"speed_sigma", k.speed_sigma},
                          {"support", k.support}});
    }
    doc["keyframes"] = std::move(frames);
    return doc.dump(2) + "\n";
}

ScenarioModel model_from_json_text(const std::string& text) {
    try {
        const json doc = json::parse(text);
        const int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw Error(ErrorCode::MalformedDocument,
                        "unsupported model format_version " + std::to_string(version));
        }
        ScenarioModel model;
        model.label = ScenarioLabel::parse(doc.at("label").get<std::string>());
        model.d_thresh = doc.at("d_thresh").get<double>();
        model.epsilon = doc.at("epsilon").get<double>();
        model.n_demos = doc.at("n_demos").get<std::size_t>();
        for (const auto& k : doc.at("keyframes")) {
            model.keyframes.push_back({k.at("y_mu").get<double>(), k.at("lateral_mu").get<double>(),
                                       k.at("lateral_sigma").get<double>(),
                                       k.at("speed_mu").get<double>(),
                                       k.at("speed_sigma").get<double>(),
                                       k.at("support").get<std::size_t>()});
        }
        model.validate();
        return model;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("model: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedDocument) throw;
        throw Error(ErrorCode::MalformedDocument, std::string("model: ") + e.what());
    }
}

void write_model(const std::filesystem::path& path, const ScenarioModel& model) {
    write_file_atomic(path, model_to_json_text(model));
}

ScenarioModel read_model(const std::filesystem::path& path) {
    return model_from_json_text(read_file(path));
}

}  // namespace hazard_lfd
