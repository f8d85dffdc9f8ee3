#include "evid/model_io.hpp"

#include <nlohmann/json.hpp>

#include "evid/io.hpp"

namespace evid {

using nlohmann::json;

namespace {

json frame_field(const Frame& frame) { return frame.labels(); }

Frame frame_from(const json& doc) {
    try {
        return Frame(doc.at("frame").get<std::vector<std::string>>());
    } catch (const json::exception& e) {
        throw IoError(std::string("bad model frame: ") + e.what());
    }
}

template <typename T>
T field(const json& doc, const char* name) {
    try {
        return doc.at(name).get<T>();
    } catch (const json::exception& e) {
        throw IoError("bad model field '" + std::string(name) + "': " + e.what());
    }
}

}  // namespace

void save_model(const std::filesystem::path& path, const AnyModel& model) {
    json doc;
    if (const auto* eknn = std::get_if<EknnModel>(&model)) {
        doc = json{{"type", "eknn"},
                   {"frame", frame_field(eknn->frame)},
                   {"k", eknn->config.k},
                   {"alpha", eknn->config.alpha},
                   {"gamma", eknn->config.gamma},
                   {"features", eknn->features},
                   {"labels", eknn->labels}};
    } else if (const auto* enn = std::get_if<EnnModel>(&model)) {
        doc = json{{"type", "enn"},
                   {"frame", frame_field(enn->frame)},
                   {"prototypes", enn->prototypes},
                   {"alpha", enn->alpha},
                   {"gamma", enn->gamma},
                   {"membership", enn->membership}};
    } else {
        const auto& rbf = std::get<RbfModel>(model);
        doc = json{{"type", "rbf"},
                   {"frame", frame_field(rbf.frame)},
                   {"prototypes", rbf.prototypes},
                   {"gamma", rbf.gamma},
                   {"weights", rbf.weights}};
    }
    write_text_file(path, doc.dump(2) + "\n");
}

AnyModel load_model(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw IoError("malformed model file '" + path.string() + "': " + e.what());
    }
    const auto type = field<std::string>(doc, "type");
    if (type == "eknn") {
        EknnModel model{frame_from(doc), field<Mat>(doc, "features"),
                        field<std::vector<int>>(doc, "labels"), EknnConfig{}};
        model.config.k = field<int>(doc, "k");
        model.config.alpha = field<double>(doc, "alpha");
        model.config.gamma = field<Vec>(doc, "gamma");
        return model;
    }
    if (type == "enn") {
        return EnnModel{frame_from(doc), field<Mat>(doc, "prototypes"), field<Vec>(doc, "alpha"),
                        field<Vec>(doc, "gamma"), field<Mat>(doc, "membership")};
    }
    if (type == "rbf") {
        return RbfModel{frame_from(doc), field<Mat>(doc, "prototypes"), field<Vec>(doc, "gamma"),
                        field<Vec>(doc, "weights")};
    }
    throw IoError("unknown model type '" + type + "'");
}

MassFunction predict_any(const AnyModel& model, const Vec& x) {
    if (const auto* eknn = std::get_if<EknnModel>(&model)) return eknn->predict(x);
    if (const auto* enn = std::get_if<EnnModel>(&model)) return enn->forward(x);
    return std::get<RbfModel>(model).forward(x).mass;
}

const Frame& model_frame(const AnyModel& model) {
    if (const auto* eknn = std::get_if<EknnModel>(&model)) return eknn->frame;
    if (const auto* enn = std::get_if<EnnModel>(&model)) return enn->frame;
    return std::get<RbfModel>(model).frame;
}

}  // namespace evid
