#pragma once

#include <filesystem>
#include <variant>

#include "evid/classify.hpp"

namespace evid {

/// Stored nearest-neighbor model: the rule is lazy, so the training set
/// travels with the configuration.
struct EknnModel {
    Frame frame;
    Mat features;
    std::vector<int> labels;
    EknnConfig config;

    MassFunction predict(const Vec& x) const {
        return eknn_predict(x, features, labels, frame, config);
    }
};

using AnyModel = std::variant<EknnModel, EnnModel, RbfModel>;

/// Structured-text model files (JSON); numbers round-trip exactly.
void save_model(const std::filesystem::path& path, const AnyModel& model);
AnyModel load_model(const std::filesystem::path& path);

MassFunction predict_any(const AnyModel& model, const Vec& x);
const Frame& model_frame(const AnyModel& model);

}  // namespace evid
