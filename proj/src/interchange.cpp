#include "evid/interchange.hpp"

#include <nlohmann/json.hpp>

namespace evid {

using nlohmann::json;

FocalSet focal_set_from_key(const Frame& frame, const std::string& key) {
    if (key.empty()) throw IoError("empty focal-set key");
    FocalSet set = kEmptySet;
    std::size_t start = 0;
    while (start <= key.size()) {
        const std::size_t sep = key.find('|', start);
        const std::string label =
            key.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
        const int idx = frame.index_of(label);
        if (idx < 0) throw IoError("unknown label '" + label + "' in focal-set key '" + key + "'");
        const FocalSet bit = FocalSet{1} << idx;
        if (set & bit) throw IoError("duplicate label '" + label + "' in focal-set key");
        set |= bit;
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    return set;
}

json mass_to_document(const MassFunction& m) {
    json masses = json::object();
    for (const auto& [set, value] : m.focal_sets()) {
        masses[m.frame().set_name(set)] = value;
    }
    return json{{"frame", m.frame().labels()}, {"masses", masses}};
}

MassFunction mass_from_document(const json& doc) {
    if (!doc.is_object() || !doc.contains("frame") || !doc.contains("masses")) {
        throw IoError("interchange document needs 'frame' and 'masses' fields");
    }
    std::vector<std::string> labels;
    try {
        labels = doc.at("frame").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw IoError(std::string("bad 'frame' field: ") + e.what());
    }
    Frame frame(labels);
    std::vector<MassFunction::Assignment> entries;
    for (const auto& [key, value] : doc.at("masses").items()) {
        if (!value.is_number()) throw IoError("mass for '" + key + "' is not a number");
        entries.emplace_back(focal_set_from_key(frame, key), value.get<double>());
    }
    return MassFunction::from_assignments(frame, entries);
}

std::string mass_to_string(const MassFunction& m) { return mass_to_document(m).dump(); }

MassFunction mass_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed interchange document: ") + e.what());
    }
    return mass_from_document(doc);
}

}  // namespace evid
