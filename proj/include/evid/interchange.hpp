#pragma once

#include <string>

#include "evid/mass.hpp"

#include <nlohmann/json_fwd.hpp>

namespace evid {

/// Mass-function interchange document: a JSON object with an ordered `frame`
/// label list and a `masses` map keyed by labels joined with '|' in frame
/// order, e.g. {"frame":["a","b"],"masses":{"a":0.6,"a|b":0.4}}. Numbers
/// round-trip losslessly. Extra fields are preserved by parsers that take a
/// json value and ignored otherwise.
nlohmann::json mass_to_document(const MassFunction& m);
MassFunction mass_from_document(const nlohmann::json& doc);

std::string mass_to_string(const MassFunction& m);
MassFunction mass_from_string(const std::string& text);

/// Parses a focal-set key ("a|b") against a frame; throws IoError on unknown
/// labels, duplicates, or empty keys.
FocalSet focal_set_from_key(const Frame& frame, const std::string& key);

}  // namespace evid
