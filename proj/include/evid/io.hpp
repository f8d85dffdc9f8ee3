#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evid/linalg.hpp"

namespace evid {

struct LabeledData {
    Mat features;
    std::vector<int> labels;
};

/// Reads delimiter-separated numeric text, one row per object. Accepts
/// commas, semicolons, spaces or tabs; blank lines and '#' comments skipped.
/// All rows must have the same width.
Mat load_matrix(const std::filesystem::path& path);

/// As load_matrix, with the last column interpreted as an integer class label.
LabeledData load_labeled(const std::filesystem::path& path);

/// Formats a double with enough digits to round-trip exactly.
std::string format_number(double value);

/// Writes rows as comma-separated values with an optional header line.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Mat& rows);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace evid
