#include "evid/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "evid/errors.hpp"

namespace evid {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t') {
            if (!current.empty()) fields.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty()) fields.push_back(std::move(current));
    return fields;
}

bool try_parse_number(const std::string& field, double* value) {
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto result = std::from_chars(first, last, *value);
    return result.ec == std::errc{} && result.ptr == last;
}

double parse_number(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    if (!try_parse_number(field, &value)) {
        throw IoError("line " + std::to_string(line_no) + ": cannot parse number '" + field + "'");
    }
    return value;
}

}  // namespace

Mat load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    Mat rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (rows.empty()) {
            // tolerate one leading header row of column names
            double probe = 0.0;
            bool numeric = false;
            for (const auto& field : fields) numeric = numeric || try_parse_number(field, &probe);
            if (!numeric) continue;
        }
        Vec row;
        row.reserve(fields.size());
        for (const auto& field : fields) row.push_back(parse_number(field, line_no));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(rows.front().size()) + " columns, got " +
                          std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("no data rows in '" + path.string() + "'");
    return rows;
}

LabeledData load_labeled(const std::filesystem::path& path) {
    Mat raw = load_matrix(path);
    if (raw.front().size() < 2) {
        throw IoError("labeled data needs at least one feature column plus the label column");
    }
    LabeledData out;
    out.features.reserve(raw.size());
    out.labels.reserve(raw.size());
    for (auto& row : raw) {
        const double label = row.back();
        const int as_int = static_cast<int>(std::lround(label));
        if (std::abs(label - as_int) > 1e-9 || as_int < 0) {
            throw IoError("label column must hold nonnegative integers, got " +
                          format_number(label));
        }
        row.pop_back();
        out.features.push_back(std::move(row));
        out.labels.push_back(as_int);
    }
    return out;
}

std::string format_number(double value) {
    char buffer[40];
    const int written = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(written));
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Mat& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    if (!header.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out << ',';
            out << header[i];
        }
        out << '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_number(row[i]);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace evid
