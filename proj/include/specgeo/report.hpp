// Deterministic result emission: fixed 17-significant-digit floats, '.'
// decimal separator, LF line endings, NaN rejected.  Identical inputs
// produce byte-identical files.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace specgeo::report {

// canonical float formatting used everywhere ("%.17g", locale-free)
std::string format_double(double v);

struct Meta {
    std::string tool_version;
    std::string config_echo;
    std::vector<std::pair<std::string, double>> tolerances;
};

// JSON document with a metadata header; throws on NaN/Inf anywhere
std::string render_json(const Meta& meta, const nlohmann::json& result);

// CSV with "# key=value" metadata comment lines
std::string render_csv(const Meta& meta, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

void write_file(const std::string& path, const std::string& content);

extern const char* kToolVersion;

} // namespace specgeo::report
