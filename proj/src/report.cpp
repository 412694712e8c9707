#include "specgeo/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace specgeo::report {

const char* kToolVersion = "specgeo 0.1.0";

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("report: non-finite value refused");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
void check_finite(const nlohmann::json& j) {
    if (j.is_number_float() && !std::isfinite(j.get<double>()))
        throw std::runtime_error("report: non-finite value refused");
    if (j.is_object() || j.is_array())
        for (const auto& item : j) check_finite(item);
}
} // namespace

std::string render_json(const Meta& meta, const nlohmann::json& result) {
    check_finite(result);
    nlohmann::json doc;
    doc["meta"]["tool"] = meta.tool_version;
    doc["meta"]["config"] = meta.config_echo;
    for (const auto& [name, value] : meta.tolerances)
        doc["meta"]["tolerances"][name] = value;
    doc["result"] = result;
    return doc.dump(2) + "\n";
}

std::string render_csv(const Meta& meta, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::string out;
    out += "# tool=" + meta.tool_version + "\n";
    out += "# config=" + meta.config_echo + "\n";
    for (const auto& [name, value] : meta.tolerances)
        out += "# tol_" + name + "=" + format_double(value) + "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + format_double(row[i]);
        out += "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("report: cannot open " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("report: write failed for " + path);
}

} // namespace specgeo::report
