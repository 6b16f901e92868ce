#include "harsanyi/report.hpp"

#include <cstdio>
#include <fstream>

#include "harsanyi/kernels.hpp"

namespace harsanyi {

Json report_skeleton(const RunConfig& config) {
    Json doc;
    doc["tool"] = {
        {"name", kToolName},
        {"version", kToolVersion},
        {"kernel_backend", kernels::backend_name(kernels::active_backend())},
    };
    Json echo;
    for (const auto& [key, value] : config_echo(config)) echo[key] = value;
    doc["config"] = std::move(echo);
    doc["blocks"] = Json::object();
    return doc;
}

void write_json_file(const Json& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv_file(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace harsanyi
