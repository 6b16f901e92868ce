#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "harsanyi/config.hpp"

namespace harsanyi {

inline constexpr const char* kToolName = "harsanyi";
inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

// Report skeleton: tool metadata plus a full config echo. No wall-clock
// fields; identical configs must serialize to identical bytes.
Json report_skeleton(const RunConfig& config);

void write_json_file(const Json& doc, const std::filesystem::path& path);

// Shortest round-trip double rendering shared by the CSV emitters.
std::string format_double(double v);

void write_csv_file(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

}  // namespace harsanyi
