#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace plasma {

/// Full-precision decimal rendering of a double (round-trips exactly).
std::string format_full(double v);

/// Writes a CSV table: header row, then rows at full double precision.
/// Output is bytewise deterministic for identical inputs.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes a manifest as pretty-printed JSON with sorted keys and a
/// trailing newline; no timestamps or machine identifiers are added, so
/// identical runs produce identical bytes.
void write_manifest(const std::string& path, const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);

}  // namespace plasma
