#include "plasma/io.hpp"

#include <cstdio>
#include <fstream>

#include "plasma/errors.hpp"

namespace plasma {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  require_config(out.good(), "cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    require_config(row.size() == header.size(),
                   "csv row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_full(row[i]);
    }
    out << '\n';
  }
  require_config(out.good(), "write failed: " + path);
}

void write_manifest(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  require_config(out.good(), "cannot open for writing: " + path);
  // nlohmann::json objects keep keys sorted; pretty-print with 2 spaces.
  out << doc.dump(2) << '\n';
  require_config(out.good(), "write failed: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require_config(in.good(), "cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail_config(std::string("invalid JSON in ") + path + ": " +
                      e.what());
  }
  return j;
}

}  // namespace plasma
