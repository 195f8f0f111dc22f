#include "fk/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace fk {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const CsvTable& t) {
  std::string out;
  for (const auto& c : t.comments) out += "# " + c + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ",";
    out += t.columns[i];
  }
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("short write: " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

nlohmann::json residual_report_json(const ResidualReport& r, double gate,
                                    const std::vector<std::string>& notes) {
  nlohmann::json j;
  j["check_name"] = r.check_name;
  j["max_abs_residual"] = r.max_abs_residual;
  j["mean_abs_residual"] = r.mean_abs_residual();
  j["worst_location"] = r.worst_location;
  j["count_checked"] = r.count_checked;
  j["gate"] = gate;
  j["pass"] = r.pass(gate);
  j["notes"] = notes;
  return j;
}

void write_meta_sidecar(const std::string& path, double wall_seconds) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  nlohmann::json j;
  j["written_at_utc"] = stamp;
  j["wall_seconds"] = wall_seconds;
  write_json_file(path, j);
}

}  // namespace fk
