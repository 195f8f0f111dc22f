#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fk/relations.hpp"

namespace fk {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits, '.' separator, locale-free.
std::string fmt17(double v);

struct CsvTable {
  std::vector<std::string> comments;  // leading '# ' lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const CsvTable& t);
void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::json& j);

nlohmann::json residual_report_json(const ResidualReport& r, double gate,
                                    const std::vector<std::string>& notes);

// Volatile run facts (timestamps, wall time) live next to the primary
// outputs so those stay byte-identical across reruns.
void write_meta_sidecar(const std::string& path, double wall_seconds);

}  // namespace fk
