#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyptm/disk_geom.hpp"
#include "hyptm/polar_grid.hpp"

namespace hyptm {

using Json = nlohmann::json;

/// Writes to a sibling temporary file and renames it over path.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Keys are sorted (nlohmann::json objects are ordered maps), indent 2,
/// trailing newline: identical values give identical bytes.
std::string dump_json(const Json& j);
void write_json_atomic(const std::filesystem::path& path, const Json& j);

/// Grid metadata including the metric convention tag.
Json grid_json(const PolarGrid& g);
Json point_json(const DiskPoint& z);

/// Minimal CSV builder; numbers use 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(const std::vector<std::string>& cells);
  std::string str() const { return text_; }

  static std::string num(double x);
  static std::string num(long long x) { return std::to_string(x); }
  static std::string num(std::size_t x) { return std::to_string(x); }

 private:
  std::size_t width_;
  std::string text_;
};

}  // namespace hyptm
