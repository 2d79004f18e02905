#include "hyptm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hyptm {

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_atomic(const std::filesystem::path& path, const Json& j) { write_text_atomic(path, dump_json(j)); }

Json grid_json(const PolarGrid& g) {
  return Json{{"convention", std::string(kMetricConvention)},
              {"kind", g.kind() == GridKind::hyperbolic_disk ? "hyperbolic_disk" : "euclidean_window"},
              {"n_rho", g.n_rho()},
              {"n_theta", g.n_theta()},
              {"rho_max", g.rho_max()},
              {"rho_min", g.rho(0)}};
}

Json point_json(const DiskPoint& z) {
  const PolarPoint p = disk_drop(z);
  return Json{{"re", z.re()}, {"im", z.im()}, {"rho", p.rho}, {"theta", p.theta}};
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("CsvWriter: row width mismatch");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) text_ += ',';
    text_ += cells[k];
  }
  text_ += '\n';
  return *this;
}

std::string CsvWriter::num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace hyptm
