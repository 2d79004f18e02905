#include "hyptm/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hyptm/report.hpp"

namespace hyptm {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void expect(std::istream& is, const std::string& word) {
  std::string got;
  if (!(is >> got) || got != word) throw std::runtime_error("field file: expected '" + word + "', got '" + got + "'");
}

}  // namespace

void write_field(const Field& u, std::ostream& os) {
  const PolarGrid& g = u.grid();
  os << "hyptm-field 1\n";
  os << "convention " << kMetricConvention << "\n";
  os << "kind " << (g.kind() == GridKind::hyperbolic_disk ? "hyperbolic_disk" : "euclidean_window") << "\n";
  os << "n_rho " << g.n_rho() << "\n";
  os << "n_theta " << g.n_theta() << "\n";
  os << "rho_nodes\n";
  for (std::size_t i = 0; i < g.n_rho(); ++i) os << (i ? " " : "") << num(g.rho(i));
  os << "\nvalues\n";
  for (std::size_t i = 0; i < g.n_rho(); ++i) {
    const auto r = u.ring(i);
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << num(r[j]);
    os << "\n";
  }
}

Field read_field(std::istream& is) {
  expect(is, "hyptm-field");
  int version = 0;
  if (!(is >> version) || version != 1) throw std::runtime_error("field file: unsupported version");
  expect(is, "convention");
  std::string conv;
  is >> conv;
  if (conv != kMetricConvention) throw std::runtime_error("field file: convention '" + conv + "' is not supported");
  expect(is, "kind");
  std::string kind;
  is >> kind;
  if (kind != "hyperbolic_disk" && kind != "euclidean_window") throw std::runtime_error("field file: unknown kind");
  std::size_t n = 0, m = 0;
  expect(is, "n_rho");
  if (!(is >> n) || n == 0) throw std::runtime_error("field file: bad n_rho");
  expect(is, "n_theta");
  if (!(is >> m) || m == 0) throw std::runtime_error("field file: bad n_theta");
  expect(is, "rho_nodes");
  std::vector<double> nodes(n);
  for (double& x : nodes) {
    if (!(is >> x)) throw std::runtime_error("field file: truncated radii");
  }
  expect(is, "values");
  std::vector<double> values(n * m);
  for (double& x : values) {
    if (!(is >> x)) throw std::runtime_error("field file: truncated values");
  }
  GridPtr grid;
  if (kind == "hyperbolic_disk") {
    grid = PolarGrid::hyperbolic(RadialGrid(std::move(nodes)), m);
  } else {
    const double radius = nodes.back();
    grid = PolarGrid::window(radius, n, m);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(grid->rho(i) - nodes[i]) > 1e-12 * radius) {
        throw std::runtime_error("field file: window radii are not uniform");
      }
    }
  }
  return Field(grid, std::move(values));
}

void save_field(const Field& u, const std::filesystem::path& path) {
  std::ostringstream os;
  write_field(u, os);
  write_text_atomic(path, os.str());
}

Field load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file " + path.string());
  return read_field(in);
}

void write_field_csv(const Field& u, std::ostream& os) {
  const PolarGrid& g = u.grid();
  os << "rho,theta,re,im,value\n";
  for (std::size_t i = 0; i < g.n_rho(); ++i) {
    const auto r = u.ring(i);
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      double re = 0.0, im = 0.0;
      if (g.kind() == GridKind::hyperbolic_disk) {
        const DiskPoint z = polar_lift(g.rho(i), g.theta(j));
        re = z.re();
        im = z.im();
      } else {
        re = g.rho(i) * std::cos(g.theta(j));
        im = g.rho(i) * std::sin(g.theta(j));
      }
      os << num(g.rho(i)) << ',' << num(g.theta(j)) << ',' << num(re) << ',' << num(im) << ',' << num(r[j]) << '\n';
    }
  }
}

}  // namespace hyptm
