#include "hyptm/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyptm {

Field::Field(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  values_.assign(grid_->size(), 0.0);
}

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  if (values_.size() != grid_->size()) throw std::invalid_argument("Field: value count does not match the grid");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite value");
  }
  if (grid_->dirichlet_outer()) {
    for (double v : ring(grid_->n_rho() - 1)) {
      if (v != 0.0) throw std::invalid_argument("Field: outer ring must vanish on a hyperbolic grid");
    }
  }
}

Field Field::from_polar(GridPtr grid, const std::function<double(double, double)>& f) {
  Field out(std::move(grid));
  const PolarGrid& g = out.grid();
  for (std::size_t i = 0; i < g.n_rho(); ++i) {
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double v = f(g.rho(i), g.theta(j));
      if (!std::isfinite(v)) throw std::invalid_argument("Field::from_polar: non-finite sample");
      out.values_[i * g.n_theta() + j] = v;
    }
  }
  out.enforce_boundary();
  return out;
}

Field Field::from_disk(GridPtr grid, const std::function<double(const DiskPoint&)>& f) {
  if (grid->kind() != GridKind::hyperbolic_disk) {
    throw std::invalid_argument("Field::from_disk: requires a hyperbolic grid");
  }
  return from_polar(std::move(grid), [&f](double rho, double theta) { return f(polar_lift(rho, theta)); });
}

double Field::origin_value() const {
  const auto r0 = ring(0);
  double s = 0.0;
  for (double v : r0) s += v;
  return s / static_cast<double>(r0.size());
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Field::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

void Field::check_compatible(const Field& other) const {
  if (!same_grid(*grid_, *other.grid_)) throw std::invalid_argument("Field: operands live on different grids");
}

void Field::enforce_boundary() {
  if (!grid_->dirichlet_outer()) return;
  const std::size_t n = grid_->n_theta();
  std::fill(values_.end() - static_cast<std::ptrdiff_t>(n), values_.end(), 0.0);
}

Field& Field::operator+=(const Field& other) { return axpy(1.0, other); }
Field& Field::operator-=(const Field& other) { return axpy(-1.0, other); }

Field& Field::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

Field& Field::axpy(double c, const Field& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += c * other.values_[k];
  return *this;
}

Field Field::map(const std::function<double(double)>& f) const {
  Field out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = f(values_[k]);
  out.enforce_boundary();
  for (double v : out.values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Field::map: non-finite result");
  }
  return out;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }

RadialField::RadialField(RadialGrid grid, std::vector<double> values)
    : field_(PolarGrid::hyperbolic(std::move(grid), 1), std::move(values)) {}

RadialField RadialField::from_profile(RadialGrid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) v[i] = f(grid[i]);
  v.back() = 0.0;
  return RadialField(std::move(grid), std::move(v));
}

Field RadialField::to_field(std::size_t n_theta) const {
  auto g = PolarGrid::hyperbolic(grid(), n_theta);
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < g->n_rho(); ++i) {
    std::fill_n(v.begin() + static_cast<std::ptrdiff_t>(i * n_theta), n_theta, (*this)[i]);
  }
  return Field(std::move(g), std::move(v));
}

}  // namespace hyptm
