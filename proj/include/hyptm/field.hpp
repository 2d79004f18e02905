#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hyptm/disk_geom.hpp"
#include "hyptm/polar_grid.hpp"

namespace hyptm {

/// Scalar samples on a PolarGrid, row-major in (ring, angle).
///
/// Invariants: all values finite; on a hyperbolic grid the outer ring is zero
/// (Dirichlet truncation at rho_max).
class Field {
 public:
  explicit Field(GridPtr grid);
  /// Throws std::invalid_argument on size mismatch, non-finite values or a
  /// nonzero outer ring on a hyperbolic grid.
  Field(GridPtr grid, std::vector<double> values);

  /// Samples f(rho, theta); the outer ring of a hyperbolic grid is set to 0.
  static Field from_polar(GridPtr grid, const std::function<double(double, double)>& f);
  /// Samples f at grid nodes given as disk points (hyperbolic grids only).
  static Field from_disk(GridPtr grid, const std::function<double(const DiskPoint&)>& f);

  const GridPtr& grid_ptr() const { return grid_; }
  const PolarGrid& grid() const { return *grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_->n_theta() + j]; }
  std::span<const double> ring(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * grid_->n_theta(), grid_->n_theta());
  }
  /// Value assigned to the origin: mean of the innermost ring.
  double origin_value() const;
  double max_abs() const;
  bool is_zero() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double c);
  /// this += c * other
  Field& axpy(double c, const Field& other);

  /// Applies f pointwise; the result keeps the grid's boundary convention.
  Field map(const std::function<double(double)>& f) const;

 private:
  void check_compatible(const Field& other) const;
  void enforce_boundary();

  GridPtr grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);

/// A function of the radius alone, stored on a single-angle polar grid.
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<double> values);
  static RadialField from_profile(RadialGrid grid, const std::function<double(double)>& f);

  const RadialGrid& grid() const { return field_.grid().radial(); }
  std::span<const double> values() const { return field_.values(); }
  std::size_t size() const { return field_.size(); }
  double operator[](std::size_t i) const { return field_.values()[i]; }

  /// The same function viewed as a (rotation-invariant) Field.
  const Field& as_field() const { return field_; }
  /// Replicates the profile on n_theta angles.
  Field to_field(std::size_t n_theta) const;

 private:
  Field field_;
};

}  // namespace hyptm
