#pragma once

#include "hyptm/field.hpp"

namespace hyptm {

/// Bicubic (4 x 4 Lagrange) interpolation of a Field in (radius, angle).
///
/// The angular direction is periodic. Radially the stencil continues through
/// the origin onto the reflected ring (radius -rho_i, angle theta + pi), which
/// is the restriction of a smooth function to a diameter; the origin itself
/// takes the mean of the innermost ring. Queries at or beyond the outer
/// radius return 0 on hyperbolic grids and the clamped outer value on windows.
class FieldInterpolator {
 public:
  explicit FieldInterpolator(const Field& field);
  double operator()(double radius, double theta) const;

 private:
  double ring_at(long ext, double theta) const;
  double ext_radius(long ext) const;

  const Field& field_;
  double origin_;
};

/// Cubic interpolation of a radial profile (even extension through 0).
double interpolate_radial(const RadialField& u, double rho);

}  // namespace hyptm
