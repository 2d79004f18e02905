#pragma once

// Local Trudinger-Moser estimate on a Euclidean window W, a disk of radius 1/2:
//   int_W (e^{q u^2} - 1) dx <= C N / (1 - N),   N = int_W |grad u|^2 + lambda u^2 dx < 1.
// C is measured once as the largest int_W e^{q v^2} dx over a calibration
// family normalized to unit window norm.

#include <cstdint>
#include <numbers>

#include "hyptm/errors.hpp"
#include "hyptm/field.hpp"

namespace hyptm {

struct LocalBoundParams {
  double q = std::numbers::pi / 4.0;
  double lambda = 1.0;
  double window_radius = 0.5;
  std::size_t n_r = 64;
  std::size_t n_theta = 128;
};

GridPtr window_grid(const LocalBoundParams& params = {});

/// int_W |grad v|^2 + lambda v^2 dx
double window_norm_sq(const Field& v, double lambda);
/// int_W (e^{q v^2} - 1) dx, exponent capped at kExpSaturation.
double window_tm(const Field& v, double q);
/// Rescales a nonzero window field to the requested window norm.
Field scale_to_norm(Field v, double norm_sq, double lambda);

/// Smooth window field: an affine part plus 1-3 Gaussians with random
/// centers, widths and signs. Deterministic in the seed.
Field random_window_field(const GridPtr& window, std::uint64_t seed);

/// Restriction of a disk field to the Euclidean disk of the window's radius
/// around center, by bicubic interpolation. Requires |center| + radius < 1.
Field sample_window(const Field& u, const DiskPoint& center, const GridPtr& window);

struct LocalCalibration {
  double constant = 0.0;
  std::size_t family_size = 0;
  double max_norm_sq = 0.0;
};

/// sup over seeds [seed0, seed0 + count) of int_W e^{q v^2} dx with v the
/// calibration field normalized to unit window norm. The fields are drawn at
/// window norms spread over (0, max_norm_sq].
LocalCalibration calibrate_local_constant(const GridPtr& window, double q, double lambda, std::uint64_t seed0,
                                          std::size_t count, double max_norm_sq = 0.2);

struct LocalBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double norm_sq = 0.0;
  double constant = 0.0;
  bool ok = true;
};

/// Evaluates both sides for a window field. Throws HypothesisError when the
/// window norm is >= 1.
LocalBoundReport local_bound_check(const Field& v, double q, double lambda, double constant);

/// The same for a disk field restricted to the window centered at center.
LocalBoundReport local_tm_bound_check(const Field& u, const DiskPoint& center, double q, double lambda,
                                      double constant, const LocalBoundParams& params = {});

}  // namespace hyptm
