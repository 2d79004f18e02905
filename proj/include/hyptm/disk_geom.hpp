#pragma once

// Closed-form geometry of the Poincare disk.
//
// Metric convention: g = delta_ij / (1 - |x|^2)^2, without the factor 4 of the
// curvature -1 model. Consequences used throughout the library:
//   d(0, r)          = artanh(r)
//   mu(V_rho)        = pi * sinh(rho)^2
//   d(mu)            = sinh(rho) cosh(rho) d(rho) d(theta)   (r = tanh rho)
//   arc length       = sinh(rho) cosh(rho) d(theta)
// Every report written by this library carries the tag kMetricConvention.

#include <complex>
#include <string_view>

namespace hyptm {

inline constexpr std::string_view kMetricConvention = "paper-metric-no-4";

/// Distances above this value are reported as saturated.
inline constexpr double kDistanceCap = 50.0;

/// Largest hyperbolic radius accepted by polar_lift. Beyond ~18.7 tanh(rho)
/// rounds to 1 in double precision.
inline constexpr double kPolarRhoLimit = 18.0;

/// A point of the open unit disk.
///
/// Besides the coordinates the point carries 1 - |z|^2, computed from exact
/// expressions whenever the point comes from polar_lift or a Moebius map, so
/// that points close to the unit circle keep their hyperbolic position.
class DiskPoint {
 public:
  DiskPoint() = default;
  /// Throws std::domain_error unless re^2 + im^2 < 1.
  DiskPoint(double re, double im);
  explicit DiskPoint(std::complex<double> z) : DiskPoint(z.real(), z.imag()) {}

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  std::complex<double> z() const { return z_; }
  double abs() const { return std::abs(z_); }
  double norm_sq() const { return std::norm(z_); }
  /// 1 - |z|^2, always positive.
  double complement() const { return complement_; }

  DiskPoint operator-() const;

 private:
  friend class MobiusMap;
  friend DiskPoint polar_lift(double rho, double theta, double rho_limit);
  DiskPoint(std::complex<double> z, double complement);

  std::complex<double> z_{0.0, 0.0};
  double complement_ = 1.0;
};

bool operator==(const DiskPoint& a, const DiskPoint& b);

/// eta_zeta(z) = (z - zeta) / (1 - conj(zeta) z). No rotation factor.
class MobiusMap {
 public:
  MobiusMap() = default;
  explicit MobiusMap(DiskPoint center) : center_(center) {}

  const DiskPoint& center() const { return center_; }
  DiskPoint apply(const DiskPoint& z) const;
  DiskPoint operator()(const DiskPoint& z) const { return apply(z); }
  /// The map with center -zeta; composing with *this gives the identity.
  MobiusMap inverse() const { return MobiusMap(-center_); }
  /// |eta_zeta'(z)|^2, the Jacobian determinant of the map at z.
  double jacobian(const DiskPoint& z) const;

 private:
  DiskPoint center_{};
};

inline DiskPoint mobius_apply(const MobiusMap& m, const DiskPoint& z) { return m.apply(z); }
inline MobiusMap mobius_inverse(const MobiusMap& m) { return m.inverse(); }

struct Distance {
  double value = 0.0;
  bool saturated = false;
};

/// artanh |eta_a(b)|, capped at kDistanceCap with a saturation flag.
Distance geodesic_distance_checked(const DiskPoint& a, const DiskPoint& b);
inline double geodesic_distance(const DiskPoint& a, const DiskPoint& b) {
  return geodesic_distance_checked(a, b).value;
}

/// Density of d(mu) = dx / (1 - |x|^2)^2.
inline double measure_weight(const DiskPoint& z) {
  const double c = z.complement();
  return 1.0 / (c * c);
}

/// Hyperbolic area of a geodesic ball of radius rho.
double ball_area(double rho);

struct PolarPoint {
  double rho = 0.0;    // hyperbolic distance to the origin
  double theta = 0.0;  // in [0, 2 pi)
};

/// The point with d(0, z) = rho and argument theta (r = tanh rho). Throws
/// std::domain_error for rho < 0 or rho > rho_limit.
DiskPoint polar_lift(double rho, double theta, double rho_limit = kPolarRhoLimit);
PolarPoint disk_drop(const DiskPoint& z);

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta);

}  // namespace hyptm
