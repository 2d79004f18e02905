#include "hyptm/disk_geom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hyptm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

DiskPoint::DiskPoint(double re, double im) : z_(re, im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw std::domain_error("DiskPoint: non-finite coordinate");
  }
  const double r = std::abs(z_);
  if (!(r < 1.0)) {
    throw std::domain_error("DiskPoint: |z| = " + std::to_string(r) + " is not inside the unit disk");
  }
  complement_ = (1.0 - r) * (1.0 + r);
}

DiskPoint::DiskPoint(std::complex<double> z, double complement) : z_(z), complement_(complement) {
  // Keep |z| < 1 in floating point; the complement holds the exact position.
  const double r = std::abs(z_);
  if (r >= 1.0) {
    z_ *= std::nextafter(1.0, 0.0) / r;
  }
}

DiskPoint DiskPoint::operator-() const { return DiskPoint(-z_, complement_); }

bool operator==(const DiskPoint& a, const DiskPoint& b) { return a.z() == b.z(); }

DiskPoint MobiusMap::apply(const DiskPoint& z) const {
  const std::complex<double> zeta = center_.z();
  const std::complex<double> den = 1.0 - std::conj(zeta) * z.z();
  const std::complex<double> w = (z.z() - zeta) / den;
  const double complement = center_.complement() * z.complement() / std::norm(den);
  return DiskPoint(w, complement);
}

double MobiusMap::jacobian(const DiskPoint& z) const {
  const std::complex<double> den = 1.0 - std::conj(center_.z()) * z.z();
  const double d2 = std::norm(den);
  return center_.complement() * center_.complement() / (d2 * d2);
}

Distance geodesic_distance_checked(const DiskPoint& a, const DiskPoint& b) {
  // sinh^2 d = |a - b|^2 / ((1 - |a|^2)(1 - |b|^2))
  const double num = std::norm(a.z() - b.z());
  if (num == 0.0) return {};
  const double s2 = num / (a.complement() * b.complement());
  const double d = std::asinh(std::sqrt(s2));
  if (!(d <= kDistanceCap)) return {kDistanceCap, true};
  return {d, false};
}

double ball_area(double rho) {
  const double s = std::sinh(rho);
  return std::numbers::pi * s * s;
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

DiskPoint polar_lift(double rho, double theta, double rho_limit) {
  if (!(rho >= 0.0)) throw std::domain_error("polar_lift: rho must be nonnegative");
  if (rho > rho_limit) {
    throw std::domain_error("polar_lift: rho = " + std::to_string(rho) + " exceeds the limit " +
                            std::to_string(rho_limit));
  }
  if (!std::isfinite(theta)) throw std::domain_error("polar_lift: non-finite angle");
  const double r = std::tanh(rho);
  const double c = 1.0 / std::cosh(rho);
  return DiskPoint(std::polar(r, wrap_angle(theta)), c * c);
}

PolarPoint disk_drop(const DiskPoint& z) {
  const double r = z.abs();
  if (r == 0.0) return {};
  // artanh r = 0.5 log((1 + r) / (1 - r)) with 1 - r taken from the complement.
  const double one_minus_r = z.complement() / (1.0 + r);
  const double rho = 0.5 * std::log((1.0 + r) / one_minus_r);
  return {rho, wrap_angle(std::arg(z.z()))};
}

}  // namespace hyptm
