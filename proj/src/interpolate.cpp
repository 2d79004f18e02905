#include "hyptm/interpolate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hyptm {

namespace {

// Cubic Lagrange weights for nodes -1, 0, 1, 2 at offset t in [0, 1).
std::array<double, 4> uniform_cubic_weights(double t) {
  return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

std::array<double, 4> lagrange_weights(const std::array<double, 4>& x, double at) {
  std::array<double, 4> w{};
  for (int a = 0; a < 4; ++a) {
    double num = 1.0;
    double den = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      num *= at - x[b];
      den *= x[a] - x[b];
    }
    w[a] = num / den;
  }
  return w;
}

double ring_mean(const Field& u, std::size_t i) {
  const auto r = u.ring(i);
  double s = 0.0;
  for (double v : r) s += v;
  return s / static_cast<double>(r.size());
}

// Ring means extrapolated to rho = 0, exact for a + b rho^2.
double origin_estimate(const Field& u) {
  const PolarGrid& g = u.grid();
  if (g.n_rho() < 2) return u.origin_value();
  const double a = g.rho(0) * g.rho(0);
  const double b = g.rho(1) * g.rho(1);
  return (b * ring_mean(u, 0) - a * ring_mean(u, 1)) / (b - a);
}

}  // namespace

FieldInterpolator::FieldInterpolator(const Field& field) : field_(field), origin_(origin_estimate(field)) {}

// Extended radial index: 0 is the origin, k > 0 is ring k-1, k < 0 is ring
// -k-1 reflected through the origin.
double FieldInterpolator::ext_radius(long ext) const {
  if (ext == 0) return 0.0;
  const double r = field_.grid().rho(static_cast<std::size_t>(std::labs(ext) - 1));
  return ext > 0 ? r : -r;
}

double FieldInterpolator::ring_at(long ext, double theta) const {
  if (ext == 0) return origin_;
  const PolarGrid& g = field_.grid();
  if (ext < 0) theta += std::numbers::pi;
  const auto ring = field_.ring(static_cast<std::size_t>(std::labs(ext) - 1));
  const std::size_t m = g.n_theta();
  if (m == 1) return ring[0];
  const double s = wrap_angle(theta) / g.dtheta();
  const double fl = std::floor(s);
  const auto j0 = static_cast<long>(fl);
  const auto w = uniform_cubic_weights(s - fl);
  const auto ml = static_cast<long>(m);
  double v = 0.0;
  for (long a = 0; a < 4; ++a) {
    const long j = ((j0 - 1 + a) % ml + ml) % ml;
    v += w[static_cast<std::size_t>(a)] * ring[static_cast<std::size_t>(j)];
  }
  return v;
}

double FieldInterpolator::operator()(double radius, double theta) const {
  const PolarGrid& g = field_.grid();
  const auto nodes = g.radial().nodes();
  const auto n = static_cast<long>(nodes.size());
  if (radius >= g.rho_max()) {
    return g.dirichlet_outer() ? 0.0 : ring_at(n, theta);
  }
  radius = std::max(radius, 0.0);
  // Interval [ext_radius(e), ext_radius(e + 1)) containing radius, e >= 0.
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), radius);
  long e = static_cast<long>(it - nodes.begin());
  long first = e - 1;
  if (first + 3 > n) first = n - 3;
  std::array<double, 4> x{};
  std::array<double, 4> y{};
  for (long a = 0; a < 4; ++a) {
    x[static_cast<std::size_t>(a)] = ext_radius(first + a);
    y[static_cast<std::size_t>(a)] = ring_at(first + a, theta);
  }
  const auto w = lagrange_weights(x, radius);
  return w[0] * y[0] + w[1] * y[1] + w[2] * y[2] + w[3] * y[3];
}

double interpolate_radial(const RadialField& u, double rho) {
  FieldInterpolator interp(u.as_field());
  return interp(std::abs(rho), 0.0);
}

}  // namespace hyptm
