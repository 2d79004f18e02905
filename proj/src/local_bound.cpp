#include "hyptm/local_bound.hpp"

#include <cmath>
#include <random>

#include "hyptm/field_ops.hpp"
#include "hyptm/functionals.hpp"
#include "hyptm/interpolate.hpp"

namespace hyptm {

GridPtr window_grid(const LocalBoundParams& params) {
  return PolarGrid::window(params.window_radius, params.n_r, params.n_theta);
}

double window_norm_sq(const Field& v, double lambda) {
  if (v.grid().kind() != GridKind::euclidean_window) throw std::invalid_argument("window_norm_sq: not a window field");
  return dirichlet_energy(v) + lambda * integrate_dx_of(v, [](double x) { return x * x; });
}

double window_tm(const Field& v, double q) {
  return integrate_dx_of(v, [q](double x) { return std::expm1(std::min(q * x * x, kExpSaturation)); });
}

Field scale_to_norm(Field v, double norm_sq, double lambda) {
  const double n = window_norm_sq(v, lambda);
  if (!(n > 0.0)) throw std::invalid_argument("scale_to_norm: zero field");
  v *= std::sqrt(norm_sq / n);
  return v;
}

Field random_window_field(const GridPtr& window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  const double radius = window->rho_max();
  struct Bump {
    double x, y, width, amp;
  };
  const double a0 = unit(rng), ax = unit(rng), ay = unit(rng);
  std::vector<Bump> bumps(static_cast<std::size_t>(count(rng)));
  for (Bump& b : bumps) {
    b.x = 0.7 * radius * unit(rng);
    b.y = 0.7 * radius * unit(rng);
    b.width = radius * (0.15 + 0.35 * (0.5 + 0.5 * unit(rng)));
    b.amp = 2.0 * unit(rng);
  }
  return Field::from_polar(window, [&](double r, double th) {
    const double x = r * std::cos(th);
    const double y = r * std::sin(th);
    double s = a0 + (ax * x + ay * y) / radius;
    for (const Bump& b : bumps) {
      const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
      s += b.amp * std::exp(-0.5 * d2 / (b.width * b.width));
    }
    return s;
  });
}

Field sample_window(const Field& u, const DiskPoint& center, const GridPtr& window) {
  if (window->kind() != GridKind::euclidean_window) throw std::invalid_argument("sample_window: not a window grid");
  if (!(center.abs() + window->rho_max() < 1.0)) {
    throw std::invalid_argument("sample_window: window does not fit inside the disk");
  }
  const FieldInterpolator interp(u);
  return Field::from_polar(window, [&](double r, double th) {
    const DiskPoint z(center.re() + r * std::cos(th), center.im() + r * std::sin(th));
    const PolarPoint p = disk_drop(z);
    return interp(p.rho, p.theta);
  });
}

LocalCalibration calibrate_local_constant(const GridPtr& window, double q, double lambda, std::uint64_t seed0,
                                          std::size_t count, double max_norm_sq) {
  LocalCalibration cal;
  cal.family_size = count;
  const double area = integrate_dx_of(Field(window), [](double) { return 1.0; });
  for (std::size_t k = 0; k < count; ++k) {
    const double n = max_norm_sq * static_cast<double>(k + 1) / static_cast<double>(count);
    const Field u = scale_to_norm(random_window_field(window, seed0 + k), n, lambda);
    const Field v = scale_to_norm(u, 1.0, lambda);
    cal.constant = std::max(cal.constant, area + window_tm(v, q));
    cal.max_norm_sq = std::max(cal.max_norm_sq, n);
  }
  return cal;
}

LocalBoundReport local_bound_check(const Field& v, double q, double lambda, double constant) {
  LocalBoundReport rep;
  rep.constant = constant;
  rep.norm_sq = window_norm_sq(v, lambda);
  if (rep.norm_sq >= 1.0) {
    throw HypothesisError("local bound: window norm " + std::to_string(rep.norm_sq) + " is not below 1");
  }
  rep.lhs = window_tm(v, q);
  rep.rhs = constant * rep.norm_sq / (1.0 - rep.norm_sq);
  rep.ok = rep.lhs <= rep.rhs;
  return rep;
}

LocalBoundReport local_tm_bound_check(const Field& u, const DiskPoint& center, double q, double lambda,
                                      double constant, const LocalBoundParams& params) {
  return local_bound_check(sample_window(u, center, window_grid(params)), q, lambda, constant);
}

}  // namespace hyptm
