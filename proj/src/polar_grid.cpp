#include "hyptm/polar_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hyptm {

double metric_area_factor(double rho) { return 0.5 * std::sinh(2.0 * rho); }

double log_inverse_radius(double rho) {
  // coth(rho) - 1 = 2 / expm1(2 rho)
  return std::log1p(2.0 / std::expm1(2.0 * rho));
}

RadialGrid::RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("RadialGrid: need at least two nodes");
  double prev = 0.0;
  for (double x : nodes_) {
    if (!std::isfinite(x) || !(x > prev)) {
      throw std::invalid_argument("RadialGrid: nodes must be positive and strictly increasing");
    }
    prev = x;
  }
  const std::size_t n = nodes_.size();
  widths_.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = i == 0 ? 0.0 : nodes_[i - 1];
    widths_[i] = 0.5 * (nodes_[i + 1] - lo);
  }
  widths_[n - 1] = 0.5 * (nodes_[n - 1] - nodes_[n - 2]);
}

RadialGrid RadialGrid::uniform(double rho_max, std::size_t n) {
  if (!(rho_max > 0.0) || n < 2) throw std::invalid_argument("RadialGrid::uniform: bad parameters");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rho_max * static_cast<double>(i + 1) / static_cast<double>(n);
  v.back() = rho_max;
  return RadialGrid(std::move(v));
}

RadialGrid RadialGrid::graded(double rho_max, double rho_min, double growth, double h_max) {
  if (!(rho_min > 0.0) || !(rho_max > rho_min) || !(growth > 0.0) || !(h_max > 0.0)) {
    throw std::invalid_argument("RadialGrid::graded: bad parameters");
  }
  std::vector<double> v{rho_min};
  while (growth * v.back() < h_max && v.back() * (1.0 + growth) < rho_max) {
    v.push_back(v.back() * (1.0 + growth));
  }
  const double start = v.back();
  const double rest = rho_max - start;
  const auto n_uniform = static_cast<std::size_t>(std::ceil(rest / h_max - 1e-12));
  for (std::size_t k = 1; k <= n_uniform; ++k) {
    v.push_back(start + rest * static_cast<double>(k) / static_cast<double>(n_uniform));
  }
  v.back() = rho_max;
  return RadialGrid(std::move(v));
}

RadialGrid RadialGrid::with_breakpoints(std::span<const double> breakpoints) const {
  std::vector<double> v = nodes_;
  std::vector<bool> claimed(v.size(), false);
  for (double b : breakpoints) {
    if (!(b > 0.0) || !(b < outer())) continue;
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), b);
    auto k = static_cast<std::size_t>(it - nodes_.begin());
    if (k > 0 && (k == nodes_.size() || b - nodes_[k - 1] < nodes_[k] - b)) --k;
    if (k == nodes_.size() - 1) {
      if (k == 0) continue;
      --k;  // the outer node stays fixed
    }
    if (claimed[k]) throw std::invalid_argument("RadialGrid: breakpoints closer than the grid spacing");
    claimed[k] = true;
    v[k] = b;
  }
  return RadialGrid(std::move(v));
}

PolarGrid::PolarGrid(GridKind kind, RadialGrid radial, std::size_t n_theta)
    : kind_(kind), radial_(std::move(radial)), n_theta_(n_theta) {
  if (n_theta_ == 0) throw std::invalid_argument("PolarGrid: n_theta must be positive");
  dtheta_ = 2.0 * std::numbers::pi / static_cast<double>(n_theta_);
  const std::size_t n = radial_.size();
  const auto nodes = radial_.nodes();
  const auto widths = radial_.widths();
  const bool hyper = kind_ == GridKind::hyperbolic_disk;
  auto area = [hyper](double s) { return hyper ? metric_area_factor(s) : s; };

  edge_coef_.resize(n);
  ring_coef_.resize(n);
  weight_.resize(n);
  euclid_weight_.resize(n);
  metric_a_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? 0.0 : nodes[i - 1];
    const double h = nodes[i] - lo;
    edge_coef_[i] = area(0.5 * (lo + nodes[i])) / h;
    metric_a_[i] = area(nodes[i]);
    ring_coef_[i] = widths[i] / metric_a_[i];
    weight_[i] = widths[i] * metric_a_[i] * dtheta_;
    if (hyper) {
      const double sech = 1.0 / std::cosh(nodes[i]);
      euclid_weight_[i] = widths[i] * std::tanh(nodes[i]) * sech * sech * dtheta_;
    } else {
      euclid_weight_[i] = weight_[i];
    }
  }
  // Both integrands behave like f(0) rho near the origin; the trapezoid rule
  // then misses (spacing^2 / 12) f(0) per unit angle.
  const double origin_fix = nodes[0] * (nodes[1] - nodes[0]) / 12.0 * dtheta_;
  weight_[0] += origin_fix;
  euclid_weight_[0] += origin_fix;
}

GridPtr PolarGrid::hyperbolic(RadialGrid radial, std::size_t n_theta) {
  if (radial.outer() > 18.0) throw std::invalid_argument("PolarGrid: rho_max above 18 is not representable");
  return GridPtr(new PolarGrid(GridKind::hyperbolic_disk, std::move(radial), n_theta));
}

GridPtr PolarGrid::hyperbolic_uniform(double rho_max, std::size_t n_rho, std::size_t n_theta) {
  return hyperbolic(RadialGrid::uniform(rho_max, n_rho), n_theta);
}

GridPtr PolarGrid::window(double radius, std::size_t n_r, std::size_t n_theta) {
  return GridPtr(new PolarGrid(GridKind::euclidean_window, RadialGrid::uniform(radius, n_r), n_theta));
}

bool same_grid(const PolarGrid& a, const PolarGrid& b) { return &a == &b || a == b; }

}  // namespace hyptm
