#pragma once

// Tensor grids in polar coordinates (radius x angle).
//
// Two geometries share the same discrete machinery:
//   * hyperbolic_disk: coordinate rho with r = tanh(rho); Dirichlet integrand
//     u_rho^2 A + u_theta^2 / A with A(rho) = sinh(rho) cosh(rho); measure
//     d(mu) = A d(rho) d(theta); values vanish on the outer ring rho_max.
//   * euclidean_window: a Euclidean disk of radius R in ordinary polar
//     coordinates (A(r) = r), free outer boundary. Used for local estimates
//     on sub-disks.
//
// The origin is not stored. Its value is the mean of the innermost ring,
// which is the minimizer of the origin edge terms of the Dirichlet form.
// Quadrature is the trapezoidal rule in radius (the origin carries zero
// weight since A(0) = 0) with the Euler-Maclaurin end correction at the
// origin folded into the innermost ring, and the periodic rectangle rule in
// angle.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hyptm {

inline constexpr double kDefaultRhoMax = 12.0;
inline constexpr std::size_t kDefaultNRho = 512;
inline constexpr std::size_t kDefaultNTheta = 256;

/// Strictly increasing positive radii; the last one is the outer radius.
class RadialGrid {
 public:
  explicit RadialGrid(std::vector<double> nodes);

  /// n nodes rho_max/n, 2 rho_max/n, ..., rho_max.
  static RadialGrid uniform(double rho_max, std::size_t n);

  /// Geometric spacing (ratio 1 + growth) from rho_min until the spacing
  /// reaches h_max, then uniform up to rho_max.
  static RadialGrid graded(double rho_max, double rho_min, double growth, double h_max);

  /// Moves the nearest node onto each breakpoint so that kinks of piecewise
  /// profiles are represented exactly. Breakpoints outside (0, rho_max) are
  /// ignored. Throws if two breakpoints claim the same node.
  RadialGrid with_breakpoints(std::span<const double> breakpoints) const;

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double outer() const { return nodes_.back(); }
  /// Trapezoid half-widths (rho_{i+1} - rho_{i-1}) / 2 with rho_{-1} = 0 and a
  /// half cell at the outer node.
  std::span<const double> widths() const { return widths_; }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) { return a.nodes_ == b.nodes_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> widths_;
};

enum class GridKind { hyperbolic_disk, euclidean_window };

class PolarGrid;
using GridPtr = std::shared_ptr<const PolarGrid>;

class PolarGrid {
 public:
  static GridPtr hyperbolic(RadialGrid radial, std::size_t n_theta);
  static GridPtr hyperbolic_uniform(double rho_max = kDefaultRhoMax, std::size_t n_rho = kDefaultNRho,
                                    std::size_t n_theta = kDefaultNTheta);
  /// Euclidean disk of the given radius with n_r uniform rings.
  static GridPtr window(double radius, std::size_t n_r, std::size_t n_theta);

  GridKind kind() const { return kind_; }
  bool dirichlet_outer() const { return kind_ == GridKind::hyperbolic_disk; }
  const RadialGrid& radial() const { return radial_; }
  std::size_t n_rho() const { return radial_.size(); }
  std::size_t n_theta() const { return n_theta_; }
  std::size_t size() const { return n_rho() * n_theta_; }
  double dtheta() const { return dtheta_; }
  double theta(std::size_t j) const { return static_cast<double>(j) * dtheta_; }
  double rho(std::size_t i) const { return radial_[i]; }
  double rho_max() const { return radial_.outer(); }

  /// Radial Dirichlet-form coefficient of the edge between ring i-1 and ring
  /// i (i = 0 is the edge to the origin): A(mid) / spacing.
  double edge_coef(std::size_t i) const { return edge_coef_[i]; }
  /// Angular Dirichlet-form coefficient of ring i: width_i / A(rho_i).
  double ring_coef(std::size_t i) const { return ring_coef_[i]; }
  /// Quadrature weight of a node on ring i for the native measure (d(mu) on
  /// the hyperbolic disk, dx on a window), including d(theta).
  double weight(std::size_t i) const { return weight_[i]; }
  /// Quadrature weight of a node on ring i for Euclidean dx. On a window this
  /// equals weight(i).
  double euclid_weight(std::size_t i) const { return euclid_weight_[i]; }
  /// Metric factor A at ring i.
  double metric_a(std::size_t i) const { return metric_a_[i]; }

  friend bool operator==(const PolarGrid& a, const PolarGrid& b) {
    return a.kind_ == b.kind_ && a.n_theta_ == b.n_theta_ && a.radial_ == b.radial_;
  }

 private:
  PolarGrid(GridKind kind, RadialGrid radial, std::size_t n_theta);

  GridKind kind_;
  RadialGrid radial_;
  std::size_t n_theta_;
  double dtheta_;
  std::vector<double> edge_coef_;
  std::vector<double> ring_coef_;
  std::vector<double> weight_;
  std::vector<double> euclid_weight_;
  std::vector<double> metric_a_;
};

bool same_grid(const PolarGrid& a, const PolarGrid& b);

/// sinh(rho) cosh(rho)
double metric_area_factor(double rho);
/// log(1 / tanh(rho)) without cancellation for large rho.
double log_inverse_radius(double rho);

}  // namespace hyptm
