#pragma once

#include "hyptm/disk_geom.hpp"
#include "hyptm/field.hpp"

namespace hyptm {

/// Tail density above which integrate_dmu flags a truncation suspect.
inline constexpr double kDefaultTailTol = 1e-6;

/// Discrete Dirichlet form: staggered differences, radial edges weighted by
/// A at the edge midpoint, angular edges by the trapezoid width over A. This
/// is the quadratic form whose Euler-Lagrange operator is the 5-point
/// Laplacian used by the Poisson solver, so energies, inner products and
/// Riesz gradients are mutually consistent.
double dirichlet_inner(const Field& u, const Field& v);
double dirichlet_energy(const Field& u);
double dirichlet_energy(const RadialField& u);

struct Quadrature {
  double value = 0.0;
  /// Angular integral of |integrand| * A on the outermost interior ring.
  double tail_density = 0.0;
  bool tail_warning = false;
};

/// Trapezoid quadrature of g against the grid's native measure (d(mu) on a
/// hyperbolic grid, dx on a window).
Quadrature integrate_dmu(const Field& g, double tail_tol = kDefaultTailTol);
/// Trapezoid quadrature of g against Euclidean dx.
Quadrature integrate_dx(const Field& g, double tail_tol = kDefaultTailTol);

/// Sum over nodes of w_i * f(u_ij) for the native measure; the workhorse of
/// every nonlinear functional.
double integrate_dmu_of(const Field& u, const std::function<double(double)>& f);
double integrate_dx_of(const Field& u, const std::function<double(double)>& f);

struct Pullback {
  Field field;
  /// Largest |u| on source nodes whose image falls outside the output grid.
  double leaked_max = 0.0;
  bool leaked = false;
};

/// u o eta_zeta sampled on out_grid (defaults to u's grid) by bicubic
/// interpolation. The shifted function is centered at zeta.
Pullback pullback_checked(const Field& u, const DiskPoint& zeta, GridPtr out_grid = nullptr,
                          double leak_tol = 1e-8);
inline Field pullback(const Field& u, const DiskPoint& zeta) { return pullback_checked(u, zeta).field; }

/// h_s u(r) = s^{-1/2} u(r^s). The result lives on the transported grid
/// r_i^{1/s}, so its samples are exact: no interpolation is involved and kinks
/// stay on nodes.
RadialField dilate_radial(const RadialField& u, double s);

/// Cubic resampling of a radial profile onto another grid.
RadialField resample(const RadialField& u, const RadialGrid& grid);

/// max over nodes of |u(r)| / sqrt(log(1/r)), r = tanh(rho). A lower bound
/// of the supremum over (0, 1).
double weighted_sup_norm(const RadialField& u);

/// dirichlet_energy(u) / integral of u^2 d(mu). Throws std::domain_error for
/// the zero field.
double hardy_ratio(const Field& u);
double hardy_ratio(const RadialField& u);

}  // namespace hyptm
