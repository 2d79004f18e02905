#pragma once

// Dirichlet problem for the discrete Dirichlet form on a hyperbolic grid:
// find v, zero on the outer ring, with dirichlet_inner(v, phi) = sum of
// load_ij * phi_ij for every phi vanishing on the outer ring.
//
// The form is diagonalized by the discrete Fourier transform in angle, which
// leaves one real tridiagonal system per angular mode.

#include "hyptm/field.hpp"

namespace hyptm {

struct PoissonSolution {
  Field solution;
  /// ||K v - load|| / ||load|| over interior nodes (0 for a zero load).
  double relative_residual = 0.0;
  bool converged = true;
};

/// Load-space action of the form: (K v)_ij = d/dv_ij of dirichlet_energy / 2.
/// Outer-ring entries are 0.
std::vector<double> apply_dirichlet_form(const Field& v);

/// Solves K v = load. load.size() must equal the grid size; outer-ring
/// entries are ignored. converged is false when the residual exceeds tol.
PoissonSolution solve_dirichlet_form(const GridPtr& grid, const std::vector<double>& load, double tol = 1e-10);

/// -Laplace_g v = density, i.e. load_ij = weight_i * density_ij.
PoissonSolution solve_poisson_density(const Field& density, double tol = 1e-10);

}  // namespace hyptm
