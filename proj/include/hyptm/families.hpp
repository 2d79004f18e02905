#pragma once

// Built-in test fields. Everything here samples closed-form functions at
// grid nodes; nothing is interpolated.

#include <cstdint>
#include <vector>

#include "hyptm/field.hpp"

namespace hyptm {

/// (1 - (d/R)^2)^4 for d = d(center, z) < R, else 0. C^3, compactly supported.
Field poly_bump(const GridPtr& grid, const DiskPoint& center, double radius, double amplitude = 1.0);

/// sech(d(center, z))^power = (1 - |eta_center(z)|^2)^{power/2}.
Field sech_profile(const GridPtr& grid, const DiskPoint& center, double power, double amplitude = 1.0);

/// log(1 / max(r, e^{-1})). Dirichlet energy 2 pi; kink at r = e^{-1}.
RadialField truncated_log(const RadialGrid& grid);
/// Hyperbolic radius of the kink of truncated_log.
double truncated_log_kink();

/// 1 - r^2 = sech^2(rho). Energy 2 pi, mass against d(mu) pi.
RadialField one_minus_r2(const RadialGrid& grid);

/// Rescales a nonzero field to the given Dirichlet energy.
Field with_energy(Field u, double energy);
RadialField with_energy(const RadialField& u, double energy);

/// A random superposition of 1-3 poly bumps with centers within hyperbolic
/// distance 1.5 of the origin, radii in [1.5, 3] and signed amplitudes,
/// normalized to unit energy. Deterministic in the seed.
Field random_smooth_field(const GridPtr& grid, std::uint64_t seed);

/// Graded radial grid for Moser profiles: geometric spacing from rho_min,
/// uniform spacing h_max further out, with nodes placed exactly on the kinks
/// artanh(1/k) of every k in kinks.
RadialGrid moser_grid(double rho_max, double rho_min, double growth, double h_max,
                      const std::vector<long>& kinks);

/// moser_grid with defaults suited to k up to k_max (powers of two get nodes).
RadialGrid moser_grid_for(long k_max, double rho_max = 12.0);

}  // namespace hyptm
