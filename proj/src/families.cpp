#include "hyptm/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hyptm/field_ops.hpp"

namespace hyptm {

Field poly_bump(const GridPtr& grid, const DiskPoint& center, double radius, double amplitude) {
  if (!(radius > 0.0)) throw std::invalid_argument("poly_bump: radius must be positive");
  return Field::from_disk(grid, [&](const DiskPoint& z) {
    const double d = geodesic_distance(center, z);
    if (d >= radius) return 0.0;
    const double s = 1.0 - (d / radius) * (d / radius);
    return amplitude * s * s * s * s;
  });
}

Field sech_profile(const GridPtr& grid, const DiskPoint& center, double power, double amplitude) {
  return Field::from_disk(grid, [&](const DiskPoint& z) {
    const DiskPoint w = MobiusMap(center)(z);
    return amplitude * std::pow(w.complement(), 0.5 * power);
  });
}

double truncated_log_kink() { return std::atanh(std::exp(-1.0)); }

RadialField truncated_log(const RadialGrid& grid) {
  const double kink = truncated_log_kink();
  return RadialField::from_profile(grid, [kink](double rho) { return rho <= kink ? 1.0 : log_inverse_radius(rho); });
}

RadialField one_minus_r2(const RadialGrid& grid) {
  return RadialField::from_profile(grid, [](double rho) {
    const double c = 1.0 / std::cosh(rho);
    return c * c;
  });
}

Field with_energy(Field u, double energy) {
  const double e = dirichlet_energy(u);
  if (!(e > 0.0)) throw std::invalid_argument("with_energy: field has zero energy");
  u *= std::sqrt(energy / e);
  return u;
}

RadialField with_energy(const RadialField& u, double energy) {
  const double e = dirichlet_energy(u);
  if (!(e > 0.0)) throw std::invalid_argument("with_energy: field has zero energy");
  const double c = std::sqrt(energy / e);
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x *= c;
  return RadialField(u.grid(), std::move(v));
}

Field random_smooth_field(const GridPtr& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Field u(grid);
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    const double dist = 1.5 * unit(rng);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double radius = 1.5 + 1.5 * unit(rng);
    const double amp = (unit(rng) < 0.3 ? -1.0 : 1.0) * (0.3 + unit(rng));
    u += poly_bump(grid, polar_lift(dist, angle), radius, amp);
  }
  if (u.is_zero()) u = poly_bump(grid, DiskPoint{}, 2.0);
  return with_energy(std::move(u), 1.0);
}

RadialGrid moser_grid(double rho_max, double rho_min, double growth, double h_max, const std::vector<long>& kinks) {
  std::vector<double> breaks;
  breaks.reserve(kinks.size());
  for (long k : kinks) {
    if (k < 2) throw std::invalid_argument("moser_grid: k must be at least 2");
    breaks.push_back(std::atanh(1.0 / static_cast<double>(k)));
  }
  return RadialGrid::graded(rho_max, rho_min, growth, h_max).with_breakpoints(breaks);
}

RadialGrid moser_grid_for(long k_max, double rho_max) {
  std::vector<long> kinks;
  for (long k = 2; k <= k_max; k *= 2) kinks.push_back(k);
  const double rho_min = std::atanh(1.0 / static_cast<double>(k_max)) / 8.0;
  return moser_grid(rho_max, rho_min, 0.002, 0.01, kinks);
}

}  // namespace hyptm
