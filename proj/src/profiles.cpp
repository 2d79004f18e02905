#include "hyptm/profiles.hpp"

#include <cmath>
#include <numbers>

#include "hyptm/families.hpp"
#include "hyptm/field_ops.hpp"

namespace hyptm {

GridPtr default_profile_grid() { return PolarGrid::hyperbolic_uniform(6.0, 256, 512); }

namespace {

// Amplitude giving the centered bump the requested energy.
double bump_amplitude(const GridPtr& grid, double radius, double energy) {
  const double e = dirichlet_energy(poly_bump(grid, DiskPoint{}, radius));
  return std::sqrt(energy / e);
}

}  // namespace

PlantedSequence planted_sequence(const std::string& scenario, const GridPtr& grid, const ScenarioParams& params) {
  PlantedSequence s;
  const std::size_t n = params.separations.size();
  if (scenario == "none") {
    for (std::size_t k = 0; k < std::max<std::size_t>(n, 3); ++k) s.fields.emplace_back(grid);
    return s;
  }
  if (scenario == "single") {
    const double amp = bump_amplitude(grid, params.bump_radius, 1.0);
    const DiskPoint c = polar_lift(params.single_offset, 0.0);
    s.profiles.push_back(poly_bump(grid, DiskPoint{}, params.bump_radius, amp));
    s.energies.push_back(1.0);
    s.centers.emplace_back(std::max<std::size_t>(n, 3), c);
    for (std::size_t k = 0; k < s.centers[0].size(); ++k) {
      s.fields.push_back(poly_bump(grid, c, params.bump_radius, amp));
    }
    return s;
  }
  if (scenario == "pair") {
    if (params.energies.size() != 2) throw std::invalid_argument("pair scenario: two energies required");
    s.centers.resize(2);
    for (std::size_t p = 0; p < 2; ++p) {
      const double amp = bump_amplitude(grid, params.bump_radius, params.energies[p]);
      s.profiles.push_back(poly_bump(grid, DiskPoint{}, params.bump_radius, amp));
      s.energies.push_back(params.energies[p]);
    }
    for (double sep : params.separations) {
      const DiskPoint a = polar_lift(0.5 * sep, 0.0);
      const DiskPoint b = polar_lift(0.5 * sep, std::numbers::pi);
      s.centers[0].push_back(a);
      s.centers[1].push_back(b);
      Field u = poly_bump(grid, a, params.bump_radius, bump_amplitude(grid, params.bump_radius, params.energies[0]));
      u += poly_bump(grid, b, params.bump_radius, bump_amplitude(grid, params.bump_radius, params.energies[1]));
      s.fields.push_back(std::move(u));
    }
    return s;
  }
  throw std::invalid_argument("unknown profile scenario '" + scenario + "' (expected single, pair or none)");
}

RecoveryReport run_profile_scenario(const std::string& scenario, const GridPtr& grid, const ScenarioParams& params) {
  const PlantedSequence planted = planted_sequence(scenario, grid, params);
  RecoveryReport rep;
  rep.scenario = scenario;
  rep.planted_energies = planted.energies;
  rep.energy_tolerance = scenario == "single" ? params.single_tolerance : params.multi_tolerance;
  rep.extraction = profile_extract(planted.fields, params.energy_floor, params.extraction);
  const ProfileReport& ex = rep.extraction;

  rep.count_ok = ex.profiles.size() == planted.profiles.size();
  rep.energies_ok = rep.count_ok;
  for (std::size_t p = 0; p < std::min(ex.profile_energies.size(), planted.energies.size()); ++p) {
    const double err = std::abs(ex.profile_energies[p] - planted.energies[p]) / planted.energies[p];
    rep.energy_errors.push_back(err);
    if (!(err < rep.energy_tolerance)) rep.energies_ok = false;
  }
  if (ex.centers_per_step.size() >= 2) {
    for (std::size_t k = 0; k < ex.centers_per_step[0].size(); ++k) {
      rep.separations.push_back(geodesic_distance(ex.centers_per_step[0][k], ex.centers_per_step[1][k]));
      if (k > 0 && !(rep.separations[k] > rep.separations[k - 1])) rep.separations_diverge = false;
    }
  }
  if (scenario == "pair") {
    const auto& r = ex.residual_dmu_norms;
    for (std::size_t k = 1; k < r.size(); ++k) {
      if (!(r[k] <= r[k - 1])) rep.residuals_monotone = false;
    }
    rep.residuals_decay = !r.empty() && r.back() < 0.5 * r.front();
  }
  rep.ok = rep.count_ok && rep.energies_ok && ex.energy_inequality_ok && ex.converged &&
           (scenario != "pair" || (rep.separations_diverge && rep.residuals_decay));
  return rep;
}

}  // namespace hyptm
