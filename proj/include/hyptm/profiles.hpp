#pragma once

// Planted sequences for the profile decomposition and the comparison of the
// extracted profiles with the planted ones.
//
// Scenarios:
//   none    zero fields
//   single  one bump of energy 1 at a fixed off-center point
//   pair    bumps of energy 0.6 and 0.4 at +-s/2 on the real axis, the
//           separation s growing along the sequence
// Planted fields are sampled from closed forms, never interpolated.

#include <string>
#include <vector>

#include "hyptm/variational.hpp"

namespace hyptm {

struct ScenarioParams {
  double bump_radius = 0.8;
  std::vector<double> separations{1.0, 1.6, 2.2, 2.8, 3.4, 4.0};
  std::vector<double> energies{0.6, 0.4};
  double single_offset = 0.5;
  double energy_floor = 0.05;
  /// Relative energy tolerance for the single scenario and for the others.
  double single_tolerance = 0.02;
  double multi_tolerance = 0.05;
  ProfileOptions extraction{};
};

GridPtr default_profile_grid();

struct PlantedSequence {
  std::vector<Field> fields;
  /// Planted profiles, centered at the origin.
  std::vector<Field> profiles;
  std::vector<double> energies;
  /// centers[n][k]: location of profile n in field k.
  std::vector<std::vector<DiskPoint>> centers;
};

/// Throws std::invalid_argument for an unknown scenario name.
PlantedSequence planted_sequence(const std::string& scenario, const GridPtr& grid, const ScenarioParams& params = {});

struct RecoveryReport {
  std::string scenario;
  ProfileReport extraction;
  std::vector<double> planted_energies;
  /// Relative energy error of profile n against planted profile n (both in
  /// decreasing energy order).
  std::vector<double> energy_errors;
  /// Distance between the recovered centers of the first two profiles per field.
  std::vector<double> separations;
  double energy_tolerance = 0.0;
  bool count_ok = false;
  bool energies_ok = false;
  bool separations_diverge = true;
  /// The last remainder norm is below half the first.
  bool residuals_decay = true;
  /// Every remainder norm is <= its predecessor (reported, not required).
  bool residuals_monotone = true;
  bool ok = false;
};

RecoveryReport run_profile_scenario(const std::string& scenario, const GridPtr& grid,
                                    const ScenarioParams& params = {});

}  // namespace hyptm
