#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyptm/errors.hpp"
#include "hyptm/field.hpp"
#include "hyptm/functionals.hpp"

namespace hyptm {

// ---------------------------------------------------------------- Moser probe

/// m_k(r) = sqrt(log k / 2 pi) for r <= 1/k, log(1/r) / sqrt(2 pi log k)
/// beyond. Throws ResolutionError unless the kink artanh(1/k) lies strictly
/// inside the grid with at least one node below it.
RadialField moser_field(long k, const RadialGrid& grid);
/// m_k on moser_grid_for(max(k, 1024)).
RadialField moser_field(long k);

struct ProbeEntry {
  long k = 0;
  double value = 0.0;
  bool saturated = false;
  bool tail_warning = false;
};

/// tm_invariant(m_k, p) along ks, all on `grid`.
std::vector<ProbeEntry> blowup_probe(double p, const std::vector<long>& ks, const RadialGrid& grid);
/// The same on moser_grid_for(max k).
std::vector<ProbeEntry> blowup_probe(double p, const std::vector<long>& ks);

struct ProbeVerdict {
  /// max / min of the values.
  double spread = 0.0;
  /// value at the largest k over value at the smallest k.
  double growth = 0.0;
  bool monotone = false;
  bool any_saturated = false;
  /// growth >= 10, monotone and unsaturated.
  bool growing = false;
};
ProbeVerdict probe_verdict(const std::vector<ProbeEntry>& entries, double growth_factor = 10.0);

// ---------------------------------------------------------- Riesz gradient

struct RieszGradient {
  Field gradient;
  double relative_residual = 0.0;
  bool converged = true;
};

/// v with dirichlet_inner(v, phi) = sum_nodes w_i F'(u_ij) phi_ij for every
/// phi vanishing on the outer ring: the gradient of u -> int F(u) d(mu) in
/// the Dirichlet inner product.
RieszGradient riesz_gradient(const Field& u, const Nonlinearity& f);

// --------------------------------------------------------------- recentering

struct RecenterResult {
  Field field;
  /// Location of the mass peak of u; field = u o eta_{-zeta}.
  DiskPoint zeta;
  double ball_mass = 0.0;
  bool ambiguous = false;
  double runner_up_mass = 0.0;
};

/// int over V_radius(center) of u^2 d(mu): a midpoint rule on the ball, u
/// evaluated by bicubic interpolation.
double ball_mass(const Field& u, const DiskPoint& center, double radius = 1.0);

/// Mass peak: the node maximizing a smooth ball average of u^2 d(mu) over
/// nodes with u^2 >= max/4 (strided to at most 4096 candidates), moved off
/// the grid to the Moebius barycenter of the ball-weighted mass. A second peak more than 2 radius
/// away within 5 % of the best makes the result ambiguous; the peak first in
/// grid order is taken.
/// Throws std::invalid_argument for the zero field.
RecenterResult locate_peak(const Field& u, double radius = 1.0);
/// locate_peak followed by the pullback that moves the peak to the origin.
RecenterResult recenter(const Field& u, double radius = 1.0);

// ----------------------------------------------------------------- maximize

struct OptimizerConfig {
  /// Energy level in (0, 1].
  double t = 1.0;
  double step = 1.0;
  std::size_t max_iters = 500;
  double grad_tol = 1e-6;
  /// 0 disables recentering.
  std::size_t recenter_every = 10;
  /// Recentering is applied only for shifts of at least this many innermost
  /// radial cells.
  double recenter_min_cells = 0.05;
  double armijo = 1e-4;
  std::size_t max_halvings = 30;
  /// Defaults to a centered poly bump of radius 2 on the default grid.
  std::optional<Field> seed_field;
};

enum class OptimizerStatus { converged, max_iters, stagnated };
std::string to_string(OptimizerStatus s);

enum class StepKind { initial, ascent, recenter };

struct RecenterEvent {
  std::size_t iteration = 0;
  DiskPoint shift;
  double distance = 0.0;
  bool applied = false;
  bool ambiguous = false;
  double objective_before = 0.0;
  double objective_after = 0.0;
};

struct OptimizerTrace {
  std::vector<double> objective_history;
  std::vector<StepKind> step_kinds;
  std::vector<double> residual_history;
  std::vector<double> step_sizes;
  std::vector<double> constraint_drift;
  std::vector<DiskPoint> recenter_shifts;
  std::vector<RecenterEvent> recenter_events;
  std::optional<Field> final_field;
  OptimizerStatus status = OptimizerStatus::max_iters;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  double max_constraint_drift = 0.0;
  /// Largest residual of the Poisson solves.
  double max_solver_residual = 0.0;

  /// Every ascent entry strictly exceeds its predecessor.
  bool ascent_monotone() const;
  double final_objective() const { return objective_history.empty() ? 0.0 : objective_history.back(); }
};

/// Projected gradient ascent of int F(u) d(mu) on the sphere
/// dirichlet_energy(u) = t with Armijo backtracking and periodic recentering.
/// Throws std::invalid_argument for an invalid config or a zero-energy seed.
OptimizerTrace maximize(const OptimizerConfig& config, const Nonlinearity& f);

GridPtr default_optimizer_grid();
Field default_seed(const GridPtr& grid, double t);

// ---------------------------------------------------------- vanishing check

struct VanishingEntry {
  double concentration = 0.0;
  double f_value = 0.0;
};

struct VanishingReport {
  std::vector<VanishingEntry> entries;
  bool concentration_decays = false;
  bool functional_decays = false;
  /// Decay of the concentration is accompanied by decay of the functional.
  bool consistent = true;
};

/// Concentration = max ball mass (unit radius) of u^2 d(mu) per field.
VanishingReport vanishing_check(const std::vector<Field>& sequence, const Nonlinearity& f);

// ------------------------------------------------------- profile extraction

struct ProfileOptions {
  std::size_t max_profiles = 6;
  /// The tail average is kept on V_compact_radius(0) only.
  double compact_radius = 1.5;
  double ball_radius = 1.0;
  /// energy_inequality_ok allows energy_sum up to (1 + slack) * max input energy.
  double energy_slack = 0.05;
};

struct ProfileReport {
  std::vector<Field> profiles;
  std::vector<double> profile_energies;
  /// centers_per_step[n][k]: center of profile n in field k.
  std::vector<std::vector<DiskPoint>> centers_per_step;
  double energy_sum = 0.0;
  double max_input_energy = 0.0;
  /// L^4(d(mu)) norm of the remainder of each field after extraction.
  std::vector<double> residual_dmu_norms;
  /// Profile energies are non-increasing.
  bool converged = true;
  bool energy_inequality_ok = true;
};

/// Iterated recenter / tail-average / subtract. Stops when the extracted
/// profile's energy falls below energy_floor. Throws std::invalid_argument
/// for fewer than three fields or mixed grids.
ProfileReport profile_extract(const std::vector<Field>& sequence, double energy_floor,
                              const ProfileOptions& options = {});

}  // namespace hyptm
