#pragma once

// Every quantitative tolerance used by the verification suites, the CLI and
// the acceptance run. Each entry can be overridden per run (see
// tolerance_table for the names used on the command line and in configs).

#include <string>
#include <vector>

namespace hyptm {

struct Tolerances {
  // geometry
  double mobius_identity = 1e-12;
  double distance = 1e-10;
  double ball_area = 1e-6;
  // Hardy ratio: every ratio >= hardy_floor - hardy_slack; |ratio(1 - r^2) - 2| <= hardy_analytic
  double hardy_floor = 0.25;
  double hardy_slack = 1e-3;
  double hardy_analytic = 1e-4;
  // Moebius invariance, relative defects, and the observed order under refinement
  double invariance_energy = 1e-3;
  double invariance_functional = 1e-2;
  double invariance_order = 1.0;
  // dilation
  double dilation = 1e-3;
  double moser_sup = 1e-6;
  // Moser probe
  double probe_spread = 3.0;
  double probe_growth = 10.0;
  // Brezis-Lieb: |defect(far)| * factor < |defect(near)|
  double brezis_lieb_factor = 10.0;
  // maximizer
  double grad_tol = 1e-6;
  double constraint_drift = 1e-8;
  double seed_invariance = 1e-3;
  double riesz_fd = 1e-5;
  // profile decomposition
  double profile_single = 0.02;
  double profile_multi = 0.05;
  double profile_energy_slack = 0.05;
  // Poisson solve against a manufactured solution
  double poisson = 1e-4;
};

struct ToleranceEntry {
  std::string name;
  double* value;
  std::string description;
};

/// Named handles on every field, in declaration order.
std::vector<ToleranceEntry> tolerance_table(Tolerances& t);

}  // namespace hyptm
