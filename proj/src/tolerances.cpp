#include "hyptm/tolerances.hpp"

namespace hyptm {

std::vector<ToleranceEntry> tolerance_table(Tolerances& t) {
  return {
      {"mobius-identity", &t.mobius_identity, "isometry and round-trip error of Moebius maps"},
      {"distance", &t.distance, "d(0, 0.5) against artanh(0.5)"},
      {"ball-area", &t.ball_area, "relative error of quadrature ball areas"},
      {"hardy-floor", &t.hardy_floor, "claimed lower bound of the Hardy ratio"},
      {"hardy-slack", &t.hardy_slack, "allowed shortfall below hardy-floor"},
      {"hardy-analytic", &t.hardy_analytic, "|ratio - 2| for u = 1 - r^2"},
      {"invariance-energy", &t.invariance_energy, "relative energy defect under shifts with d <= 2"},
      {"invariance-functional", &t.invariance_functional, "relative defect of int F(u) d(mu) under the same shifts"},
      {"invariance-order", &t.invariance_order, "minimal observed order of the defects under refinement"},
      {"dilation", &t.dilation, "relative change of energy and weighted sup-norm under h_s"},
      {"moser-sup", &t.moser_sup, "weighted sup-norm of Moser fields against (2 pi)^(-1/2)"},
      {"probe-spread", &t.probe_spread, "max/min bound of the critical probe"},
      {"probe-growth", &t.probe_growth, "growth factor that makes a probe verdict 'growing'"},
      {"brezis-lieb-factor", &t.brezis_lieb_factor, "required decay of the defect from distance 2 to 8"},
      {"grad-tol", &t.grad_tol, "projected-gradient residual at convergence"},
      {"constraint-drift", &t.constraint_drift, "relative drift of the energy constraint"},
      {"seed-invariance", &t.seed_invariance, "relative change of the final objective under a shifted seed"},
      {"riesz-fd", &t.riesz_fd, "Riesz gradient against central differences"},
      {"profile-single", &t.profile_single, "relative profile energy error, single scenario"},
      {"profile-multi", &t.profile_multi, "relative profile energy error, other scenarios"},
      {"profile-energy-slack", &t.profile_energy_slack, "slack of the profile energy inequality"},
      {"poisson", &t.poisson, "max node error of the manufactured Poisson solution"},
  };
}

}  // namespace hyptm
