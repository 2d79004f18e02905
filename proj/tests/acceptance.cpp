// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hyptm/covering.hpp"
#include "hyptm/families.hpp"
#include "hyptm/field_ops.hpp"
#include "hyptm/profiles.hpp"
#include "hyptm/suites.hpp"
#include "hyptm/variational.hpp"
#include "oracle.hpp"

using namespace hyptm;

namespace {

int failures = 0;

void line(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string suite_detail(const SuiteReport& r) {
  if (r.pass()) return "all checks passed";
  std::string s;
  for (const std::string& f : r.failures) s += (s.empty() ? "" : "; ") + f;
  return s;
}

void geometry(const Tolerances& tol) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto point = [&] { return polar_lift(3.0 * u(rng), 2.0 * std::numbers::pi * u(rng)); };
  double round_trip = 0.0, isometry = 0.0, measure = 0.0, oracle_dist = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const MobiusMap m(point());
    const DiskPoint a = point(), b = point();
    round_trip = std::max(round_trip, std::abs(m.inverse()(m(a)).z() - a.z()));
    const double d = geodesic_distance(a, b);
    isometry = std::max(isometry, std::abs(geodesic_distance(m(a), m(b)) - d));
    oracle_dist = std::max(oracle_dist, std::abs(d - oracle::distance(a.z(), b.z())) / std::max(1.0, d));
    measure = std::max(measure, std::abs(measure_weight(m(a)) * m.jacobian(a) / measure_weight(a) - 1.0));
  }
  const double half = std::abs(geodesic_distance(DiskPoint{}, DiskPoint(0.5, 0.0)) - std::atanh(0.5));
  double area_err = 0.0;
  for (double rho : {0.5, 1.0, 2.0}) {
    const GridPtr g = PolarGrid::hyperbolic(RadialGrid::uniform(rho, 2048), 1);
    double area = 0.0;
    for (std::size_t i = 0; i < g->n_rho(); ++i) area += g->weight(i);
    area_err = std::max(area_err, std::abs(area / oracle::ball_area(rho) - 1.0));
  }
  const bool ok = round_trip < tol.mobius_identity && isometry < tol.mobius_identity && half < tol.distance &&
                  oracle_dist < tol.distance &&
                  measure < tol.mobius_identity && area_err < tol.ball_area;
  line(1, "geometry", ok,
       fmt("round trip %.2e", round_trip) + fmt(", isometry %.2e", isometry) + fmt(", d(0, 0.5) %.2e", half) +
           fmt(", oracle %.2e", oracle_dist) +
           fmt(", measure %.2e", measure) + fmt(", ball area %.2e", area_err));
}

void probes(const Tolerances& tol) {
  std::vector<long> ks;
  for (long k = 2; k <= 1024; k *= 2) ks.push_back(k);
  const double p = 4.0 * std::numbers::pi;
  const ProbeVerdict critical = probe_verdict(blowup_probe(p, ks), tol.probe_growth);
  const ProbeVerdict super = probe_verdict(blowup_probe(1.05 * p, ks), tol.probe_growth);
  const bool bounded = critical.spread < tol.probe_spread && !critical.any_saturated;
  line(5, "moser-probes", bounded && super.growing,
       fmt("4pi spread %.3f", critical.spread) + fmt(" (limit %.0f)", tol.probe_spread) +
           fmt(", 1.05*4pi growth %.3f", super.growth) + fmt(" (need %.0f)", tol.probe_growth) +
           (super.any_saturated ? ", saturated" : ", no saturation"));
}

void covering() {
  std::vector<std::size_t> mult;
  bool ok = true;
  std::string detail;
  for (double rho : {3.0, 5.0, 7.0}) {
    CoveringSpec s;
    s.eps = 0.5;
    s.lattice_step = 0.5;
    s.rho_max = rho;
    const CoveringResult r = build_covering(s, 100000, 1);
    ok = ok && r.disjoint && r.coverage_gap_count == 0 && r.multiplicity_empirical <= r.multiplicity_bound;
    mult.push_back(r.multiplicity_empirical);
    detail += (detail.empty() ? "" : "; ") + fmt("rho %.0f: ", rho) + std::to_string(r.centers.size()) +
              " centers, multiplicity " + std::to_string(r.multiplicity_empirical) + "/" +
              std::to_string(r.multiplicity_bound) + ", gaps " + std::to_string(r.coverage_gap_count);
  }
  const auto [lo, hi] = std::minmax_element(mult.begin(), mult.end());
  ok = ok && *hi - *lo <= 2;
  line(7, "covering", ok, detail);
}

void optimizer(const Tolerances& tol) {
  const Nonlinearity f = quartic();
  OptimizerConfig cfg;
  cfg.grad_tol = tol.grad_tol;
  const OptimizerTrace a = maximize(cfg, f);
  cfg.seed_field = pullback(default_seed(default_optimizer_grid(), 1.0), polar_lift(1.0, 0.7));
  const OptimizerTrace b = maximize(cfg, f);
  const double ja = a.final_objective();
  const double seed_rel = std::abs(b.final_objective() - ja) / ja;

  const GridPtr g = default_optimizer_grid();
  const Field u = *a.final_field;
  const RieszGradient rg = riesz_gradient(u, f);
  double fd_err = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Field phi = random_smooth_field(g, seed);
    const double h = 1e-5;
    const double fd = (f_integral(u + h * phi, f).value - f_integral(u - h * phi, f).value) / (2.0 * h);
    fd_err = std::max(fd_err, std::abs(fd - dirichlet_inner(rg.gradient, phi)) / std::max(1.0, std::abs(fd)));
  }
  const bool ok = a.status == OptimizerStatus::converged && b.status == OptimizerStatus::converged &&
                  a.ascent_monotone() && a.max_constraint_drift < tol.constraint_drift &&
                  seed_rel < tol.seed_invariance && fd_err < tol.riesz_fd;
  line(9, "maximize", ok,
       fmt("J %.8f", ja) + ", " + to_string(a.status) + " in " + std::to_string(a.iterations) +
           fmt(" iterations, residual %.2e", a.final_residual) + fmt(", drift %.2e", a.max_constraint_drift) +
           fmt(", shifted seed rel %.2e", seed_rel) + ", " + to_string(b.status) + fmt(", riesz fd %.2e", fd_err));
}

void profiles(const Tolerances& tol) {
  ScenarioParams p;
  p.single_tolerance = tol.profile_single;
  p.multi_tolerance = tol.profile_multi;
  p.extraction.energy_slack = tol.profile_energy_slack;
  const RecoveryReport r = run_profile_scenario("pair", default_profile_grid(), p);
  std::string detail = std::to_string(r.extraction.profiles.size()) + " profiles";
  for (std::size_t k = 0; k < r.energy_errors.size(); ++k)
    detail += fmt(", energy error %.4f", r.energy_errors[k]);
  if (!r.separations.empty())
    detail += fmt(", separation %.2f", r.separations.front()) + fmt(" -> %.2f", r.separations.back());
  if (!r.extraction.residual_dmu_norms.empty())
    detail += fmt(", residual %.2e", r.extraction.residual_dmu_norms.front()) +
              fmt(" -> %.2e", r.extraction.residual_dmu_norms.back());
  line(10, "profile-decomposition", r.ok, detail);
}

}  // namespace

int main() {
  const Tolerances tol;
  SuiteSettings s;
  s.tol = tol;

  geometry(tol);
  const SuiteReport hardy = hardy_suite(s);
  line(2, "hardy", hardy.pass(), suite_detail(hardy));
  const SuiteReport inv = invariance_suite(s);
  line(3, "moebius-invariance", inv.pass(), suite_detail(inv));
  const SuiteReport dil = dilation_suite(s);
  line(4, "dilation", dil.pass(), suite_detail(dil));
  probes(tol);
  const SuiteReport local = local_bound_suite(s);
  line(6, "local-bound", local.pass(), suite_detail(local));
  covering();
  const SuiteReport bl = brezis_lieb_suite(s);
  line(8, "brezis-lieb", bl.pass(), suite_detail(bl));
  optimizer(tol);
  profiles(tol);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
