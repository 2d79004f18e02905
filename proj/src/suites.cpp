#include "hyptm/suites.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyptm/errors.hpp"
#include "hyptm/families.hpp"
#include "hyptm/field_ops.hpp"
#include "hyptm/functionals.hpp"
#include "hyptm/local_bound.hpp"
#include "hyptm/variational.hpp"

namespace hyptm {

GridPtr GridChoice::hyperbolic(double rho_max_default, std::size_t n_rho_default, std::size_t n_theta_default) const {
  return PolarGrid::hyperbolic_uniform(rho_max.value_or(rho_max_default), n_rho.value_or(n_rho_default),
                                       n_theta.value_or(n_theta_default));
}

namespace {

using C = CsvWriter;

std::string flag(bool b) { return b ? "1" : "0"; }

double mass_dmu(const Field& u) {
  return integrate_dmu_of(u, [](double x) { return x * x; });
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Observed order of a defect under one refinement (factor 2). Null when
// either side vanishes.
Json order_json(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return nullptr;
  return std::log2(coarse / fine);
}

}  // namespace

SuiteReport hardy_suite(const SuiteSettings& s) {
  SuiteReport rep;
  rep.kind = "hardy";
  const Tolerances& tol = s.tol;
  const GridPtr grid = s.grid.hyperbolic(kDefaultRhoMax, kDefaultNRho, kDefaultNTheta);
  const double rho_max = grid->rho_max();
  C csv({"family", "name", "energy", "mass", "ratio", "pass"});

  double min_ratio = std::numeric_limits<double>::infinity();
  std::string min_name;
  std::size_t count = 0;
  const double floor = tol.hardy_floor - tol.hardy_slack;
  auto record = [&](const std::string& family, const std::string& name, const Field& u) {
    const double e = dirichlet_energy(u);
    const double m = mass_dmu(u);
    const double ratio = e / m;
    const bool ok = ratio >= floor;
    csv.row({family, name, C::num(e), C::num(m), C::num(ratio), flag(ok)});
    if (!ok) rep.failures.push_back("hardy ratio " + C::num(ratio) + " of " + name + " below " + C::num(floor));
    if (ratio < min_ratio) {
      min_ratio = ratio;
      min_name = name;
    }
    ++count;
    return ratio;
  };

  for (std::uint64_t k = 0; k < 8; ++k) {
    record("random", "random_" + std::to_string(s.seed + k), random_smooth_field(grid, s.seed + k));
  }
  for (double r : {1.5, 2.0, 3.0}) record("poly_bump", "poly_bump_R" + fmt("%g", r), poly_bump(grid, DiskPoint{}, r));
  record("poly_bump", "poly_bump_R2_off", poly_bump(grid, polar_lift(1.0, 0.4), 2.0));
  for (double p : {2.0, 3.0, 4.0}) record("sech", "sech_" + fmt("%g", p), sech_profile(grid, DiskPoint{}, p));

  const RadialField omr = one_minus_r2(grid->radial());
  const double analytic = record("radial", "one_minus_r2", omr.as_field());
  const double analytic_err = std::abs(analytic - 2.0);
  if (!(analytic_err <= tol.hardy_analytic)) {
    rep.failures.push_back("ratio of 1 - r^2 is " + C::num(analytic) + ", expected 2");
  }
  const double kink = truncated_log_kink();
  const std::vector<double> breaks{kink};
  record("radial", "truncated_log",
         truncated_log(RadialGrid::uniform(rho_max, 4 * grid->n_rho()).with_breakpoints(breaks)).as_field());
  const RadialGrid mg = moser_grid_for(256, rho_max);
  for (long k = 2; k <= 256; k *= 2) record("moser", "moser_" + std::to_string(k), moser_field(k, mg).as_field());

  rep.summary = Json{{"kind", rep.kind},
                     {"grid", grid_json(*grid)},
                     {"family_size", count},
                     {"min_ratio", min_ratio},
                     {"min_field", min_name},
                     {"floor", tol.hardy_floor},
                     {"slack", tol.hardy_slack},
                     {"analytic_ratio", analytic},
                     {"analytic_error", analytic_err},
                     {"analytic_tolerance", tol.hardy_analytic}};
  rep.csv = csv.str();
  return rep;
}

SuiteReport invariance_suite(const SuiteSettings& s) {
  SuiteReport rep;
  rep.kind = "invariance";
  const Tolerances& tol = s.tol;
  const Nonlinearity f = nonlinearity_by_name(s.nonlinearity);
  const GridPtr coarse = s.grid.hyperbolic(kDefaultRhoMax, kDefaultNRho, kDefaultNTheta);
  const GridPtr fine = PolarGrid::hyperbolic_uniform(coarse->rho_max(), 2 * coarse->n_rho(), 2 * coarse->n_theta());
  C csv({"level", "field", "d", "theta", "energy", "energy_defect", "functional", "functional_defect", "trivial"});

  struct Member {
    std::string name;
    double radius;  // 0 for the zero field
  };
  const std::vector<Member> family{{"zero", 0.0}, {"poly_bump_R3.5", 3.5}, {"poly_bump_R4", 4.0}};
  const std::vector<double> dists{0.5, 1.0, 1.5, 2.0};
  const std::vector<double> angles{0.0, 0.7, 2.5};

  double max_e[2] = {0.0, 0.0};
  double max_f[2] = {0.0, 0.0};
  std::size_t trivial = 0;
  const GridPtr grids[2] = {coarse, fine};
  for (int level = 0; level < 2; ++level) {
    const GridPtr& g = grids[level];
    for (const Member& m : family) {
      auto make = [&](const DiskPoint& c) { return m.radius > 0.0 ? poly_bump(g, c, m.radius) : Field(g); };
      const Field u0 = make(DiskPoint{});
      const double e0 = dirichlet_energy(u0);
      const double f0 = f_integral(u0, f).value;
      for (double d : dists) {
        for (double th : angles) {
          const Field u = make(polar_lift(d, th));
          const double e = dirichlet_energy(u);
          const TmValue fv = f_integral(u, f);
          const bool is_trivial = e0 == 0.0;
          const double de = is_trivial ? std::abs(e) : std::abs(e - e0) / e0;
          const double df = f0 == 0.0 ? std::abs(fv.value) : std::abs(fv.value - f0) / std::abs(f0);
          if (fv.saturated) rep.failures.push_back("functional saturated for " + m.name);
          if (is_trivial && level == 0) ++trivial;
          max_e[level] = std::max(max_e[level], de);
          max_f[level] = std::max(max_f[level], df);
          csv.row({level == 0 ? "coarse" : "fine", m.name, C::num(d), C::num(th), C::num(e), C::num(de),
                   C::num(fv.value), C::num(df), flag(is_trivial)});
        }
      }
    }
  }

  if (!(max_e[0] < tol.invariance_energy)) {
    rep.failures.push_back("energy defect " + C::num(max_e[0]) + " >= " + C::num(tol.invariance_energy));
  }
  if (!(max_f[0] < tol.invariance_functional)) {
    rep.failures.push_back("functional defect " + C::num(max_f[0]) + " >= " + C::num(tol.invariance_functional));
  }
  const Json order_e = order_json(max_e[0], max_e[1]);
  const Json order_f = order_json(max_f[0], max_f[1]);
  // A defect already at rounding level has no meaningful order.
  auto check_order = [&](double coarse_defect, double fine_defect, const std::string& what) {
    if (coarse_defect < 1e-12 || fine_defect == 0.0) return;
    if (std::log2(coarse_defect / fine_defect) < tol.invariance_order) {
      rep.failures.push_back(what + " defect does not decrease at order " + C::num(tol.invariance_order));
    }
  };
  check_order(max_e[0], max_e[1], "energy");
  check_order(max_f[0], max_f[1], "functional");

  rep.summary = Json{{"kind", rep.kind},
                     {"grid", grid_json(*coarse)},
                     {"refined_grid", grid_json(*fine)},
                     {"nonlinearity", f.name},
                     {"shift_distances", dists},
                     {"shift_angles", angles},
                     {"max_energy_defect", max_e[0]},
                     {"max_energy_defect_refined", max_e[1]},
                     {"max_functional_defect", max_f[0]},
                     {"max_functional_defect_refined", max_f[1]},
                     {"energy_order", order_e},
                     {"functional_order", order_f},
                     {"trivial_entries", trivial},
                     {"energy_tolerance", tol.invariance_energy},
                     {"functional_tolerance", tol.invariance_functional},
                     {"order_tolerance", tol.invariance_order}};
  rep.csv = csv.str();
  return rep;
}

SuiteReport dilation_suite(const SuiteSettings& s) {
  SuiteReport rep;
  rep.kind = "dilation";
  const Tolerances& tol = s.tol;
  const double rho_max = s.grid.rho_max.value_or(kDefaultRhoMax);
  const std::size_t n_rho = s.grid.n_rho.value_or(kDefaultNRho);
  C csv({"field", "s", "energy", "energy_dilated", "energy_error", "sup", "sup_dilated", "sup_error", "pass"});

  std::vector<std::pair<std::string, RadialField>> family;
  const RadialGrid mg = moser_grid_for(1024, rho_max);
  for (long k : {2L, 16L, 128L, 1024L}) family.emplace_back("moser_" + std::to_string(k), moser_field(k, mg));
  family.emplace_back("one_minus_r2", one_minus_r2(RadialGrid::uniform(rho_max, n_rho)));
  const std::vector<double> breaks{truncated_log_kink()};
  family.emplace_back("truncated_log", truncated_log(RadialGrid::uniform(rho_max, 4 * n_rho).with_breakpoints(breaks)));

  const std::vector<double> scales{0.25, 0.5, 2.0, 4.0};
  const double moser_sup = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  double max_e = 0.0, max_s = 0.0, max_moser = 0.0;
  for (const auto& [name, u] : family) {
    const double e0 = dirichlet_energy(u);
    const double s0 = weighted_sup_norm(u);
    const bool is_moser = name.starts_with("moser");
    if (is_moser) max_moser = std::max(max_moser, std::abs(s0 - moser_sup));
    for (double sc : scales) {
      const RadialField v = dilate_radial(u, sc);
      const double e = dirichlet_energy(v);
      const double sv = weighted_sup_norm(v);
      const double de = std::abs(e - e0) / e0;
      const double ds = std::abs(sv - s0) / s0;
      if (is_moser) max_moser = std::max(max_moser, std::abs(sv - moser_sup));
      const bool ok = de <= tol.dilation && ds <= tol.dilation;
      if (!ok) rep.failures.push_back("dilation of " + name + " by " + C::num(sc) + ": energy error " + C::num(de) +
                                      ", sup error " + C::num(ds));
      max_e = std::max(max_e, de);
      max_s = std::max(max_s, ds);
      csv.row({name, C::num(sc), C::num(e0), C::num(e), C::num(de), C::num(s0), C::num(sv), C::num(ds), flag(ok)});
    }
  }
  if (!(max_moser <= tol.moser_sup)) {
    rep.failures.push_back("Moser weighted sup-norm off by " + C::num(max_moser));
  }
  rep.summary = Json{{"kind", rep.kind},
                     {"rho_max", rho_max},
                     {"scales", scales},
                     {"family_size", family.size()},
                     {"max_energy_error", max_e},
                     {"max_sup_error", max_s},
                     {"moser_sup_error", max_moser},
                     {"tolerance", tol.dilation},
                     {"moser_sup_tolerance", tol.moser_sup}};
  rep.csv = csv.str();
  return rep;
}

SuiteReport local_bound_suite(const SuiteSettings& s) {
  SuiteReport rep;
  rep.kind = "local-bound";
  if (s.local_norm_sq) {
    const double n = *s.local_norm_sq;
    if (!(n > 0.0)) throw std::invalid_argument("local-bound: window norm must be positive");
    if (n >= 1.0) {
      throw HypothesisError("local-bound: requested window norm " + C::num(n) +
                            " >= 1, outside the hypothesis of the local bound");
    }
  }
  const LocalBoundParams p;
  const GridPtr window = window_grid(p);
  constexpr std::size_t calibration_count = 200;
  constexpr std::size_t test_count = 100;
  constexpr std::uint64_t test_offset = 1'000'000;
  const LocalCalibration cal = calibrate_local_constant(window, p.q, p.lambda, s.seed, calibration_count);
  C csv({"seed", "norm_sq", "lhs", "rhs", "ratio", "ok"});
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < test_count; ++k) {
    const std::uint64_t seed = s.seed + test_offset + k;
    const double n = s.local_norm_sq.value_or(0.3 + 0.6 * static_cast<double>(k) / (test_count - 1));
    const Field v = scale_to_norm(random_window_field(window, seed), n, p.lambda);
    const LocalBoundReport r = local_bound_check(v, p.q, p.lambda, cal.constant);
    const double ratio = r.lhs / r.rhs;
    worst = std::max(worst, ratio);
    if (!r.ok) {
      ++violations;
      rep.failures.push_back("local bound violated for seed " + std::to_string(seed));
    }
    csv.row({std::to_string(seed), C::num(r.norm_sq), C::num(r.lhs), C::num(r.rhs), C::num(ratio), flag(r.ok)});
  }
  rep.summary = Json{{"kind", rep.kind},
                     {"window", grid_json(*window)},
                     {"q", p.q},
                     {"lambda", p.lambda},
                     {"constant", cal.constant},
                     {"calibration_size", cal.family_size},
                     {"calibration_max_norm_sq", cal.max_norm_sq},
                     {"calibration_seeds", Json::array({s.seed, s.seed + calibration_count - 1})},
                     {"test_seeds", Json::array({s.seed + test_offset, s.seed + test_offset + test_count - 1})},
                     {"test_count", test_count},
                     {"violations", violations},
                     {"worst_lhs_over_rhs", worst}};
  if (s.local_norm_sq) rep.summary["requested_norm_sq"] = *s.local_norm_sq;
  rep.csv = csv.str();
  return rep;
}

SuiteReport brezis_lieb_suite(const SuiteSettings& s) {
  SuiteReport rep;
  rep.kind = "brezis-lieb";
  const Tolerances& tol = s.tol;
  const Nonlinearity f = nonlinearity_by_name(s.nonlinearity);
  const GridPtr grid = s.grid.hyperbolic(kDefaultRhoMax, kDefaultNRho, kDefaultNTheta);
  C csv({"field", "d", "defect", "saturated"});

  struct Member {
    std::string name;
    std::function<Field(const DiskPoint&)> make;
  };
  const std::vector<Member> family{
      {"poly_bump_R1.5", [&](const DiskPoint& c) { return poly_bump(grid, c, 1.5); }},
      {"sech_3", [&](const DiskPoint& c) { return sech_profile(grid, c, 3.0); }},
      {"sech_4", [&](const DiskPoint& c) { return sech_profile(grid, c, 4.0); }},
  };
  const std::vector<double> dists{2.0, 4.0, 8.0};
  Json per_field = Json::object();
  for (const Member& m : family) {
    const Field u = m.make(DiskPoint{});
    std::vector<double> defects;
    for (double d : dists) {
      const Field uk = u + m.make(polar_lift(d, 0.0));
      const TmValue bl = brezis_lieb_defect(uk, u, f);
      if (bl.saturated) rep.failures.push_back("Brezis-Lieb defect saturated for " + m.name);
      defects.push_back(bl.value);
      csv.row({m.name, C::num(d), C::num(bl.value), flag(bl.saturated)});
    }
    const double near = std::abs(defects.front());
    const double far = std::abs(defects.back());
    const bool ok = far * tol.brezis_lieb_factor < near || (near == 0.0 && far == 0.0);
    if (!ok) {
      rep.failures.push_back("Brezis-Lieb defect of " + m.name + " at d = 8 (" + C::num(far) +
                             ") is not below the d = 2 value (" + C::num(near) + ") / " +
                             C::num(tol.brezis_lieb_factor));
    }
    per_field[m.name] = Json{{"defects", defects}, {"pass", ok}};
  }
  rep.summary = Json{{"kind", rep.kind},   {"grid", grid_json(*grid)}, {"nonlinearity", f.name},
                     {"distances", dists}, {"fields", per_field},     {"factor", tol.brezis_lieb_factor}};
  rep.csv = csv.str();
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hardy", "invariance", "dilation", "local-bound", "brezis-lieb"};
  return names;
}

SuiteReport run_suite(const std::string& kind, const SuiteSettings& s) {
  if (kind == "hardy") return hardy_suite(s);
  if (kind == "invariance") return invariance_suite(s);
  if (kind == "dilation") return dilation_suite(s);
  if (kind == "local-bound") return local_bound_suite(s);
  if (kind == "brezis-lieb") return brezis_lieb_suite(s);
  throw std::invalid_argument("unknown verify kind '" + kind + "'");
}

}  // namespace hyptm
