// hyptm: command-line front end.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 configuration or
// hypothesis error, 3 maximize stopped at max_iters without converging.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyptm/covering.hpp"
#include "hyptm/errors.hpp"
#include "hyptm/families.hpp"
#include "hyptm/field_io.hpp"
#include "hyptm/field_ops.hpp"
#include "hyptm/functionals.hpp"
#include "hyptm/parallel.hpp"
#include "hyptm/profiles.hpp"
#include "hyptm/report.hpp"
#include "hyptm/suites.hpp"
#include "hyptm/tolerances.hpp"
#include "hyptm/variational.hpp"

namespace fs = std::filesystem;
using namespace hyptm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheck = 1;
constexpr int kExitConfig = 2;
constexpr int kExitMaxIters = 3;
constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string out = "out";
  std::string grid;
  std::optional<double> rho_max;
  std::uint64_t seed = 1;
  Tolerances tol;

  GridChoice grid_choice() const {
    GridChoice g;
    g.rho_max = rho_max;
    if (!grid.empty()) {
      static const std::regex re(R"((\d+)x(\d+))");
      std::smatch m;
      std::regex_match(grid, m, re);
      g.n_rho = std::stoul(m[1]);
      g.n_theta = std::stoul(m[2]);
    }
    return g;
  }
};

struct Outcome {
  int code = kExitPass;
  Json report;
  std::map<std::string, std::string> files;  // name -> contents
};

std::string status_of(int code) {
  switch (code) {
    case kExitPass:
      return "pass";
    case kExitMaxIters:
      return "max_iters";
    default:
      return "fail";
  }
}

Json tolerances_json(Tolerances tol) {
  Json j = Json::object();
  for (const ToleranceEntry& e : tolerance_table(tol)) j[e.name] = *e.value;
  return j;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_outputs(const fs::path& dir, const Outcome& o) {
  fs::create_directories(dir);
  for (const auto& [name, text] : o.files) write_text_atomic(dir / name, text);
  write_json_atomic(dir / "report.json", o.report);
}

Json failures_json(const std::vector<std::string>& failures) {
  Json j = Json::array();
  for (const auto& f : failures) j.push_back(f);
  return j;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string kind;
  std::string nonlinearity = "quartic";
  std::optional<double> norm_sq;
};

Outcome cmd_verify(const Common& c, const VerifyArgs& a) {
  nonlinearity_by_name(a.nonlinearity);
  SuiteSettings s;
  s.grid = c.grid_choice();
  s.seed = c.seed;
  s.tol = c.tol;
  s.nonlinearity = a.nonlinearity;
  s.local_norm_sq = a.norm_sq;
  const SuiteReport r = run_suite(a.kind, s);
  Outcome o;
  o.code = r.pass() ? kExitPass : kExitCheck;
  o.report = Json{{"command", "verify"},   {"kind", a.kind},
                  {"summary", r.summary},  {"failures", failures_json(r.failures)},
                  {"seed", c.seed},        {"tolerances", tolerances_json(c.tol)}};
  o.files[a.kind + ".csv"] = r.csv;
  return o;
}

// ------------------------------------------------------------------- probe

struct ProbeArgs {
  double p_over_4pi = 1.0;
  long k_max = 1024;
  std::string expect;
};

Outcome cmd_probe(const Common& c, const ProbeArgs& a) {
  if (!(a.p_over_4pi > 0.0)) throw std::invalid_argument("probe: p-over-4pi must be positive");
  if (a.k_max < 2) throw std::invalid_argument("probe: k-max must be at least 2");
  std::vector<long> ks;
  for (long k = 2; k <= a.k_max; k *= 2) ks.push_back(k);
  const double rho_max = c.rho_max.value_or(kDefaultRhoMax);
  const GridChoice gc = c.grid_choice();
  RadialGrid grid = moser_grid_for(ks.back(), rho_max);
  if (gc.n_rho) {
    std::vector<double> kinks;
    for (long k : ks) kinks.push_back(std::atanh(1.0 / static_cast<double>(k)));
    try {
      grid = RadialGrid::uniform(rho_max, *gc.n_rho).with_breakpoints(kinks);
    } catch (const std::invalid_argument& e) {
      throw ResolutionError(std::string("probe: k-max beyond grid resolution: ") + e.what());
    }
  }
  const double p = a.p_over_4pi * 4.0 * std::numbers::pi;
  const std::vector<ProbeEntry> entries = blowup_probe(p, ks, grid);
  const ProbeVerdict v = probe_verdict(entries, c.tol.probe_growth);
  const std::string verdict = v.growing ? "growing" : "bounded";

  CsvWriter csv({"k", "value", "saturated", "tail_warning"});
  Json values = Json::array();
  for (const ProbeEntry& e : entries) {
    csv.row({std::to_string(e.k), CsvWriter::num(e.value), e.saturated ? "1" : "0", e.tail_warning ? "1" : "0"});
    values.push_back(e.value);
  }
  std::vector<std::string> failures;
  if (!a.expect.empty() && a.expect != verdict) failures.push_back("verdict " + verdict + ", expected " + a.expect);

  Outcome o;
  o.code = failures.empty() ? kExitPass : kExitCheck;
  o.report = Json{{"command", "probe"},
                  {"p", p},
                  {"p_over_4pi", a.p_over_4pi},
                  {"k", ks},
                  {"values", values},
                  {"verdict", verdict},
                  {"spread", v.spread},
                  {"spread_below_bound", v.spread < c.tol.probe_spread},
                  {"growth", v.growth},
                  {"monotone", v.monotone},
                  {"any_saturated", v.any_saturated},
                  {"radial_grid", Json{{"n_rho", grid.size()}, {"rho_min", grid[0]}, {"rho_max", grid.outer()}}},
                  {"failures", failures_json(failures)},
                  {"tolerances", tolerances_json(c.tol)}};
  o.files["probe.csv"] = csv.str();
  return o;
}

// ------------------------------------------------------------------- cover

struct CoverArgs {
  double eps = 0.5;
  double cover_factor = 3.0;
  double lattice_step = 0.25;
  std::size_t samples = 100000;
};

Outcome cmd_cover(const Common& c, const CoverArgs& a) {
  CoveringSpec spec;
  spec.eps = a.eps;
  spec.cover_factor = a.cover_factor;
  spec.lattice_step = a.lattice_step;
  spec.rho_max = c.rho_max.value_or(4.0);
  spec.validate();
  const CoveringResult r = build_covering(spec, a.samples, c.seed);

  CsvWriter csv({"index", "re", "im", "rho", "theta"});
  for (std::size_t k = 0; k < r.centers.size(); ++k) {
    const PolarPoint p = disk_drop(r.centers[k]);
    csv.row({std::to_string(k), CsvWriter::num(r.centers[k].re()), CsvWriter::num(r.centers[k].im()),
             CsvWriter::num(p.rho), CsvWriter::num(p.theta)});
  }
  std::vector<std::string> failures;
  if (!r.disjoint) failures.push_back("balls not disjoint: min distance " + CsvWriter::num(r.min_pairwise_distance));
  if (r.coverage_gap_count > 0) failures.push_back(std::to_string(r.coverage_gap_count) + " coverage gaps");
  if (r.multiplicity_empirical > r.multiplicity_bound) failures.push_back("multiplicity above the volume bound");

  Outcome o;
  o.code = failures.empty() ? kExitPass : kExitCheck;
  o.report = Json{{"command", "cover"},
                  {"eps", spec.eps},
                  {"cover_factor", spec.cover_factor},
                  {"cover_radius", spec.cover_radius()},
                  {"rho_max", spec.rho_max},
                  {"lattice_step", spec.lattice_step},
                  {"candidates", r.candidate_count},
                  {"centers", r.centers.size()},
                  {"min_pairwise_distance", r.min_pairwise_distance},
                  {"disjoint", r.disjoint},
                  {"coverage_samples", r.coverage_samples},
                  {"coverage_gaps", r.coverage_gap_count},
                  {"multiplicity_empirical", r.multiplicity_empirical},
                  {"multiplicity_bound", r.multiplicity_bound},
                  {"seed", c.seed},
                  {"failures", failures_json(failures)}};
  o.files["centers.csv"] = csv.str();
  return o;
}

// ---------------------------------------------------------------- maximize

struct MaximizeArgs {
  double t = 1.0;
  std::string nonlinearity = "quartic";
  std::size_t max_iters = 500;
  double step = 1.0;
  std::size_t recenter_every = 10;
  std::optional<double> shift_seed;
  std::string seed_field;
};

std::string kind_name(StepKind k) {
  switch (k) {
    case StepKind::initial:
      return "initial";
    case StepKind::ascent:
      return "ascent";
    case StepKind::recenter:
      return "recenter";
  }
  return "?";
}

Outcome cmd_maximize(const Common& c, const MaximizeArgs& a) {
  if (!(a.t > 0.0 && a.t <= 1.0)) throw std::invalid_argument("maximize: t must lie in (0, 1]");
  const Nonlinearity f = nonlinearity_by_name(a.nonlinearity);
  OptimizerConfig cfg;
  cfg.t = a.t;
  cfg.step = a.step;
  cfg.max_iters = a.max_iters;
  cfg.grad_tol = c.tol.grad_tol;
  cfg.recenter_every = a.recenter_every;
  Field seed = a.seed_field.empty()
                   ? default_seed(c.grid_choice().hyperbolic(kDefaultRhoMax, kDefaultNRho, kDefaultNTheta), a.t)
                   : load_field(a.seed_field);
  if (a.shift_seed) seed = pullback(seed, polar_lift(*a.shift_seed, 0.0));
  cfg.seed_field = seed;
  const OptimizerTrace tr = maximize(cfg, f);

  CsvWriter trace({"entry", "kind", "objective", "constraint_drift"});
  for (std::size_t k = 0; k < tr.objective_history.size(); ++k) {
    trace.row({std::to_string(k), kind_name(tr.step_kinds[k]), CsvWriter::num(tr.objective_history[k]),
               CsvWriter::num(tr.constraint_drift[k])});
  }
  CsvWriter res({"iteration", "residual", "step"});
  for (std::size_t k = 0; k < tr.residual_history.size(); ++k) {
    res.row({std::to_string(k), CsvWriter::num(tr.residual_history[k]),
             k < tr.step_sizes.size() ? CsvWriter::num(tr.step_sizes[k]) : ""});
  }
  CsvWriter rc({"iteration", "re", "im", "distance", "applied", "ambiguous", "objective_before", "objective_after"});
  Json shifts = Json::array();
  for (const RecenterEvent& e : tr.recenter_events) {
    rc.row({std::to_string(e.iteration), CsvWriter::num(e.shift.re()), CsvWriter::num(e.shift.im()),
            CsvWriter::num(e.distance), e.applied ? "1" : "0", e.ambiguous ? "1" : "0",
            CsvWriter::num(e.objective_before), CsvWriter::num(e.objective_after)});
    shifts.push_back(Json{{"iteration", e.iteration}, {"distance", e.distance}, {"applied", e.applied}});
  }

  const double drift = tr.max_constraint_drift / a.t;
  std::vector<std::string> failures;
  if (!tr.ascent_monotone()) failures.push_back("objective trace not monotone");
  if (!(drift < c.tol.constraint_drift)) failures.push_back("constraint drift " + CsvWriter::num(drift));
  if (tr.status == OptimizerStatus::stagnated) failures.push_back("line search found no ascent step");
  if (tr.status == OptimizerStatus::max_iters) failures.push_back("max_iters reached without convergence");

  Outcome o;
  if (failures.empty()) {
    o.code = kExitPass;
  } else if (tr.status == OptimizerStatus::max_iters && failures.size() == 1) {
    o.code = kExitMaxIters;
  } else {
    o.code = kExitCheck;
  }
  const Field& fin = *tr.final_field;
  o.report = Json{{"command", "maximize"},
                  {"t", a.t},
                  {"nonlinearity", f.name},
                  {"grid", grid_json(fin.grid())},
                  {"optimizer_status", to_string(tr.status)},
                  {"iterations", tr.iterations},
                  {"final_objective", tr.final_objective()},
                  {"final_residual", tr.final_residual},
                  {"max_constraint_drift", drift},
                  {"max_solver_residual", tr.max_solver_residual},
                  {"monotone", tr.ascent_monotone()},
                  {"recenter_events", shifts},
                  {"shift_seed", a.shift_seed ? Json(*a.shift_seed) : Json(nullptr)},
                  {"failures", failures_json(failures)},
                  {"tolerances", tolerances_json(c.tol)}};
  o.files["trace.csv"] = trace.str();
  o.files["residuals.csv"] = res.str();
  o.files["recenter.csv"] = rc.str();
  std::ostringstream field_text;
  write_field(fin, field_text);
  o.files["final_field.txt"] = field_text.str();
  return o;
}

// ---------------------------------------------------------------- profiles

struct ProfilesArgs {
  std::string scenario;
  ScenarioParams params;
};

Outcome cmd_profiles(const Common& c, ProfilesArgs a) {
  a.params.single_tolerance = c.tol.profile_single;
  a.params.multi_tolerance = c.tol.profile_multi;
  a.params.extraction.energy_slack = c.tol.profile_energy_slack;
  const GridPtr grid = c.grid_choice().hyperbolic(6.0, 256, 512);
  const RecoveryReport r = run_profile_scenario(a.scenario, grid, a.params);
  const ProfileReport& ex = r.extraction;

  CsvWriter prof({"index", "energy", "planted_energy", "relative_error"});
  for (std::size_t n = 0; n < ex.profile_energies.size(); ++n) {
    const bool planted = n < r.planted_energies.size();
    prof.row({std::to_string(n), CsvWriter::num(ex.profile_energies[n]),
              planted ? CsvWriter::num(r.planted_energies[n]) : "", n < r.energy_errors.size() ? CsvWriter::num(r.energy_errors[n]) : ""});
  }
  CsvWriter centers({"profile", "step", "re", "im", "rho", "theta"});
  for (std::size_t n = 0; n < ex.centers_per_step.size(); ++n) {
    for (std::size_t k = 0; k < ex.centers_per_step[n].size(); ++k) {
      const DiskPoint& z = ex.centers_per_step[n][k];
      const PolarPoint p = disk_drop(z);
      centers.row({std::to_string(n), std::to_string(k), CsvWriter::num(z.re()), CsvWriter::num(z.im()),
                   CsvWriter::num(p.rho), CsvWriter::num(p.theta)});
    }
  }
  CsvWriter res({"step", "residual_dmu_norm", "separation"});
  for (std::size_t k = 0; k < ex.residual_dmu_norms.size(); ++k) {
    res.row({std::to_string(k), CsvWriter::num(ex.residual_dmu_norms[k]),
             k < r.separations.size() ? CsvWriter::num(r.separations[k]) : ""});
  }

  std::vector<std::string> failures;
  if (!r.count_ok) {
    failures.push_back("recovered " + std::to_string(ex.profiles.size()) + " profiles, planted " +
                       std::to_string(r.planted_energies.size()));
  }
  if (!r.energies_ok) failures.push_back("profile energy error above " + CsvWriter::num(r.energy_tolerance));
  if (!ex.energy_inequality_ok) failures.push_back("energy sum above the input energy bound");
  if (!ex.converged) failures.push_back("profile energies not non-increasing");
  if (a.scenario == "pair" && !r.separations_diverge) failures.push_back("center separations do not diverge");
  if (a.scenario == "pair" && !r.residuals_decay) failures.push_back("remainder norms do not decay");

  Outcome o;
  o.code = failures.empty() ? kExitPass : kExitCheck;
  o.report = Json{{"command", "profiles"},
                  {"scenario", a.scenario},
                  {"grid", grid_json(*grid)},
                  {"profile_count", ex.profiles.size()},
                  {"profile_energies", ex.profile_energies},
                  {"planted_energies", r.planted_energies},
                  {"energy_errors", r.energy_errors},
                  {"energy_tolerance", r.energy_tolerance},
                  {"energy_sum", ex.energy_sum},
                  {"max_input_energy", ex.max_input_energy},
                  {"separations", r.separations},
                  {"residual_dmu_norms", ex.residual_dmu_norms},
                  {"residuals_monotone", r.residuals_monotone},
                  {"energy_floor", a.params.energy_floor},
                  {"failures", failures_json(failures)}};
  o.files["profiles.csv"] = prof.str();
  o.files["centers.csv"] = centers.str();
  o.files["residuals.csv"] = res.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the Moebius-invariant Trudinger-Moser inequality on the Poincare disk"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file ([section] per subcommand); flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Common common;
  app.add_option("--out", common.out, "Output directory")->capture_default_str();
  app.add_option("--grid", common.grid, "Grid resolution NRxNT")
      ->check(CLI::Validator(
          [](std::string& s) {
            static const std::regex re(R"(\d+x\d+)");
            if (!std::regex_match(s, re)) return std::string("expected NRxNT, e.g. 512x256");
            const auto x = s.find('x');
            if (std::stoul(s.substr(0, x)) < 2 || std::stoul(s.substr(x + 1)) < 1) return std::string("grid too small");
            return std::string();
          },
          "NRxNT"));
  app.add_option("--rho-max", common.rho_max, "Outer hyperbolic radius")->check(CLI::Range(1e-6, 18.0));
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  for (const ToleranceEntry& e : tolerance_table(common.tol)) {
    app.add_option("--tol-" + e.name, *e.value, e.description)->group("Tolerances")->capture_default_str();
  }

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run a property suite over the built-in test family");
  verify->add_option("kind", va.kind, "Suite")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--nonlinearity", va.nonlinearity, "quartic, sextic, power:<r>, tm-sub, tm-sub:<p>")
      ->capture_default_str();
  verify->add_option("--norm-sq", va.norm_sq, "local-bound: evaluate every test field at this window norm");

  ProbeArgs pa;
  CLI::App* probe = app.add_subcommand("probe", "Moser sequence probe of the invariant functional");
  probe->add_option("--p-over-4pi", pa.p_over_4pi, "Exponent in units of 4 pi")->capture_default_str();
  probe->add_option("--k-max", pa.k_max, "Largest k (k = 2, 4, 8, ...)")->capture_default_str();
  probe->add_option("--expect", pa.expect, "Fail unless the verdict matches")
      ->check(CLI::IsMember({"bounded", "growing"}));

  CoverArgs ca;
  CLI::App* cover = app.add_subcommand("cover", "Greedy disjoint-ball covering of a hyperbolic disk");
  cover->add_option("--eps", ca.eps, "Radius of the disjoint balls")->capture_default_str();
  cover->add_option("--cover-factor", ca.cover_factor, "Covering radius over eps")->capture_default_str();
  cover->add_option("--lattice-step", ca.lattice_step, "Candidate lattice spacing")->capture_default_str();
  cover->add_option("--samples", ca.samples, "Coverage and multiplicity samples")->capture_default_str();

  MaximizeArgs ma;
  CLI::App* maxi = app.add_subcommand("maximize", "Constrained ascent of int F(u) d(mu) at energy t");
  maxi->add_option("--t", ma.t, "Energy level in (0, 1]")->capture_default_str();
  maxi->add_option("--nonlinearity", ma.nonlinearity, "quartic, sextic, power:<r>, tm-sub, tm-sub:<p>")
      ->capture_default_str();
  maxi->add_option("--max-iters", ma.max_iters)->capture_default_str();
  maxi->add_option("--step", ma.step, "Initial step")->capture_default_str();
  maxi->add_option("--recenter-every", ma.recenter_every, "0 disables recentering")->capture_default_str();
  maxi->add_option("--shift-seed", ma.shift_seed, "Move the seed to distance d along the real axis");
  maxi->add_option("--seed-field", ma.seed_field, "Seed field file")->check(CLI::ExistingFile);

  ProfilesArgs pra;
  CLI::App* prof = app.add_subcommand("profiles", "Plant-and-recover profile decomposition");
  prof->add_option("scenario", pra.scenario, "single, pair or none")
      ->required()
      ->check(CLI::IsMember({"single", "pair", "none"}));
  prof->add_option("--bump-radius", pra.params.bump_radius)->capture_default_str();
  prof->add_option("--energy-floor", pra.params.energy_floor)->capture_default_str();
  prof->add_option("--separations", pra.params.separations, "Pair separations along the sequence")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  const std::string started = utc_now();
  Outcome o;
  std::string command;
  try {
    if (*verify) {
      command = "verify";
      o = cmd_verify(common, va);
    } else if (*probe) {
      command = "probe";
      o = cmd_probe(common, pa);
    } else if (*cover) {
      command = "cover";
      o = cmd_cover(common, ca);
    } else if (*maxi) {
      command = "maximize";
      o = cmd_maximize(common, ma);
    } else {
      command = "profiles";
      o = cmd_profiles(common, pra);
    }
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::length_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }

  o.report["convention"] = std::string(kMetricConvention);
  o.report["status"] = status_of(o.code);
  o.report["exit_code"] = o.code;
  Json meta{{"command", command},
            {"argv", std::vector<std::string>(argv, argv + argc)},
            {"started", started},
            {"finished", utc_now()},
            {"threads", thread_count()},
            {"version", kVersion}};
  try {
    write_outputs(common.out, o);
    write_json_atomic(fs::path(common.out) / "metadata.json", meta);
  } catch (const std::exception& e) {
    std::cerr << "cannot write output: " << e.what() << '\n';
    return kExitConfig;
  }
  std::cout << command << ": " << status_of(o.code) << " (report " << (fs::path(common.out) / "report.json").string()
            << ")\n";
  for (const auto& f : o.report["failures"]) std::cout << "  " << f.get<std::string>() << '\n';
  return o.code;
}
