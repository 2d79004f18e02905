#include "hyptm/variational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "hyptm/families.hpp"
#include "hyptm/field_ops.hpp"
#include "hyptm/interpolate.hpp"
#include "hyptm/parallel.hpp"
#include "hyptm/poisson.hpp"

namespace hyptm {

RadialField moser_field(long k, const RadialGrid& grid) {
  if (k < 2) throw std::invalid_argument("moser_field: k must be at least 2");
  const double kink = std::atanh(1.0 / static_cast<double>(k));
  if (!(kink > grid[0]) || !(kink < grid.outer())) {
    throw ResolutionError("moser_field: kink radius " + std::to_string(kink) + " for k = " + std::to_string(k) +
                          " is not resolved by a grid starting at " + std::to_string(grid[0]));
  }
  const double logk = std::log(static_cast<double>(k));
  const double plateau = std::sqrt(logk / (2.0 * std::numbers::pi));
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * logk);
  return RadialField::from_profile(grid, [=](double rho) {
    return rho <= kink ? plateau : log_inverse_radius(rho) * scale;
  });
}

RadialField moser_field(long k) { return moser_field(k, moser_grid_for(std::max(k, 1024L))); }

std::vector<ProbeEntry> blowup_probe(double p, const std::vector<long>& ks, const RadialGrid& grid) {
  if (!(p > 0.0)) throw std::invalid_argument("blowup_probe: p must be positive");
  std::vector<ProbeEntry> out;
  out.reserve(ks.size());
  for (long k : ks) {
    const TmValue v = tm_invariant(moser_field(k, grid).as_field(), p);
    out.push_back({k, v.value, v.saturated, v.tail_warning});
  }
  return out;
}

std::vector<ProbeEntry> blowup_probe(double p, const std::vector<long>& ks) {
  if (ks.empty()) return {};
  return blowup_probe(p, ks, moser_grid_for(std::max(1024L, *std::max_element(ks.begin(), ks.end()))));
}

ProbeVerdict probe_verdict(const std::vector<ProbeEntry>& entries, double growth_factor) {
  ProbeVerdict v;
  if (entries.empty()) return v;
  double lo = entries.front().value, hi = lo;
  v.monotone = true;
  for (std::size_t n = 0; n < entries.size(); ++n) {
    lo = std::min(lo, entries[n].value);
    hi = std::max(hi, entries[n].value);
    v.any_saturated = v.any_saturated || entries[n].saturated;
    if (n > 0 && !(entries[n].value > entries[n - 1].value)) v.monotone = false;
  }
  v.spread = lo > 0.0 ? hi / lo : 0.0;
  v.growth = entries.front().value > 0.0 ? entries.back().value / entries.front().value : 0.0;
  v.growing = v.growth >= growth_factor && v.monotone && !v.any_saturated;
  return v;
}

RieszGradient riesz_gradient(const Field& u, const Nonlinearity& f) {
  const PolarGrid& g = u.grid();
  std::vector<double> load(g.size(), 0.0);
  for (std::size_t i = 0; i + 1 < g.n_rho(); ++i) {
    const auto r = u.ring(i);
    for (std::size_t j = 0; j < g.n_theta(); ++j) load[i * g.n_theta() + j] = g.weight(i) * f.deriv(r[j]);
  }
  PoissonSolution s = solve_dirichlet_form(u.grid_ptr(), load);
  return {std::move(s.solution), s.relative_residual, s.converged};
}

namespace {

// Midpoint rule on the geodesic ball V_radius(0); ball averages around z are
// evaluated at the images eta_{-z}(q) of its nodes by bicubic interpolation,
// so they stay accurate where grid cells are wider than the ball.
struct BallQuadrature {
  std::vector<DiskPoint> nodes;
  std::vector<double> weight;
  std::vector<double> kernel;  // (1 - s)^2, s = sinh^2 d / sinh^2 radius
};

BallQuadrature ball_quadrature(double radius, std::size_t n_r = 16, std::size_t n_t = 32) {
  BallQuadrature q;
  const double h = radius / static_cast<double>(n_r);
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(n_t);
  const double sh2 = std::sinh(radius) * std::sinh(radius);
  for (std::size_t i = 0; i < n_r; ++i) {
    const double rho = (static_cast<double>(i) + 0.5) * h;
    const double s = std::sinh(rho) * std::sinh(rho) / sh2;
    for (std::size_t j = 0; j < n_t; ++j) {
      q.nodes.push_back(polar_lift(rho, (static_cast<double>(j) + 0.5 * static_cast<double>(i % 2)) * dt));
      q.weight.push_back(metric_area_factor(rho) * h * dt);
      q.kernel.push_back((1.0 - s) * (1.0 - s));
    }
  }
  return q;
}

// u^2 at the images of the quadrature nodes under eta_{-z}.
std::vector<double> local_squares(const FieldInterpolator& interp, const BallQuadrature& q, const DiskPoint& z) {
  const MobiusMap back(-z);
  std::vector<double> out(q.nodes.size());
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    const PolarPoint p = disk_drop(back(q.nodes[k]));
    const double v = interp(p.rho, p.theta);
    out[k] = v * v;
  }
  return out;
}

double kernel_score(const FieldInterpolator& interp, const BallQuadrature& q, const DiskPoint& z) {
  const std::vector<double> sq = local_squares(interp, q, z);
  double total = 0.0;
  for (std::size_t k = 0; k < sq.size(); ++k) total += q.weight[k] * q.kernel[k] * sq[k];
  return total;
}

double hard_mass(const FieldInterpolator& interp, const BallQuadrature& q, const DiskPoint& z) {
  const std::vector<double> sq = local_squares(interp, q, z);
  double total = 0.0;
  for (std::size_t k = 0; k < sq.size(); ++k) total += q.weight[k] * sq[k];
  return total;
}

// Fixed point of z -> eta_{-z}(kernel-weighted mean of u^2 seen from z): the
// mass around z is balanced about it.
DiskPoint barycenter(const FieldInterpolator& interp, const BallQuadrature& q, DiskPoint z) {
  for (int it = 0; it < 200; ++it) {
    const std::vector<double> sq = local_squares(interp, q, z);
    std::complex<double> num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t k = 0; k < sq.size(); ++k) {
      const double w = q.weight[k] * q.kernel[k] * sq[k];
      num += w * q.nodes[k].z();
      den += w;
    }
    if (!(den > 0.0)) break;
    const std::complex<double> m = num / den;
    if (std::abs(m) < 1e-13 || std::abs(m) >= 1.0) break;
    z = MobiusMap(-z)(DiskPoint(m));
  }
  return z;
}

}  // namespace

double ball_mass(const Field& u, const DiskPoint& center, double radius) {
  const FieldInterpolator interp(u);
  return hard_mass(interp, ball_quadrature(radius), center);
}

RecenterResult locate_peak(const Field& u, double radius) {
  if (u.is_zero()) throw std::invalid_argument("recenter: zero field");
  if (u.grid().kind() != GridKind::hyperbolic_disk) throw std::invalid_argument("recenter: hyperbolic grid required");
  const PolarGrid& g = u.grid();
  const FieldInterpolator interp(u);
  const BallQuadrature q = ball_quadrature(radius);
  const double peak = u.max_abs() * u.max_abs();

  // Coarse pass: the origin first, then strided high-amplitude nodes in grid order.
  std::vector<DiskPoint> strong;
  for (std::size_t i = 0; i + 1 < g.n_rho(); ++i) {
    const auto r = u.ring(i);
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      if (r[j] * r[j] >= 0.25 * peak) strong.push_back(polar_lift(g.rho(i), g.theta(j)));
    }
  }
  const std::size_t stride = std::max<std::size_t>((strong.size() + 4095) / 4096, 1);
  std::vector<DiskPoint> cands{DiskPoint{}};
  for (std::size_t k = 0; k < strong.size(); k += stride) cands.push_back(strong[k]);
  std::vector<double> coarse(cands.size());
  parallel_for(cands.size(), [&](std::size_t k) { coarse[k] = kernel_score(interp, q, cands[k]); });
  std::size_t best = 0;
  for (std::size_t k = 1; k < cands.size(); ++k) {
    if (coarse[k] > coarse[best]) best = k;
  }

  RecenterResult res{u, DiskPoint{}, 0.0, false, 0.0};
  std::size_t chosen = best;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (coarse[k] >= 0.95 * coarse[best] && geodesic_distance(cands[k], cands[best]) > 2.0 * radius) {
      res.ambiguous = true;
      res.runner_up_mass = std::max(res.runner_up_mass, coarse[k]);
      chosen = std::min(chosen, k);
    }
  }

  res.zeta = barycenter(interp, q, cands[chosen]);
  res.ball_mass = hard_mass(interp, q, res.zeta);
  return res;
}

RecenterResult recenter(const Field& u, double radius) {
  RecenterResult r = locate_peak(u, radius);
  r.field = pullback(u, -r.zeta);
  return r;
}

std::string to_string(OptimizerStatus s) {
  switch (s) {
    case OptimizerStatus::converged:
      return "converged";
    case OptimizerStatus::max_iters:
      return "max_iters";
    case OptimizerStatus::stagnated:
      return "stagnated";
  }
  return "unknown";
}

bool OptimizerTrace::ascent_monotone() const {
  for (std::size_t n = 1; n < objective_history.size(); ++n) {
    if (step_kinds[n] == StepKind::ascent && !(objective_history[n] > objective_history[n - 1])) return false;
  }
  return true;
}

GridPtr default_optimizer_grid() { return PolarGrid::hyperbolic_uniform(); }

Field default_seed(const GridPtr& grid, double t) { return with_energy(poly_bump(grid, DiskPoint{}, 2.0), t); }

OptimizerTrace maximize(const OptimizerConfig& cfg, const Nonlinearity& f) {
  if (!(cfg.t > 0.0 && cfg.t <= 1.0)) throw std::invalid_argument("maximize: t must lie in (0, 1]");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("maximize: step must be positive");
  if (!(cfg.grad_tol > 0.0)) throw std::invalid_argument("maximize: grad_tol must be positive");
  Field u = cfg.seed_field ? *cfg.seed_field : default_seed(default_optimizer_grid(), cfg.t);
  if (!(dirichlet_energy(u) > 0.0)) throw std::invalid_argument("maximize: seed field has zero energy");
  u = with_energy(std::move(u), cfg.t);

  OptimizerTrace tr;
  auto objective = [&f](const Field& v) { return f_integral(v, f).value; };
  auto record = [&tr, &cfg](double j, StepKind kind, const Field& v) {
    tr.objective_history.push_back(j);
    tr.step_kinds.push_back(kind);
    const double drift = std::abs(dirichlet_energy(v) - cfg.t);
    tr.constraint_drift.push_back(drift);
    tr.max_constraint_drift = std::max(tr.max_constraint_drift, drift);
  };
  double J = objective(u);
  record(J, StepKind::initial, u);
  const double min_shift = cfg.recenter_min_cells * u.grid().rho(0);

  tr.status = OptimizerStatus::max_iters;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    if (cfg.recenter_every > 0 && it % cfg.recenter_every == 0) {
      const RecenterResult rc = locate_peak(u);
      RecenterEvent ev;
      ev.iteration = it;
      ev.shift = rc.zeta;
      ev.distance = geodesic_distance(DiskPoint{}, rc.zeta);
      ev.ambiguous = rc.ambiguous;
      ev.objective_before = J;
      ev.objective_after = J;
      if (ev.distance >= min_shift) {
        u = with_energy(pullback(u, -rc.zeta), cfg.t);
        J = objective(u);
        ev.applied = true;
        ev.objective_after = J;
        record(J, StepKind::recenter, u);
        tr.recenter_shifts.push_back(rc.zeta);
      }
      tr.recenter_events.push_back(ev);
    }

    const RieszGradient rg = riesz_gradient(u, f);
    tr.max_solver_residual = std::max(tr.max_solver_residual, rg.relative_residual);
    const Field& g = rg.gradient;
    const double gg = dirichlet_energy(g);
    const double a = dirichlet_inner(g, u);
    Field gt = g;
    gt.axpy(-a / cfg.t, u);
    const double tt = dirichlet_energy(gt);
    const double res = gg > 0.0 ? std::sqrt(tt / gg) : 0.0;
    tr.residual_history.push_back(res);
    tr.final_residual = res;
    tr.iterations = it + 1;
    if (res < cfg.grad_tol) {
      tr.status = OptimizerStatus::converged;
      break;
    }

    // s = 1 with scale t / |a| is the normalized power step u -> g.
    const double scale = std::abs(a) > 1e-300 ? cfg.t / std::abs(a) : std::sqrt(cfg.t / tt);
    const double slope = tt * scale;
    double s = cfg.step;
    bool accepted = false;
    for (std::size_t h = 0; h <= cfg.max_halvings; ++h, s *= 0.5) {
      Field cand = u;
      cand.axpy(s * scale, gt);
      if (!(dirichlet_energy(cand) > 0.0)) continue;
      cand = with_energy(std::move(cand), cfg.t);
      const double jc = objective(cand);
      if (jc > J && jc >= J + cfg.armijo * s * slope) {
        u = std::move(cand);
        J = jc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      tr.status = OptimizerStatus::stagnated;
      break;
    }
    tr.step_sizes.push_back(s);
    record(J, StepKind::ascent, u);
  }
  tr.final_field = u;
  return tr;
}

VanishingReport vanishing_check(const std::vector<Field>& sequence, const Nonlinearity& f) {
  VanishingReport rep;
  for (const Field& u : sequence) {
    VanishingEntry e;
    e.concentration = u.is_zero() ? 0.0 : locate_peak(u).ball_mass;
    e.f_value = f_integral(u, f).value;
    rep.entries.push_back(e);
  }
  if (rep.entries.size() >= 2) {
    rep.concentration_decays = true;
    rep.functional_decays = true;
    for (std::size_t n = 1; n < rep.entries.size(); ++n) {
      if (!(rep.entries[n].concentration < rep.entries[n - 1].concentration)) rep.concentration_decays = false;
      if (!(std::abs(rep.entries[n].f_value) < std::abs(rep.entries[n - 1].f_value))) rep.functional_decays = false;
    }
  }
  rep.consistent = !rep.concentration_decays || rep.functional_decays;
  return rep;
}

ProfileReport profile_extract(const std::vector<Field>& sequence, double energy_floor, const ProfileOptions& opt) {
  if (sequence.size() < 3) throw std::invalid_argument("profile_extract: at least three fields are required");
  for (const Field& u : sequence) {
    if (!same_grid(u.grid(), sequence.front().grid())) throw std::invalid_argument("profile_extract: mixed grids");
  }
  ProfileReport rep;
  std::vector<Field> work = sequence;
  for (const Field& u : sequence) rep.max_input_energy = std::max(rep.max_input_energy, dirichlet_energy(u));
  const GridPtr grid = sequence.front().grid_ptr();
  const PolarGrid& g = *grid;
  const std::size_t n = work.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 3);
  double scale = 0.0;
  for (const Field& u : sequence) scale = std::max(scale, u.max_abs());

  for (std::size_t step = 0; step < opt.max_profiles && scale > 0.0; ++step) {
    bool remaining = false;
    for (std::size_t k = n - tail; k < n; ++k) remaining = remaining || work[k].max_abs() > 1e-12 * scale;
    if (!remaining) break;

    std::vector<DiskPoint> centers(n);
    std::vector<double> avg(g.size(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (work[k].max_abs() <= 1e-12 * scale) continue;
      const RecenterResult rc = recenter(work[k], opt.ball_radius);
      centers[k] = rc.zeta;
      if (k >= n - tail) {
        const auto v = rc.field.values();
        for (std::size_t q = 0; q < avg.size(); ++q) avg[q] += v[q] / static_cast<double>(tail);
      }
    }
    for (std::size_t i = 0; i < g.n_rho(); ++i) {
      if (g.rho(i) <= opt.compact_radius) continue;
      for (std::size_t j = 0; j < g.n_theta(); ++j) avg[i * g.n_theta() + j] = 0.0;
    }
    Field w(grid, std::move(avg));
    const double e = dirichlet_energy(w);
    if (e < energy_floor) break;
    for (std::size_t k = 0; k < n; ++k) work[k] -= pullback(w, centers[k]);
    if (!rep.profile_energies.empty() && e > rep.profile_energies.back()) rep.converged = false;
    rep.profiles.push_back(std::move(w));
    rep.profile_energies.push_back(e);
    rep.centers_per_step.push_back(std::move(centers));
    rep.energy_sum += e;
  }
  for (const Field& r : work) {
    rep.residual_dmu_norms.push_back(std::pow(integrate_dmu_of(r, [](double x) { return x * x * x * x; }), 0.25));
  }
  rep.energy_inequality_ok = rep.energy_sum <= (1.0 + opt.energy_slack) * rep.max_input_energy + 1e-12;
  return rep;
}

}  // namespace hyptm
