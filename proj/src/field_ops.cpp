#include "hyptm/field_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "hyptm/interpolate.hpp"
#include "hyptm/parallel.hpp"

namespace hyptm {

double dirichlet_inner(const Field& u, const Field& v) {
  const PolarGrid& g = u.grid();
  if (!same_grid(g, v.grid())) throw std::invalid_argument("dirichlet_inner: fields live on different grids");
  const std::size_t n = g.n_rho();
  const std::size_t m = g.n_theta();
  const double dth = g.dtheta();
  std::vector<double> rows(n, 0.0);
  const double u0 = u.origin_value();
  const double v0 = v.origin_value();
  parallel_for(n, [&](std::size_t i) {
    const auto ur = u.ring(i);
    const auto vr = v.ring(i);
    double radial = 0.0;
    if (i == 0) {
      for (std::size_t j = 0; j < m; ++j) radial += (ur[j] - u0) * (vr[j] - v0);
    } else {
      const auto up = u.ring(i - 1);
      const auto vp = v.ring(i - 1);
      for (std::size_t j = 0; j < m; ++j) radial += (ur[j] - up[j]) * (vr[j] - vp[j]);
    }
    double angular = 0.0;
    if (m > 1) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = j + 1 == m ? 0 : j + 1;
        angular += (ur[k] - ur[j]) * (vr[k] - vr[j]);
      }
    }
    rows[i] = g.edge_coef(i) * radial * dth + g.ring_coef(i) * angular / dth;
  });
  return ordered_sum(rows);
}

double dirichlet_energy(const Field& u) { return dirichlet_inner(u, u); }
double dirichlet_energy(const RadialField& u) { return dirichlet_energy(u.as_field()); }

namespace {

Quadrature integrate_with(const Field& g, bool euclid, double tail_tol) {
  const PolarGrid& grid = g.grid();
  const std::size_t n = grid.n_rho();
  std::vector<double> rows(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double v : g.ring(i)) s += v;
    rows[i] = s * (euclid ? grid.euclid_weight(i) : grid.weight(i));
  }
  Quadrature q;
  q.value = ordered_sum(rows);
  const std::size_t tail_ring = grid.dirichlet_outer() && n >= 2 ? n - 2 : n - 1;
  double tail = 0.0;
  for (double v : g.ring(tail_ring)) tail += std::abs(v);
  q.tail_density = tail * grid.dtheta() * grid.metric_a(tail_ring);
  q.tail_warning = q.tail_density > tail_tol;
  return q;
}

double integrate_of(const Field& u, bool euclid, const std::function<double(double)>& f) {
  const PolarGrid& grid = u.grid();
  const std::size_t n = grid.n_rho();
  std::vector<double> rows(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double v : u.ring(i)) s += f(v);
    rows[i] = s * (euclid ? grid.euclid_weight(i) : grid.weight(i));
  }
  return ordered_sum(rows);
}

}  // namespace

Quadrature integrate_dmu(const Field& g, double tail_tol) { return integrate_with(g, false, tail_tol); }
Quadrature integrate_dx(const Field& g, double tail_tol) { return integrate_with(g, true, tail_tol); }

double integrate_dmu_of(const Field& u, const std::function<double(double)>& f) {
  return integrate_of(u, false, f);
}
double integrate_dx_of(const Field& u, const std::function<double(double)>& f) {
  return integrate_of(u, true, f);
}

Pullback pullback_checked(const Field& u, const DiskPoint& zeta, GridPtr out_grid, double leak_tol) {
  if (u.grid().kind() != GridKind::hyperbolic_disk) {
    throw std::invalid_argument("pullback: requires a hyperbolic grid");
  }
  if (!out_grid) out_grid = u.grid_ptr();
  if (out_grid->kind() != GridKind::hyperbolic_disk) {
    throw std::invalid_argument("pullback: output grid must be hyperbolic");
  }
  if (zeta.norm_sq() == 0.0 && same_grid(*out_grid, u.grid())) return {u, 0.0, false};

  const MobiusMap eta(zeta);
  const FieldInterpolator interp(u);
  const std::size_t m = out_grid->n_theta();
  std::vector<double> values(out_grid->size(), 0.0);
  parallel_for(out_grid->n_rho() - 1, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) {
      const PolarPoint p = disk_drop(eta(polar_lift(out_grid->rho(i), out_grid->theta(j))));
      values[i * m + j] = interp(p.rho, p.theta);
    }
  });

  // Source nodes w are covered iff d(w, -zeta) <= rho_max of the output grid.
  const PolarGrid& src = u.grid();
  const DiskPoint anchor = -zeta;
  double leaked = 0.0;
  for (std::size_t i = 0; i + 1 < src.n_rho(); ++i) {
    const auto r = u.ring(i);
    for (std::size_t j = 0; j < src.n_theta(); ++j) {
      if (r[j] == 0.0 || std::abs(r[j]) <= leaked) continue;
      if (geodesic_distance(polar_lift(src.rho(i), src.theta(j)), anchor) > out_grid->rho_max()) {
        leaked = std::abs(r[j]);
      }
    }
  }
  const double scale = u.max_abs();
  Pullback out{Field(std::move(out_grid), std::move(values)), leaked, false};
  out.leaked = scale > 0.0 && leaked > leak_tol * scale;
  return out;
}

RadialField dilate_radial(const RadialField& u, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("dilate_radial: s must be positive");
  const auto nodes = u.grid().nodes();
  std::vector<double> moved(nodes.size());
  std::vector<double> values(nodes.size());
  const double amp = 1.0 / std::sqrt(s);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    // r' = r^{1/s}: log r' = log(r) / s, rho' = artanh(r').
    const double log_r = -log_inverse_radius(nodes[i]) / s;
    const double r = std::exp(log_r);
    const double one_minus_r = -std::expm1(log_r);
    moved[i] = 0.5 * (std::log1p(r) - std::log(one_minus_r));
    values[i] = amp * u[i];
  }
  values.back() = 0.0;
  return RadialField(RadialGrid(std::move(moved)), std::move(values));
}

RadialField resample(const RadialField& u, const RadialGrid& grid) {
  FieldInterpolator interp(u.as_field());
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) v[i] = interp(grid[i], 0.0);
  v.back() = 0.0;
  return RadialField(grid, std::move(v));
}

double weighted_sup_norm(const RadialField& u) {
  double best = 0.0;
  const auto nodes = u.grid().nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    best = std::max(best, std::abs(u[i]) / std::sqrt(log_inverse_radius(nodes[i])));
  }
  return best;
}

double hardy_ratio(const Field& u) {
  const double mass = integrate_dmu_of(u, [](double x) { return x * x; });
  if (!(mass > 0.0)) throw std::domain_error("hardy_ratio: zero field");
  return dirichlet_energy(u) / mass;
}

double hardy_ratio(const RadialField& u) { return hardy_ratio(u.as_field()); }

}  // namespace hyptm
