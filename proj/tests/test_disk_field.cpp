#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hyptm/families.hpp"
#include "hyptm/field_io.hpp"
#include "hyptm/field_ops.hpp"
#include "hyptm/interpolate.hpp"
#include "hyptm/poisson.hpp"
#include "hyptm/variational.hpp"
#include "oracle.hpp"

using namespace hyptm;

namespace {

const GridPtr& default_grid() {
  static const GridPtr g = PolarGrid::hyperbolic_uniform();
  return g;
}

double max_node_error(const Field& u, const std::function<double(double, double)>& f) {
  double e = 0.0;
  const PolarGrid& g = u.grid();
  for (std::size_t i = 0; i < g.n_rho(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) e = std::max(e, std::abs(u(i, j) - f(g.rho(i), g.theta(j))));
  return e;
}

double poisson_error(std::size_t n_rho, std::size_t n_theta) {
  const GridPtr g = PolarGrid::hyperbolic_uniform(12.0, n_rho, n_theta);
  const Field dens = Field::from_polar(g, [](double r, double) { return 4.0 * std::pow(std::cosh(r), -4.0); });
  const PoissonSolution s = solve_poisson_density(dens);
  CHECK(s.converged);
  CHECK(s.relative_residual < 1e-10);
  return max_node_error(s.solution, [](double r, double) { return std::pow(std::cosh(r), -2.0); });
}

}  // namespace

TEST_SUITE("unit") {
  TEST_CASE("grid construction") {
    const RadialGrid r = RadialGrid::uniform(2.0, 4);
    CHECK(r.size() == 4);
    CHECK(r[0] == doctest::Approx(0.5));
    CHECK(r.outer() == 2.0);
    CHECK_THROWS_AS(RadialGrid({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(PolarGrid::hyperbolic_uniform(19.0, 10, 8), std::invalid_argument);
    const std::vector<double> b{0.52};
    CHECK(RadialGrid::uniform(2.0, 4).with_breakpoints(b)[0] == 0.52);
  }

  TEST_CASE("field invariants") {
    const GridPtr g = PolarGrid::hyperbolic_uniform(4.0, 8, 4);
    Field u = Field::from_polar(g, [](double, double) { return 1.0; });
    for (double v : u.ring(7)) CHECK(v == 0.0);
    std::vector<double> bad(g->size(), 1.0);
    CHECK_THROWS_AS(Field(g, bad), std::invalid_argument);
    std::vector<double> nan(g->size(), 0.0);
    nan[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Field(g, nan), std::invalid_argument);
    CHECK(Field(g).is_zero());
    CHECK(u.origin_value() == 1.0);
  }

  TEST_CASE("zero field integrals vanish") {
    const Field z(default_grid());
    CHECK(dirichlet_energy(z) == 0.0);
    CHECK(integrate_dmu(z).value == 0.0);
    CHECK_THROWS_AS(hardy_ratio(z), std::domain_error);
  }

  TEST_CASE("field file round trip is exact") {
    const GridPtr g = PolarGrid::hyperbolic_uniform(6.0, 32, 16);
    const Field u = random_smooth_field(g, 9);
    std::stringstream ss;
    write_field(u, ss);
    const Field v = read_field(ss);
    CHECK(same_grid(u.grid(), v.grid()));
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(u.values()[k] == v.values()[k]);
    std::stringstream bad("hyptm-field 1\nconvention curvature-minus-one\n");
    CHECK_THROWS_AS(read_field(bad), std::runtime_error);
  }

  TEST_CASE("pullback by the origin is the identity") {
    const Field u = random_smooth_field(default_grid(), 3);
    const Field v = pullback(u, DiskPoint{});
    CHECK(max_node_error(v, [&](double, double) { return 0.0; }) == doctest::Approx(u.max_abs()));
    double diff = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) diff = std::max(diff, std::abs(u.values()[k] - v.values()[k]));
    CHECK(diff < 1e-14);
  }

  TEST_CASE("dilation by one is the identity") {
    const RadialField u = truncated_log(RadialGrid::uniform(12.0, 256));
    const RadialField v = dilate_radial(u, 1.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(v[i] == u[i]);
      CHECK(v.grid()[i] == doctest::Approx(u.grid()[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("weighted sup norm of sqrt(log 1/r) is one") {
    const RadialField u =
        RadialField::from_profile(RadialGrid::uniform(12.0, 512), [](double r) { return std::sqrt(log_inverse_radius(r)); });
    CHECK(weighted_sup_norm(u) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("zero load gives the zero solution") {
    const std::vector<double> load(default_grid()->size(), 0.0);
    const PoissonSolution s = solve_dirichlet_form(default_grid(), load);
    CHECK(s.solution.is_zero());
    CHECK(s.relative_residual == 0.0);
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("one minus r squared: energy 2 pi, mass pi, Hardy ratio 2") {
    const RadialField u = one_minus_r2(RadialGrid::uniform(12.0, 512));
    CHECK(dirichlet_energy(u) == doctest::Approx(2.0 * oracle::pi).epsilon(1e-5));
    CHECK(hardy_ratio(u) == doctest::Approx(2.0).epsilon(1e-4));
    const Field f = u.to_field(64);
    CHECK(hardy_ratio(f) == doctest::Approx(2.0).epsilon(1e-4));
  }

  TEST_CASE("truncated log energy is 2 pi at 2048 radial nodes") {
    const std::vector<double> kink{truncated_log_kink()};
    const RadialField u = truncated_log(RadialGrid::uniform(12.0, 2048).with_breakpoints(kink));
    CHECK(dirichlet_energy(u) == doctest::Approx(2.0 * oracle::pi).epsilon(1e-4));
  }

  TEST_CASE("Moser fields have unit energy") {
    for (long k : {4L, 16L, 64L, 256L}) {
      CHECK(dirichlet_energy(moser_field(k)) == doctest::Approx(1.0).epsilon(1e-3));
    }
  }

  TEST_CASE("bump energy and mass against radial quadrature") {
    const double R = 2.0;
    const Field u = poly_bump(default_grid(), DiskPoint{}, R);
    const double e_ref = oracle::radial_energy([R](double t) { return oracle::bump_deriv(t, R); }, R);
    const double m_ref = oracle::radial_dmu([R](double t) { return std::pow(oracle::bump(t, R), 2); }, R);
    CHECK(dirichlet_energy(u) == doctest::Approx(e_ref).epsilon(1e-4));
    CHECK(integrate_dmu_of(u, [](double x) { return x * x; }) == doctest::Approx(m_ref).epsilon(1e-6));
  }

  TEST_CASE("smoothed indicator integrates to the ball area") {
    const auto ind = [](double r) { return 0.5 * std::erfc((r - 1.0) / 0.05); };
    const Field g = Field::from_polar(default_grid(), [&](double r, double) { return ind(r); });
    const double smoothed = oracle::radial_dmu(ind, 2.0);
    CHECK(integrate_dmu(g).value == doctest::Approx(smoothed).epsilon(1e-4));
    CHECK(smoothed == doctest::Approx(std::numbers::pi * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-2));
  }

  TEST_CASE("quadrature ball areas") {
    for (double rho : {0.5, 1.0, 2.0}) {
      const GridPtr g = PolarGrid::hyperbolic(RadialGrid::uniform(rho, 2048), 8);
      double area = 0.0;
      for (std::size_t i = 0; i < g->n_rho(); ++i) area += g->weight(i) * static_cast<double>(g->n_theta());
      CHECK(area == doctest::Approx(oracle::ball_area(rho)).epsilon(1e-6));
    }
  }

  TEST_CASE("Moser plateau value and weighted sup norm") {
    const RadialField m = moser_field(16);
    CHECK(m[0] == doctest::Approx(std::sqrt(std::log(16.0) / (2.0 * oracle::pi))).epsilon(1e-14));
    CHECK(std::abs(weighted_sup_norm(m) - 1.0 / std::sqrt(2.0 * oracle::pi)) < 1e-6);
  }

  TEST_CASE("Poisson solve of a manufactured radial solution") {
    const double e256 = poisson_error(256, 128);
    const double e512 = poisson_error(512, 256);
    const double e1024 = poisson_error(1024, 512);
    MESSAGE("max node errors " << e256 << " " << e512 << " " << e1024);
    CHECK(e1024 < 1e-4);
    CHECK(std::log2(e256 / e512) > 1.0);
    CHECK(std::log2(e512 / e1024) > 1.0);
  }

  TEST_CASE("Poisson solve of a manufactured non-radial solution") {
    // v = tanh(rho) sech^2(rho) cos(theta) = x (1 - r^2) in Cartesian form.
    const GridPtr g = default_grid();
    const Field dens = Field::from_polar(g, [](double r, double t) {
      return 8.0 * std::tanh(r) * std::pow(std::cosh(r), -4.0) * std::cos(t);
    });
    const PoissonSolution s = solve_poisson_density(dens);
    const double err = max_node_error(s.solution, [](double r, double t) {
      return std::tanh(r) * std::pow(std::cosh(r), -2.0) * std::cos(t);
    });
    CHECK(err < 1e-4);
  }
}

TEST_SUITE("property") {
  TEST_CASE("Hardy ratio is scale invariant") {
    const Field u = random_smooth_field(default_grid(), 4);
    const double h = hardy_ratio(u);
    for (double c : {0.1, 10.0}) CHECK(std::abs(hardy_ratio(c * u) - h) < 1e-12 * h);
  }

  TEST_CASE("Moser fields satisfy the Hardy bound") {
    CHECK(hardy_ratio(moser_field(16)) >= 0.25 * (1.0 - 1e-3));
  }

  TEST_CASE("energy and measure are Moebius invariant and converge under refinement") {
    double defects[2];
    int level = 0;
    for (const GridPtr& g : {default_grid(), PolarGrid::hyperbolic_uniform(12.0, 1024, 512)}) {
      const Field u = poly_bump(g, DiskPoint{}, 3.0);
      const DiskPoint z = polar_lift(1.0, 0.7);
      const Field v = pullback(u, z);
      const double e0 = dirichlet_energy(u);
      defects[level++] = std::abs(dirichlet_energy(v) - e0) / e0;
      const double m0 = integrate_dmu(u).value;
      CHECK(std::abs(integrate_dmu(v).value - m0) < 1e-3 * m0);
    }
    CHECK(defects[0] < 1e-3);
    CHECK(std::log2(defects[0] / defects[1]) >= 1.0);
  }

  TEST_CASE("measure invariance for random shifts with d <= 2") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Field g = poly_bump(default_grid(), DiskPoint{}, 3.0);
    const double m0 = integrate_dmu(g).value;
    for (int k = 0; k < 5; ++k) {
      const DiskPoint z = polar_lift(2.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      CHECK(std::abs(integrate_dmu(pullback(g, z)).value - m0) < 1e-3 * m0);
    }
  }

  TEST_CASE("double shift returns to the original field") {
    const Field u = poly_bump(default_grid(), DiskPoint{}, 3.0);
    const DiskPoint z = polar_lift(1.0, 0.4);
    const Field back = pullback(pullback(u, z), -z);
    double diff = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) diff = std::max(diff, std::abs(u.values()[k] - back.values()[k]));
    CHECK(diff < 1e-3);
  }

  TEST_CASE("pullback of a closed form matches the shifted closed form") {
    const Field u = sech_profile(default_grid(), DiskPoint{}, 4.0);
    const DiskPoint z = polar_lift(1.0, 2.0);
    const Field exact = sech_profile(default_grid(), z, 4.0);
    const Field v = pullback(u, z);
    double diff = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) diff = std::max(diff, std::abs(exact.values()[k] - v.values()[k]));
    CHECK(diff < 1e-3);
  }

  TEST_CASE("dilation preserves energy and the weighted sup norm") {
    const std::vector<double> kink{truncated_log_kink()};
    const RadialField u = truncated_log(RadialGrid::uniform(12.0, 2048).with_breakpoints(kink));
    const double e = dirichlet_energy(u);
    const double s0 = weighted_sup_norm(u);
    for (double s : {0.25, 0.5, 2.0, 4.0}) {
      const RadialField v = dilate_radial(u, s);
      CHECK(std::abs(dirichlet_energy(v) - e) < 1e-3 * e);
      CHECK(std::abs(weighted_sup_norm(v) - s0) < 1e-6);
    }
  }

  TEST_CASE("dilations compose") {
    const RadialField u = moser_field(64);
    for (auto [s, t] : {std::pair{0.5, 2.0}, std::pair{2.0, 3.0}, std::pair{0.25, 0.5}}) {
      const RadialField a = dilate_radial(dilate_radial(u, s), t);
      const RadialField b = dilate_radial(u, s * t);
      for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(std::abs(a[i] - b[i]) < 1e-3);
        CHECK(a.grid()[i] == doctest::Approx(b.grid()[i]).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("quadrature converges at order >= 1 on smooth fields") {
    double err[2];
    int level = 0;
    const double R = 2.5;
    const double ref = oracle::radial_dmu([R](double t) { return oracle::bump(t, R); }, R);
    for (std::size_t n : {64u, 128u}) {
      const GridPtr g = PolarGrid::hyperbolic_uniform(6.0, n, 16);
      err[level++] = std::abs(integrate_dmu(poly_bump(g, DiskPoint{}, R)).value - ref);
    }
    CHECK(std::log2(err[0] / err[1]) >= 1.0);
  }

  TEST_CASE("interpolation reproduces smooth fields between nodes") {
    const Field u = sech_profile(default_grid(), polar_lift(0.5, 1.0), 4.0);
    const FieldInterpolator interp(u);
    double worst = 0.0;
    for (double r : {0.003, 0.1, 0.77, 1.5}) {
      for (double t : {0.01, 1.0, 3.3, 6.0}) {
        const DiskPoint z = MobiusMap(polar_lift(0.5, 1.0))(polar_lift(r, t));
        worst = std::max(worst, std::abs(interp(r, t) - std::pow(z.complement(), 2.0)));
      }
    }
    CHECK(worst < 1e-4);
  }

  TEST_CASE("the Dirichlet form is the quadratic form of the Poisson operator") {
    const Field u = random_smooth_field(default_grid(), 2);
    const Field v = random_smooth_field(default_grid(), 7);
    const std::vector<double> ku = apply_dirichlet_form(u);
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) s += ku[k] * v.values()[k];
    CHECK(s == doctest::Approx(dirichlet_inner(u, v)).epsilon(1e-10));
    const PoissonSolution sol = solve_dirichlet_form(default_grid(), ku);
    double diff = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) diff = std::max(diff, std::abs(sol.solution.values()[k] - u.values()[k]));
    CHECK(diff < 1e-9);
  }
}
