#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "hyptm/families.hpp"
#include "hyptm/field_ops.hpp"
#include "hyptm/functionals.hpp"
#include "hyptm/local_bound.hpp"
#include "oracle.hpp"

using namespace hyptm;

namespace {

const GridPtr& default_grid() {
  static const GridPtr g = PolarGrid::hyperbolic_uniform();
  return g;
}

Field sech2(const GridPtr& g, double a) {
  return Field::from_polar(g, [a](double r, double) { return a * std::pow(std::cosh(r), -2.0); });
}

}  // namespace

TEST_SUITE("unit") {
  TEST_CASE("zero field gives zero") {
    const Field z(default_grid());
    CHECK(tm_invariant(z, 4.0 * std::numbers::pi).value == 0.0);
    CHECK(tm_euclidean(z, 1.0).value == 0.0);
    CHECK(f_integral(z, quartic()).value == 0.0);
  }

  TEST_CASE("named nonlinearities") {
    CHECK(nonlinearity_by_name("quartic").eval(2.0) == 16.0);
    CHECK(nonlinearity_by_name("sextic").eval(2.0) == 64.0);
    CHECK(nonlinearity_by_name("power:3").eval(-2.0) == doctest::Approx(8.0));
    CHECK(nonlinearity_by_name("tm-sub:1").eval(1.0) == doctest::Approx(std::exp(1.0) - 2.0));
    CHECK(nonlinearity_by_name("tm-sub").growth_p == doctest::Approx(2.0 * std::numbers::pi));
    CHECK_THROWS_AS(nonlinearity_by_name("cubic"), std::invalid_argument);
    CHECK_THROWS_AS(nonlinearity_by_name("power:2"), std::invalid_argument);
    CHECK_THROWS_AS(nonlinearity_by_name("tm-sub:13"), std::invalid_argument);
    CHECK_THROWS_AS(nonlinearity_by_name("power:abc"), std::invalid_argument);
  }

  TEST_CASE("validation accepts the built-ins") {
    for (const char* name : {"quartic", "sextic", "power:3", "tm-sub"}) {
      const NonlinearityCheck c = validate(nonlinearity_by_name(name));
      CHECK_MESSAGE(c.ok, name);
    }
  }

  TEST_CASE("validation rejects bad nonlinearities") {
    Nonlinearity shifted = quartic();
    shifted.eval = [](double s) { return s * s * s * s + 1.0; };
    CHECK_FALSE(validate(shifted).ok);

    Nonlinearity wrong_deriv = quartic();
    wrong_deriv.deriv = [](double s) { return 3.0 * s * s * s; };
    CHECK_FALSE(validate(wrong_deriv).ok);

    Nonlinearity square;
    square.name = "square";
    square.eval = [](double s) { return s * s; };
    square.deriv = [](double s) { return 2.0 * s; };
    square.growth_r = 2.0;
    square.convexity_claim = true;
    CHECK_FALSE(validate(square).ok);
  }

  TEST_CASE("saturation is flagged") {
    const Field big = sech2(default_grid(), 30.0);
    const TmValue v = tm_invariant(big, 4.0 * std::numbers::pi);
    CHECK(v.saturated);
    CHECK(v.saturated_nodes > 0);
  }

  TEST_CASE("Brezis-Lieb identity cases vanish exactly") {
    const Field u = poly_bump(default_grid(), DiskPoint{}, 2.0);
    const Field z(default_grid());
    for (const char* name : {"quartic", "tm-sub"}) {
      const Nonlinearity f = nonlinearity_by_name(name);
      CHECK(brezis_lieb_defect(u, z, f).value == 0.0);
      CHECK(brezis_lieb_defect(u, u, f).value == 0.0);
    }
  }

  TEST_CASE("local bound on the zero field and at the hypothesis edge") {
    const GridPtr w = window_grid();
    const Field z(w);
    const LocalBoundReport r = local_bound_check(z, std::numbers::pi / 4.0, 1.0, 1.5);
    CHECK(r.lhs == 0.0);
    CHECK(r.ok);
    const Field v = scale_to_norm(random_window_field(w, 3), 1.0, 1.0);
    CHECK_THROWS_AS(local_bound_check(v, std::numbers::pi / 4.0, 1.0, 1.5), HypothesisError);
    const Field v2 = scale_to_norm(random_window_field(w, 3), 1.2, 1.0);
    CHECK_THROWS_AS(local_bound_check(v2, std::numbers::pi / 4.0, 1.0, 1.5), HypothesisError);
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("invariant TM integral of a sech^2 profile against its series") {
    const GridPtr g = PolarGrid::hyperbolic(RadialGrid::uniform(14.0, 8192), 1);
    for (double p : {1.0, 2.0 * std::numbers::pi, 4.0 * std::numbers::pi}) {
      for (double a : {0.3, 0.7}) {
        const Field u = sech2(g, a);
        const double ref = oracle::tm_sech2_series(a, p, false);
        CHECK(tm_invariant(u, p).value == doctest::Approx(ref).epsilon(1e-6));
        CHECK(tm_euclidean(u, p).value == doctest::Approx(oracle::tm_sech2_series(a, p, true)).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("f integral of a bump against radial quadrature") {
    const double R = 2.0;
    const Field u = poly_bump(default_grid(), DiskPoint{}, R);
    const double ref = oracle::radial_dmu([R](double t) { return std::pow(oracle::bump(t, R), 4); }, R);
    CHECK(f_integral(u, quartic()).value == doctest::Approx(ref).epsilon(1e-4));
  }

  TEST_CASE("the f integral is Moebius invariant") {
    const Field u = poly_bump(default_grid(), DiskPoint{}, 3.0);
    const double ref = f_integral(u, quartic()).value;
    for (double d : {0.5, 1.0, 1.5}) {
      const Field v = pullback(u, polar_lift(d, 0.9));
      CHECK(std::abs(f_integral(v, quartic()).value - ref) < 1e-2 * ref);
    }
  }

  TEST_CASE("local bound with the calibrated constant") {
    const GridPtr w = window_grid();
    const LocalCalibration cal = calibrate_local_constant(w, std::numbers::pi / 4.0, 1.0, 1, 50);
    CHECK(cal.family_size == 50);
    CHECK(cal.constant > std::numbers::pi / 4.0);
    const Field v = scale_to_norm(random_window_field(w, 1000001), 0.5, 1.0);
    const LocalBoundReport r = local_bound_check(v, std::numbers::pi / 4.0, 1.0, cal.constant);
    CHECK(r.norm_sq == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(cal.constant).epsilon(1e-12));
    CHECK(r.ok);
  }
}

TEST_SUITE("property") {
  TEST_CASE("TM integral is increasing in the exponent") {
    const Field u = random_smooth_field(default_grid(), 5);
    double prev = 0.0;
    for (double p = 0.5; p < 4.0 * std::numbers::pi; p += 0.5) {
      const double v = tm_invariant(u, p).value;
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("Brezis-Lieb defect decays with separation") {
    const Nonlinearity f = quartic();
    double prev = std::numeric_limits<double>::infinity();
    for (double d : {2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
      const Field u = sech_profile(default_grid(), DiskPoint{}, 4.0);
      const Field far = sech_profile(default_grid(), polar_lift(d, 0.0), 4.0);
      const double defect = std::abs(brezis_lieb_defect(u + far, u, f).value);
      CHECK(defect < prev);
      prev = defect;
    }
  }

  TEST_CASE("local bound holds across the norm range") {
    const GridPtr w = window_grid();
    const double q = std::numbers::pi / 4.0;
    const LocalCalibration cal = calibrate_local_constant(w, q, 1.0, 1, 50);
    for (int k = 0; k < 9; ++k) {
      const double n = 0.1 + 0.1 * k;
      for (std::uint64_t seed : {2000001u, 2000002u, 2000003u}) {
        const Field v = scale_to_norm(random_window_field(w, seed), n, 1.0);
        const LocalBoundReport r = local_bound_check(v, q, 1.0, cal.constant);
        CHECK(r.lhs <= r.rhs);
      }
    }
  }

  TEST_CASE("restriction of a disk field to a window") {
    const Field u = sech_profile(default_grid(), DiskPoint{}, 2.0, 0.5);
    const LocalBoundReport r = local_tm_bound_check(u, DiskPoint(0.2, 0.1), std::numbers::pi / 4.0, 1.0, 1.5);
    CHECK(r.norm_sq > 0.0);
    CHECK(r.norm_sq < 1.0);
    CHECK_THROWS(local_tm_bound_check(u, DiskPoint(0.6, 0.0), std::numbers::pi / 4.0, 1.0, 1.5));
  }
}
