#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyptm/disk_geom.hpp"
#include "oracle.hpp"

using namespace hyptm;

namespace {

DiskPoint random_point(std::mt19937_64& rng, double rho_max = 3.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return polar_lift(rho_max * u(rng), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace

TEST_SUITE("unit") {
  TEST_CASE("mobius map examples") {
    const MobiusMap id(DiskPoint{});
    const DiskPoint z(0.3, 0.4);
    CHECK(id(z).re() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(id(z).im() == doctest::Approx(0.4).epsilon(1e-15));

    const MobiusMap m(DiskPoint(0.5, 0.0));
    CHECK(m(DiskPoint(0.5, 0.0)).abs() < 1e-15);
    const DiskPoint o = m(DiskPoint{});
    CHECK(o.re() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(o.im()) < 1e-15);

    const DiskPoint w(0.2, -0.1);
    const DiskPoint back = m.inverse()(m(w));
    CHECK(std::abs(back.re() - 0.2) < 1e-15);
    CHECK(std::abs(back.im() + 0.1) < 1e-15);
    CHECK(id.inverse().center().abs() == 0.0);
  }

  TEST_CASE("distance examples") {
    const DiskPoint a(0.1, 0.2);
    CHECK(geodesic_distance(a, a) == 0.0);
    CHECK(geodesic_distance(DiskPoint{}, DiskPoint(0.5, 0.0)) == doctest::Approx(0.549306144334).epsilon(1e-11));
  }

  TEST_CASE("measure weight") {
    CHECK(measure_weight(DiskPoint{}) == 1.0);
    const double r = std::sqrt(0.5);
    CHECK(measure_weight(DiskPoint(r, 0.0)) == doctest::Approx(4.0).epsilon(1e-14));
  }

  TEST_CASE("polar lift and drop") {
    const DiskPoint o = polar_lift(0.0, 1.3);
    CHECK(o.abs() == 0.0);
    const DiskPoint h = polar_lift(std::atanh(0.5), 0.0);
    CHECK(h.re() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h.im() == 0.0);
    const PolarPoint p = disk_drop(polar_lift(2.5, 4.0));
    CHECK(p.rho == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(p.theta == doctest::Approx(4.0).epsilon(1e-13));
    CHECK_THROWS_AS(polar_lift(-0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(polar_lift(30.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(DiskPoint(1.0, 0.0), std::domain_error);
  }

  TEST_CASE("points near the boundary keep their hyperbolic position") {
    const DiskPoint z = polar_lift(15.0, 0.3);
    CHECK(disk_drop(z).rho == doctest::Approx(15.0).epsilon(1e-12));
    const DiskPoint w = MobiusMap(polar_lift(15.0, 0.3))(DiskPoint{});
    CHECK(disk_drop(w).rho == doctest::Approx(15.0).epsilon(1e-10));
  }

  TEST_CASE("distance saturates with a flag") {
    const Distance d = geodesic_distance_checked(polar_lift(17.9, 0.0), polar_lift(17.9, std::numbers::pi));
    CHECK_FALSE(d.saturated);
    CHECK(d.value == doctest::Approx(35.8).epsilon(1e-9));
    CHECK(wrap_angle(-0.5) == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("distance agrees with the closed-form acosh expression") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 1000; ++k) {
      const DiskPoint a = random_point(rng), b = random_point(rng);
      const double ref = oracle::distance(a.z(), b.z());
      CHECK(std::abs(geodesic_distance(a, b) - ref) < 1e-9 * std::max(1.0, ref));
    }
  }

  TEST_CASE("radial distance matches the line integral of the metric density") {
    for (int j = 1; j <= 9; ++j) {
      const double r = 0.1 * j;
      CHECK(std::abs(geodesic_distance(DiskPoint{}, DiskPoint(r, 0.0)) - oracle::radial_length(r)) < 1e-10);
    }
  }

  TEST_CASE("ball area against radial quadrature") {
    for (double rho : {0.5, 1.0, 2.0}) {
      CHECK(ball_area(rho) == doctest::Approx(oracle::ball_area(rho)).epsilon(1e-9));
      CHECK(ball_area(rho) == doctest::Approx(std::numbers::pi * std::sinh(rho) * std::sinh(rho)).epsilon(1e-14));
    }
  }

  TEST_CASE("Jacobian against finite differences") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
      const MobiusMap m(random_point(rng, 2.0));
      const DiskPoint z = random_point(rng, 2.0);
      const double h = 1e-6;
      const auto f = [&](double dx, double dy) { return m(DiskPoint(z.re() + dx, z.im() + dy)).z(); };
      const auto dzx = (f(h, 0) - f(-h, 0)) / (2 * h);
      const auto dzy = (f(0, h) - f(0, -h)) / (2 * h);
      const double det = dzx.real() * dzy.imag() - dzx.imag() * dzy.real();
      CHECK(m.jacobian(z) == doctest::Approx(det).epsilon(1e-6));
    }
  }
}

TEST_SUITE("property") {
  TEST_CASE("round trips through the inverse are the identity") {
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const MobiusMap m(random_point(rng));
      const DiskPoint z = random_point(rng);
      const DiskPoint a = m.inverse()(m(z));
      const DiskPoint b = m(m.inverse()(z));
      worst = std::max({worst, std::abs(a.z() - z.z()), std::abs(b.z() - z.z())});
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("forward after inverse with a fixed center") {
    std::mt19937_64 rng(2);
    const MobiusMap m(DiskPoint(0.3, 0.3));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const DiskPoint z = random_point(rng, 2.0);
      worst = std::max(worst, std::abs(m(m.inverse()(z)).z() - z.z()));
    }
    CHECK(worst < 1e-14);
  }

  TEST_CASE("mobius maps are isometries") {
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const MobiusMap m(random_point(rng));
      const DiskPoint a = random_point(rng), b = random_point(rng);
      worst = std::max(worst, std::abs(geodesic_distance(m(a), m(b)) - geodesic_distance(a, b)));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("the measure is invariant") {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const MobiusMap m(random_point(rng, 2.0));
      const DiskPoint z = random_point(rng, 2.0);
      const double lhs = measure_weight(m(z)) * m.jacobian(z);
      worst = std::max(worst, std::abs(lhs / measure_weight(z) - 1.0));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("composition of two shifts is an automorphism up to rotation") {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 100; ++k) {
      const MobiusMap m1(random_point(rng, 1.5)), m2(random_point(rng, 1.5));
      const DiskPoint a = random_point(rng), b = random_point(rng);
      CHECK(geodesic_distance(m2(m1(a)), m2(m1(b))) == doctest::Approx(geodesic_distance(a, b)).epsilon(1e-11));
      const std::complex<double> direct = oracle::mobius(m2.center().z(), oracle::mobius(m1.center().z(), a.z()));
      CHECK(std::abs(m2(m1(a)).z() - direct) < 1e-12);
    }
  }
}
