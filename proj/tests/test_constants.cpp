#include <doctest.h>

#include <cmath>

#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"
#include "oracles.hpp"

using namespace fracvar;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("gamma matches the long double reference") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.25, 3.7, 10.0, 25.5, 60.0, -0.25, -1.5, -2.7, -10.3})
    CHECK(rel(constants::gamma(x), static_cast<double>(std::tgamma(static_cast<long double>(x)))) < 1e-13);
  CHECK(constants::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(rel(constants::gamma(-0.25), -4.9016668098607106) < 1e-13);
  CHECK(rel(constants::gamma(-0.25), -4.0 * constants::gamma(0.75)) < 1e-14);
}

TEST_CASE("gamma rejects poles and out-of-range arguments") {
  CHECK_THROWS_AS(constants::gamma(0.0), DomainError);
  CHECK_THROWS_AS(constants::gamma(-3.0), DomainError);
  CHECK_THROWS_AS(constants::gamma(70.0), DomainError);
  CHECK_THROWS_AS(constants::gamma(std::nan("")), DomainError);
}

TEST_CASE("sin_pi is exact at integers and half integers") {
  CHECK(constants::sin_pi(3.0) == 0.0);
  CHECK(constants::sin_pi(-7.0) == 0.0);
  CHECK(constants::sin_pi(0.5) == 1.0);
  CHECK(constants::sin_pi(1.5) == -1.0);
  CHECK(constants::sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("mu reference values") {
  CHECK(rel(constants::mu(1, 0.5), 0.19947114020071634) < 1e-14);
  CHECK(rel(constants::mu(1, -0.5), 0.39894228040143268) < 1e-14);
  CHECK(rel(constants::mu(2, 0.5), 0.11411141979370156) < 1e-13);
  CHECK(rel(constants::mu(3, 0.25), 0.095452917419997081) < 1e-13);
  for (int n = 1; n <= 3; ++n)
    for (double a = -0.9; a < 0.95; a += 0.1)
      CHECK(rel(constants::mu(n, a), static_cast<double>(oracle::mu(n, a))) < 1e-13);
}

TEST_CASE("mu is positive and vanishes linearly at alpha = 1") {
  for (double a = 0.01; a < 0.995; a += 0.01) CHECK(constants::mu(1, a) > 0.0);
  for (double e : {1e-3, 1e-5}) CHECK(constants::mu(1, 1.0 - e) / e == doctest::Approx(0.5).epsilon(e));
  CHECK_THROWS_AS(constants::mu(1, 1.0), DomainError);
  CHECK_THROWS_AS(constants::mu(0, 0.5), DomainError);
}

TEST_CASE("nu is negative and matches the reference") {
  CHECK(rel(constants::nu(1, 0.5), -0.19947114020071634) < 1e-14);
  CHECK(rel(constants::nu(1, 0.5), -constants::mu(1, 0.5)) < 1e-14);
  CHECK(rel(constants::nu(2, 0.5), -0.083241983875425065) < 1e-13);
  CHECK(rel(constants::nu(3, 0.3), -0.02683370575797995) < 1e-13);
  for (int n = 1; n <= 4; ++n)
    for (double b = 0.05; b < 1.0; b += 0.1) CHECK(constants::nu(n, b) < 0.0);
  CHECK_THROWS_AS(constants::nu(1, 1.0), DomainError);
}

TEST_CASE("riesz constant and ball volumes") {
  CHECK(rel(constants::riesz_constant(2, 0.7), 0.10656907085022856) < 1e-13);
  CHECK_THROWS_AS(constants::riesz_constant(1, 1.0), DomainError);
  CHECK(rel(constants::ball_volume(1), 2.0) < 1e-15);
  CHECK(rel(constants::ball_volume(2), M_PI) < 1e-15);
  CHECK(rel(constants::ball_volume(3), 4.0 * M_PI / 3.0) < 1e-14);
  for (int n = 1; n <= 6; ++n) {
    CHECK(rel(constants::ball_volume(n), static_cast<double>(oracle::ball_volume(n))) < 1e-14);
    CHECK(rel(constants::sphere_area(n), n * constants::ball_volume(n)) < 1e-15);
  }
}

TEST_CASE("hardy constants") {
  const auto h = constants::hardy_constants(1, 0.5);
  CHECK(rel(h.c_half, 0.7978845608028654) < 1e-14);
  CHECK(h.c_max >= h.c_half);
  for (double a = 0.1; a < 0.95; a += 0.1) {
    const auto h3 = constants::hardy_constants(3, a);
    CHECK(h3.gamma_spector > 2.0 * constants::mu(1, a) / a);
    CHECK(h3.c_max == std::max(h3.c_half, h3.gamma_spector));
  }
}
