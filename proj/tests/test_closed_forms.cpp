#include <doctest.h>

#include <cmath>

#include "fracvar/closed_forms.hpp"
#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"
#include "oracles.hpp"

using namespace fracvar;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("half-space gradient") {
  const HalfSpace h(Point{1.0}, Point{0.0});
  const Point g = closed::half_space_gradient(0.5, h, Point{1.0});
  CHECK(rel(g[0], 0.39894228040143268) < 1e-14);

  SUBCASE("scaling in the distance") {
    for (double d : {0.25, 2.0, 9.0}) {
      const double v = closed::half_space_gradient(0.3, h, Point{d})[0];
      CHECK(rel(v, std::pow(d, -0.3) * closed::half_space_gradient(0.3, h, Point{1.0})[0]) < 1e-14);
    }
  }
  SUBCASE("parallel to the normal in the plane") {
    const HalfSpace t(Point{0.6, 0.8}, Point{0.2, -0.1});
    for (double s : {-3.0, 0.0, 5.0}) {
      const Point x = Point{0.2, -0.1} + 1.5 * Point{0.6, 0.8} + s * Point{-0.8, 0.6};
      const Point v = closed::half_space_gradient(0.5, t, x);
      CHECK(std::fabs(v[0] * 0.8 - v[1] * 0.6) < 1e-15);
      CHECK(rel(v[0] * 0.6 + v[1] * 0.8, 0.39894228040143268 * std::pow(1.5, -0.5)) < 1e-14);
    }
  }
  SUBCASE("both sides point along nu") {
    CHECK(closed::half_space_gradient(0.5, h, Point{-2.0})[0] > 0.0);
  }
  CHECK_THROWS_AS(closed::half_space_gradient(0.5, h, Point{0.0}), SingularPointError);
}

TEST_CASE("riesz potential of a hyperplane") {
  const HalfSpace h(Point{0.0, 1.0}, Point{0.0, 0.0});
  CHECK(rel(closed::riesz_hyperplane(0.5, h, Point{7.0, -1.0}), 0.39894228040143268) < 1e-14);
  CHECK(rel(closed::riesz_hyperplane(0.5, h, Point{0.0, 4.0}), 0.39894228040143268 / 2.0) < 1e-14);
  CHECK_THROWS_AS(closed::riesz_hyperplane(0.5, h, Point{3.0, 0.0}), SingularPointError);
}

TEST_CASE("hyperplane potential equals the line integral of the Riesz kernel") {
  // I_{1-a} of length measure on the x-axis at height d, n = 2.
  const double a = 0.4, d = 0.7;
  const long double s = 1.0L - a;
  const long double line =
      2 * oracle::gauss_left([&](long double u) { return std::pow(u * u + d * d, (s - 2) / 2); }, 0, 1, 1) +
      2 * oracle::gauss_left(
              [&](long double v) {
                const long double u = 1 / v;
                return std::pow(u * u + d * d, (s - 2) / 2) / (v * v);
              },
              0, 1, 6, 256);
  const double expect = static_cast<double>(oracle::riesz(2, s) * line);
  const HalfSpace h(Point{0.0, 1.0}, Point{0.0, 0.0});
  CHECK(rel(closed::riesz_hyperplane(a, h, Point{0.3, d}), expect) < 1e-10);
}

TEST_CASE("gamma radial integral") {
  for (double a : {0.1, 0.5, 0.9}) CHECK(rel(closed::gamma_radial_integral(3, a), 1.0 / a) < 1e-14);
  CHECK(rel(closed::gamma_radial_integral(3, 0.5), 2.0) < 1e-14);
  CHECK(rel(closed::gamma_radial_integral(2, 0.5), static_cast<double>(oracle::gamma_radial(2, 0.5L))) < 1e-12);
  CHECK(rel(closed::gamma_radial_integral(5, 0.3), static_cast<double>(oracle::gamma_radial(5, 0.3L))) < 1e-10);
  CHECK(rel(closed::gamma_radial_integral(4, 0.75), static_cast<double>(oracle::gamma_radial(4, 0.75L))) < 1e-10);
  CHECK_THROWS_AS(closed::gamma_radial_integral(1, 0.5), DomainError);
}

TEST_CASE("interval identities") {
  const auto v = closed::interval_identities(0.5);
  CHECK(rel(v.hardy_integral, 4.0) < 1e-15);
  CHECK(rel(v.variation, 3.1915382432114614) < 1e-14);
  CHECK(rel(v.hardy_constant, 0.7978845608028654) < 1e-14);
  for (int k = 1; k <= 9; ++k) {
    const auto w = closed::interval_identities(0.1 * k);
    CHECK(rel(w.hardy_constant * w.hardy_integral, w.variation) < 1e-14);
  }
  CHECK(rel(closed::interval_identities(1e-9).hardy_integral, 2.0) < 1e-8);
}

TEST_CASE("weight on the line") {
  const double m = constants::mu(1, 0.5);
  CHECK(rel(closed::weight_w(1, 0.5, 0.0, 2.0), (m / 0.5) * std::pow(2.0, -0.5)) < 1e-14);
  CHECK(rel(closed::weight_w(1, 0.5, 3.0, 1.0), (m / 1.0) * (std::pow(2.0, -0.5) + std::pow(4.0, -0.5))) < 1e-14);
  CHECK_THROWS_AS(closed::weight_w(1, 0.5, 1.0, 1.0), NonIntegrableError);
}

TEST_CASE("weight in three dimensions against its antiderivative") {
  const double k = 0.5 * constants::mu(1, 0.5) / 0.5;
  CHECK(rel(closed::weight_w(3, 0.5, 2.0, 1.0), 0.54496528967205182) < 1e-8);
  CHECK(rel(closed::weight_w(3, 0.5, 0.5, 1.0), 0.41301544025808356) < 1e-8);
  CHECK(rel(closed::weight_w(3, 0.5, 0.0, 1.0), 0.39894228040143268) < 1e-8);
  for (double t : {0.1, 0.9, 1.1, 4.0})
    for (double r : {0.3, 2.0})
      CHECK(rel(closed::weight_w(3, 0.5, t, r), k * static_cast<double>(oracle::weight_integral_n3(0.5, t, r))) < 1e-8);
}

TEST_CASE("weight is positive on a grid") {
  for (int n : {1, 2, 3})
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0})
      for (double r : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        if (t == r) continue;
        CHECK(closed::weight_w(n, 0.4, t, r) > 0.0);
      }
}

TEST_CASE("f_alpha closed form") {
  CHECK(rel(closed::f_alpha_closed(0.5, 2.0), -0.11684748862755453) < 1e-14);
  CHECK(rel(closed::f_alpha_closed(0.5, 0.5), 1.1283791670955126) < 1e-14);
  CHECK_THROWS_AS(closed::f_alpha_closed(0.5, 0.0), SingularPointError);
  CHECK_THROWS_AS(closed::f_alpha_closed(0.5, 1.0), SingularPointError);
}
