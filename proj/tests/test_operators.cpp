#include <doctest.h>

#include <cmath>

#include "fracvar/closed_forms.hpp"
#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/operators.hpp"
#include "oracles.hpp"

using namespace fracvar;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

quad::QuadSpec spec(double r) {
  quad::QuadSpec s;
  s.rel_tol = r;
  s.abs_tol = 1e-16;
  return s;
}

const ScalarField& bump() {
  static const ScalarField b = fields::smooth_bump(Point{0.0}, 1.0);
  return b;
}

double grad1(const ScalarField& f, double a, double x, double r = 1e-10) {
  return frac_gradient(f, a, Point{x}, spec(r)).value[0];
}

}  // namespace

TEST_CASE("gradient of a bump against direct quadrature") {
  CHECK(rel(grad1(bump(), 0.5, 0.3), -0.52072184091258914) < 1e-8);
  CHECK(rel(grad1(bump(), 0.25, -0.6), 0.88278956970614454) < 1e-8);
  CHECK(rel(grad1(bump(), 0.75, 2.5), -0.028983495377004146) < 1e-8);
  const auto b = [](long double x) { return oracle::bump(x); };
  for (double a : {0.1, 0.45, 0.9})
    for (double x : {-1.7, -0.95, 0.0, 0.4, 0.999, 1.3, 8.0}) {
      const bool inside = std::fabs(x) < 1.0;
      const double expect = static_cast<double>(inside ? oracle::grad_1d_ibp(oracle::bump_prime, a, x, -1, 1)
                                                       : oracle::grad_1d(b, a, x, -1, 1));
      const double got = grad1(bump(), a, x);
      if (x == 0.0)
        CHECK(std::fabs(got) < 1e-12);
      else
        CHECK(rel(got, expect) < 1e-7);
    }
}

TEST_CASE("gradient of a gaussian against the Fourier side") {
  const auto g = fields::gaussian(Point{0.0}, 1.0);
  CHECK(rel(grad1(g, 0.5, 0.7), -0.71732766501237743) < 1e-8);
  const auto h = fields::gaussian(Point{0.2}, 0.8, 2.0);
  CHECK(rel(grad1(h, 0.25, -1.3), 0.27692017681852648) < 1e-8);
  CHECK(rel(spectral_gradient_1d(g, 0.5, 0.7), -0.71732766501237743) < 1e-10);
  for (double a : {0.15, 0.6, 0.85})
    for (double x : {-2.1, -0.3, 0.45, 1.6})
      CHECK(rel(spectral_gradient_1d(h, a, x), static_cast<double>(oracle::spectral_gaussian(a, x, 0.2, 0.8, 2))) <
            1e-10);
  CHECK_THROWS_AS(spectral_gradient_1d(bump(), 0.5, 0.1), UnsupportedFieldError);
}

TEST_CASE("the Fourier side approaches the classical derivative as alpha -> 1") {
  const auto g = fields::gaussian(Point{0.0}, 1.0);
  const double x = 0.4;
  const double classical = -2.0 * M_PI * x * std::exp(-M_PI * x * x);
  CHECK(rel(spectral_gradient_1d(g, 0.999, x), classical) < 0.01);
}

TEST_CASE("gradient of a planar gaussian against its Hankel transform") {
  const auto g = fields::gaussian(Point{0.1, -0.2}, 1.0);
  const Point c{0.1, -0.2};
  const Point dir{0.6, 0.8};
  const auto e = frac_gradient(g, 0.5, c + 0.5 * dir, spec(1e-8));
  CHECK(rel(e.value[0], -0.78096127622536459 * 0.6) < 1e-6);
  CHECK(rel(e.value[1], -0.78096127622536459 * 0.8) < 1e-6);
  const auto w = fields::gaussian(Point{0.0, 0.0}, 0.8);
  const auto v = frac_gradient(w, 0.75, Point{1.2, 0.0}, spec(1e-8));
  CHECK(rel(v.value[0], -0.042457334358538768) < 1e-6);
  CHECK(std::fabs(v.value[1]) < 1e-9);
  for (double r : {0.3, 1.0, 1.7}) {
    const auto u = frac_gradient(w, 0.3, Point{0.0, r}, spec(1e-8));
    CHECK(rel(u.value[1], static_cast<double>(oracle::hankel_gaussian_2d(0.3, r, 0.8))) < 1e-6);
  }
}

TEST_CASE("divergence") {
  const VectorField phi({bump()});
  CHECK(rel(frac_divergence(phi, 0.5, Point{0.3}, spec(1e-10)).value[0], -0.52072184091258914) < 1e-8);
  const auto g = fields::gaussian(Point{0.0, 0.0}, 1.0);
  const VectorField p2({g, fields::constant(2, 0.0)});
  const double d = frac_divergence(p2, 0.5, Point{0.5, 0.0}, spec(1e-8)).value[0];
  CHECK(rel(d, -0.78096127622536459) < 1e-6);
  CHECK_THROWS_AS(frac_divergence(VectorField({g}), 0.5, Point{0.0, 0.0}, spec(1e-8)), DomainError);
}

TEST_CASE("Riesz potential and fractional Laplacian of a gaussian at its centre") {
  const auto g = fields::gaussian(Point{0.0}, 1.0);
  CHECK(rel(riesz_potential(g, 0.5, Point{0.0}, spec(1e-10)).value[0], 1.086434811213308) < 1e-8);
  CHECK(rel(frac_laplacian(g, 0.5, Point{0.0}, spec(1e-10)).value[0], 1.3017012597320317) < 1e-7);
  CHECK_THROWS_AS(riesz_potential(g, 1.0, Point{0.0}, spec(1e-8)), DomainError);
  CHECK_THROWS_AS(frac_laplacian(g, 1.0, Point{0.0}, spec(1e-8)), DomainError);
}

TEST_CASE("Riesz potential against direct convolution") {
  const auto b = fields::smooth_bump(Point{0.0}, 1.0);
  const double s = 0.6, x = 0.35;
  const auto k = [&](long double u, int side) { return oracle::bump(x + side * u) * std::pow(u, s - 1); };
  const long double conv = oracle::gauss_left([&](long double u) { return k(u, -1); }, 0, 1 + x, 8, 128) +
                           oracle::gauss_left([&](long double u) { return k(u, 1); }, 0, 1 - x, 8, 128);
  CHECK(rel(riesz_potential(b, s, Point{x}, spec(1e-11)).value[0], static_cast<double>(oracle::riesz(1, s) * conv)) <
        1e-8);
}

TEST_CASE("half-space indicator against the closed form") {
  const HalfSpace h(Point{1.0}, Point{0.0});
  const auto chi = fields::half_space_indicator(h);
  for (double a : {0.25, 0.5, 0.75})
    for (double d : {0.25, 1.0, 4.0, -2.0}) {
      const double v = frac_gradient(chi, a, Point{d}, spec(1e-10)).value[0];
      CHECK(rel(v, closed::half_space_gradient(a, h, Point{d})[0]) < 1e-6);
    }
}

TEST_CASE("non-local gradient") {
  const auto f = fields::gaussian(Point{-0.3}, 1.0);
  const auto g = fields::gaussian(Point{0.4}, 0.8, 0.7);
  const auto s = spec(1e-10);
  for (double x : {-0.9, 0.1, 1.2}) {
    const double ff = nl_gradient(f, f, 0.5, Point{x}, s).value[0];
    const double sq = frac_gradient(fields::product(f, f), 0.5, Point{x}, s).value[0];
    const double fx = f(Point{x});
    CHECK(std::fabs(ff - (sq - 2.0 * fx * frac_gradient(f, 0.5, Point{x}, s).value[0])) < 1e-8);
    CHECK(std::fabs(nl_gradient(f, g, 0.5, Point{x}, s).value[0] - nl_gradient(g, f, 0.5, Point{x}, s).value[0]) <
          1e-12);
    CHECK(std::fabs(nl_gradient(f, fields::constant(1, 1.0), 0.5, Point{x}, s).value[0]) < 1e-14);
  }
}

TEST_CASE("far-field values keep their relative accuracy") {
  const double a = 0.25;
  const long double m0 = oracle::gauss([](long double y) { return oracle::bump(y); }, -1, 1, 64);
  const long double m2 = oracle::gauss([](long double y) { return y * y * oracle::bump(y); }, -1, 1, 64);
  for (double x : {1e3, 1e8, 1e14, 1e20}) {
    // (x - y)^{-1-a} expanded in y / x; odd moments vanish.
    const double lead = -constants::mu(1, a) * static_cast<double>(m0) * std::pow(x, -1.0 - a);
    const double second = 1.0 + (1.0 + a) * (2.0 + a) / 2.0 * static_cast<double>(m2 / m0) / (x * x);
    CHECK(rel(grad1(bump(), a, x), lead * second) < 1e-8);
    CHECK(rel(grad1(bump(), a, -x), -lead * second) < 1e-8);
  }
}

TEST_CASE("sign outside the support") {
  for (double a : {0.1, 0.5, 0.9})
    for (double x = 1.0; x <= 4.0; x += 0.25) {
      CHECK(grad1(bump(), a, x) < 0.0);
      CHECK(grad1(bump(), a, -x) > 0.0);
    }
}

TEST_CASE("the chain-rule counterexample has no gradient away from its atoms") {
  const auto f = fields::f_alpha(0.75);
  for (double x : {-0.7, 0.5, 2.3}) CHECK(std::fabs(grad1(f, 0.75, x, 1e-8)) < 1e-8);
  const auto m = fields::magic_cube(1, 0.5);
  for (double x : {-2.0, 0.3, 1.7}) CHECK(std::fabs(grad1(m, 0.5, x, 1e-8)) < 1e-8);
}

TEST_CASE("Gagliardo seminorm") {
  for (double a : {0.3, 0.6}) {
    const auto chi = fields::interval_indicator(0.0, 1.0);
    const double semi = gagliardo_seminorm(chi, a, spec(1e-8)).value;
    CHECK(rel(semi, std::pow(2.0, 3.0 - a) / (a * (1.0 - a))) < 1e-6);
    // Both sides are superpositions of interval indicators for a unimodal f.
    const double var = closed::interval_identities(a).variation;
    CHECK(rel(var, std::pow(2.0, a - 1.0) * constants::mu(1, a) * semi) < 1e-6);
  }
  CHECK_THROWS_AS(gagliardo_seminorm(fields::gaussian(Point{0.0, 0.0}, 1.0), 0.5, spec(1e-8)), DomainError);
}

TEST_CASE("variation lower bound of an interval") {
  const auto chi = fields::interval_indicator(0.0, 1.0);
  const double exact = closed::interval_identities(0.5).variation;
  const double lb = variation_lower_bound(chi, 0.5, default_variation_family(), spec(1e-7));
  CHECK(lb <= exact + 1e-6);
  CHECK(lb >= 0.6 * exact);
  CHECK(variation_lower_bound(chi, 0.5, {}, spec(1e-7)) == 0.0);
  const VectorField big({fields::smooth_bump(Point{0.0}, 1.0, 2.0)});
  CHECK_THROWS_AS(variation_lower_bound(chi, 0.5, {big}, spec(1e-7)), TestFieldNormError);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(frac_gradient(bump(), 0.99, Point{0.0}, spec(1e-8)), DomainError);
  CHECK_THROWS_AS(frac_gradient(bump(), 0.01, Point{0.0}, spec(1e-8)), DomainError);
  CHECK_THROWS_AS(frac_gradient(bump(), 0.5, Point{0.0, 0.0}, spec(1e-8)), DomainError);
  CHECK_THROWS_AS(frac_gradient(fields::f_alpha(0.5), 0.5, Point{1.0}, spec(1e-8)), SingularPointError);
  CHECK_THROWS_AS(frac_gradient(fields::interval_indicator(0.0), 0.5, Point{1.0}, spec(1e-8)), SingularPointError);
  CHECK_THROWS_AS(FracOrder::potential(2.0, 2), DomainError);
  CHECK(FracOrder::laplacian(0.3).role() == FracOrder::Role::laplacian);
}

TEST_CASE("integrals of fields") {
  CHECK(rel(integrate_field(fields::gaussian(Point{0.3}, 1.5, 2.0), spec(1e-10)).value, 3.0) < 1e-9);
  CHECK(rel(integrate_field(fields::gaussian(Point{0.0, 0.0}, 1.0), spec(1e-8)).value, 1.0) < 1e-7);
  CHECK(near_radius(1.0, 1e-10) == doctest::Approx(0.3 * 1e-2));
}
