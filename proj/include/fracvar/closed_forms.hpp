#pragma once

#include "fracvar/field.hpp"
#include "fracvar/quadrature.hpp"

namespace fracvar::closed {

/// Fractional gradient of the indicator of the half-space {(y - x0).nu > 0}:
///   (mu_{1,a} / a) nu / |(x - x0).nu|^a.
/// Throws SingularPointError on the hyperplane.
Point half_space_gradient(double alpha, const HalfSpace& h, const Point& x);

/// I_{1-a} of the surface measure on the hyperplane H_nu(x0):
///   (mu_{1,a} / a) / |(x - x0).nu|^a.
double riesz_hyperplane(double alpha, const HalfSpace& h, const Point& x);

/// int_0^inf rho^{n-2} / (1 + rho^2)^{(n+a-1)/2} drho
///   = Gamma(a/2) Gamma((n-1)/2) / (2 Gamma((n+a-1)/2)),  n >= 2.
double gamma_radial_integral(int n, double alpha);

struct IntervalIdentities {
  double hardy_integral;  ///< int_{x0-1}^{x0+1} |x - x0|^{-a} dx = 2 / (1 - a)
  double variation;       ///< |D^a chi_{(x0-1, x0+1)}|(R) = 4 mu_{1,a} / (a (1 - a))
  double hardy_constant;  ///< c_{1,a} = 2 mu_{1,a} / a
};

IntervalIdentities interval_identities(double alpha);

/// Weight of the Hardy inequality outside B_r(x0). n = 1 is closed form
/// (t = r rejected); n >= 2 integrates over s in (-1, 1) with the singular
/// point s = r / t declared.
double weight_w(int n, double alpha, double t, double r, const quad::QuadSpec& spec = {});

/// Value of the chain-rule counterexample at x (not 0 or 1).
double f_alpha_closed(double alpha, double x);

}  // namespace fracvar::closed
