#pragma once

namespace fracvar::constants {

/// Largest |x| accepted by gamma().
inline constexpr double kGammaRange = 64.0;

/// Gamma function on [-64, 64] minus the non-positive integers.
/// Lanczos approximation with reflection; relative error below 1e-13.
/// Throws DomainError at poles and outside the range.
double gamma(double x);

/// sin(pi x) with exact argument reduction.
double sin_pi(double x);

/// Normalizing constant of the fractional gradient,
///   mu_{n,a} = 2^a pi^{-n/2} Gamma((n+a+1)/2) / Gamma((1-a)/2),
/// for a in (-1, 1). Negative orders appear in the chain-rule
/// counterexample.
double mu(int n, double alpha);

/// Fractional Laplacian constant
///   nu_{n,b} = 2^b pi^{-n/2} Gamma((n+b)/2) / Gamma(-b/2),  b in (0, 1).
/// Always negative.
double nu(int n, double beta);

/// Riesz potential constant 2^{-s} pi^{-n/2} Gamma((n-s)/2) / Gamma(s/2),
/// s in (0, n).
double riesz_constant(int n, double s);

/// Volume of the unit ball in R^n.
double ball_volume(int n);

/// Surface measure of the unit sphere S^{n-1}, n * ball_volume(n).
double sphere_area(int n);

struct HardyConstants {
  double c_half;         ///< 2 mu_{1,a} / a, optimal in one dimension
  double gamma_spector;  ///< gamma_{n,a}
  double c_max;          ///< max of the two
};

HardyConstants hardy_constants(int n, double alpha);

}  // namespace fracvar::constants
