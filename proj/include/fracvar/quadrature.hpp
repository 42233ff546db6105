#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fracvar/point.hpp"

namespace fracvar::quad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Integrand behaves like |x - point|^exponent near point.
struct Singularity {
  double point;
  double exponent;
};

/// How operator kernels are closed far from the evaluation point.
enum class FarStrategy {
  exact_compact,     ///< integrate exactly over the (effective) support
  power_tail,        ///< algebraic decay |x|^{-tail_exponent}, mapped to a finite interval
  symmetric_cancel,  ///< the f(x) term cancels between antipodal directions
};

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  /// Radius of the ball removed around the evaluation point of a
  /// singular kernel; chosen from rel_tol when empty.
  std::optional<double> near_radius;
  FarStrategy far = FarStrategy::exact_compact;
  /// Decay rate used for infinite intervals (integrand ~ |x|^{-tail_exponent}).
  double tail_exponent = 2.0;
  long max_evals = 1'000'000;

  /// Defaults per dimension: 1e-8 (n=1), 1e-6 (n=2), 1e-5 (n=3).
  static QuadSpec for_dim(int n);
  /// Copy with both tolerances scaled by `factor`.
  QuadSpec tightened(double factor) const;
  /// Throws DomainError unless tolerances are positive and max_evals >= 100.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evals_used = 0;
  /// err_estimate met max(abs_tol, rel_tol |value|), or the roundoff floor
  /// 100 eps * integral of |f| when that is larger.
  bool converged = true;
  bool budget_exhausted = false;

  /// Accumulate another partial result (sum of values and error bounds).
  QuadResult& operator+=(const QuadResult& o);
};

/// Up to four simultaneous integrands sharing one adaptive subdivision.
using Values = std::array<double, 4>;

struct VecQuadResult {
  Values value{};
  Values err_estimate{};
  long evals_used = 0;
  bool converged = true;
  bool budget_exhausted = false;
};

using Fn1 = std::function<double(double)>;
using VecFn1 = std::function<Values(double)>;
using FnN = std::function<double(const Point&)>;

/// Adaptive Gauss-Kronrod (21 point) integration of f over [a, b].
///
/// Declared singular points split the interval; at every singular endpoint
/// the substitution x = s + h u^m with m(1 + exponent) >= 2 removes the
/// singularity. Infinite endpoints (a = -inf or b = +inf) are mapped with
/// x = s + L (u^{-k} - 1) using spec.tail_exponent. Singular points that are
/// far from the origin lose their resolution to the absolute spacing of
/// doubles, so strongly singular integrands should be shifted by the caller
/// so that the singular point sits at zero.
///
/// Throws NonIntegrableError for an exponent <= -1 and DomainError for a
/// non-positive tail exponent on an infinite range or a >= b.
QuadResult integrate_1d(const Fn1& f, double a, double b, std::span<const Singularity> singularities,
                        const QuadSpec& spec);

inline QuadResult integrate_1d(const Fn1& f, double a, double b, const QuadSpec& spec) {
  return integrate_1d(f, a, b, {}, spec);
}

/// Vector-valued variant: the first `components` entries are integrated on a
/// common subdivision, the stopping test uses the largest component.
VecQuadResult integrate_1d_vec(const VecFn1& f, int components, double a, double b,
                               std::span<const Singularity> singularities, const QuadSpec& spec);

/// Integral over the ball B_radius(center), n in {1, 2, 3}, in polar
/// coordinates. `center_exponent` declares |y - center|^p behaviour at the
/// center (p > -n).
QuadResult integrate_ball(const FnN& f, const Point& center, double radius, const QuadSpec& spec,
                          double center_exponent = 0.0);

/// Integral over the complement of B_radius(center) for an integrand that
/// decays like |y - center|^{-tail_exponent}, tail_exponent > n.
QuadResult integrate_complement(const FnN& f, const Point& center, double radius, double tail_exponent,
                                const QuadSpec& spec);

/// Iterated integral over the box [lo, hi] (n <= 3). Coordinates listed in
/// `breaks[i]` split axis i.
QuadResult integrate_box(const FnN& f, const Point& lo, const Point& hi, const QuadSpec& spec,
                         const std::array<std::vector<double>, Point::kMaxDim>& breaks = {});

/// Composite tensor Gauss-Legendre rule: `panels` equal panels per axis with
/// `order` nodes each. The error estimate is the difference to the rule with
/// order - 4 nodes. Meant for smooth integrands that are too expensive for
/// iterated adaptive integration.
QuadResult integrate_box_fixed(const FnN& f, const Point& lo, const Point& hi, int panels, int order,
                               const QuadSpec& spec);

/// Integral of a vector-valued function of a direction over the unit sphere
/// S^{n-1} (or the half of it with theta_0 > 0 in polar angle, i.e. one
/// direction per antipodal pair, when `hemisphere` is set). `angle_breaks`
/// lists azimuth angles (reduced modulo the period) where g is not smooth.
VecQuadResult integrate_sphere_vec(const std::function<Values(const Point&)>& g, int components, int n,
                                   bool hemisphere, std::span<const Singularity> angle_breaks,
                                   const QuadSpec& spec);

}  // namespace fracvar::quad
