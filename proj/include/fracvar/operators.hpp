#pragma once

#include <string>
#include <vector>

#include "fracvar/field.hpp"
#include "fracvar/quadrature.hpp"

namespace fracvar {

/// Fractional exponent tagged with the role it plays.
class FracOrder {
 public:
  enum class Role { gradient, potential, laplacian };

  /// alpha in [0.05, 0.95], the range supported by the quadrature operators.
  static FracOrder gradient(double alpha);
  /// s in (0, n).
  static FracOrder potential(double s, int n);
  /// beta in (0, 1).
  static FracOrder laplacian(double beta);

  double value() const { return value_; }
  Role role() const { return role_; }

 private:
  FracOrder(double v, Role r) : value_(v), role_(r) {}
  double value_;
  Role role_;
};

enum class OpKind { grad, div, riesz, laplacian, nl_grad };

std::string to_string(OpKind op);

struct OperatorEval {
  OpKind op;
  FracOrder order;
  Point x;
  std::vector<double> value;  ///< dim entries for grad / nl_grad, one otherwise
  quad::QuadResult quad;      ///< err_estimate is the largest component error
};

/// mu_{n,a} int (y - x)(f(y) - f(x)) / |y - x|^{n+a+1} dy.
OperatorEval frac_gradient(const ScalarField& f, double alpha, const Point& x, const quad::QuadSpec& spec);
/// mu_{n,a} int (y - x).(phi(y) - phi(x)) / |y - x|^{n+a+1} dy.
OperatorEval frac_divergence(const VectorField& phi, double alpha, const Point& x, const quad::QuadSpec& spec);
/// Riesz potential I_s f(x); needs decay_exponent(f) > s.
OperatorEval riesz_potential(const ScalarField& f, double s, const Point& x, const quad::QuadSpec& spec);
/// nu_{n,b} int (f(x + y) - f(x)) / |y|^{n+b} dy.
OperatorEval frac_laplacian(const ScalarField& f, double beta, const Point& x, const quad::QuadSpec& spec);
/// mu_{n,a} int (y - x)(f(y) - f(x))(g(y) - g(x)) / |y - x|^{n+a+1} dy.
OperatorEval nl_gradient(const ScalarField& f, const ScalarField& g, double alpha, const Point& x,
                         const quad::QuadSpec& spec);

/// Fourier-side evaluation of the fractional gradient of a 1-D gaussian,
///   -2 A w int_0^inf (2 pi xi)^a exp(-pi w^2 xi^2) sin(2 pi (x - c) xi) dxi.
/// Throws UnsupportedFieldError for other fields.
double spectral_gradient_1d(const ScalarField& f, double alpha, double x);

/// Gagliardo seminorm int int |f(x) - f(y)| / |x - y|^{1+a} dx dy, n = 1,
/// for compactly supported fields.
quad::QuadResult gagliardo_seminorm(const ScalarField& f, double alpha, const quad::QuadSpec& spec);

/// max over the family of int f div^a phi dx: a lower bound for |D^a f|(R^n).
/// Every member must satisfy |phi| <= 1, checked on a sample grid.
double variation_lower_bound(const ScalarField& f, double alpha, const std::vector<VectorField>& family,
                             const quad::QuadSpec& spec);

/// Odd plateau pairs used as the default family for variation_lower_bound
/// on the line.
std::vector<VectorField> default_variation_family();

/// Field whose value is component `axis` of the fractional gradient of f.
ScalarField gradient_component(const ScalarField& f, double alpha, int axis, const quad::QuadSpec& spec);

/// Integral of f over R^n (n <= 2) using the field's support or tails.
quad::QuadResult integrate_field(const ScalarField& f, const quad::QuadSpec& spec);

/// Radius of the near-field ball for a field with length scale `scale`.
double near_radius(double scale, double rel_tol);

}  // namespace fracvar
