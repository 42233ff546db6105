#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracvar/point.hpp"
#include "fracvar/quadrature.hpp"

namespace fracvar {

struct Box {
  Point lo;
  Point hi;

  bool contains(const Point& x) const;
  /// Parameter interval [t0, t1] of x + t theta inside the closed box;
  /// empty optional when the line misses it.
  std::optional<std::pair<double, double>> clip(const Point& x, const Point& theta) const;
  Box grown(double r) const;
};

/// Oriented hyperplane H_nu(x0) with positive side {(y - x0).nu > 0}.
struct HalfSpace {
  Point nu;
  Point x0;

  /// Requires |nu| = 1 to 1e-14 and matching dimensions.
  HalfSpace(Point nu, Point x0);
  /// Normalizes `dir` first.
  static HalfSpace from_direction(const Point& dir, const Point& x0);

  double signed_distance(const Point& x) const { return dot(x - x0, nu); }
};

/// Parameters of the catalog entries that have closed-form oracles.
struct CatalogParams {
  Point center;
  double width = 0.0;  ///< gaussian width or bump radius
  double amplitude = 0.0;
  double alpha = 0.0;  ///< f_alpha and magic_cube
};

/// Evaluation backend of a catalog function. Nodes are immutable.
class FieldNode {
 public:
  virtual ~FieldNode() = default;

  virtual std::string kind() const = 0;
  virtual int dim() const = 0;
  /// Value without the singular-point check; measure-zero boundaries of
  /// indicators evaluate to 0.
  virtual double value(const Point& x) const = 0;

  /// f vanishes identically outside this box.
  virtual std::optional<Box> support() const { return std::nullopt; }
  /// Box outside which |f| is negligible (below 1e-40 relative); defaults to support().
  virtual std::optional<Box> effective_support() const { return support(); }
  /// Algebraic decay rate of |f| at infinity; infinity for compact or
  /// super-algebraic decay.
  virtual double decay_exponent() const { return quad::kInf; }
  /// Scale on which the field varies where it is smooth.
  virtual double length_scale() const = 0;
  /// C-infinity everywhere.
  virtual bool smooth() const { return false; }

  /// Points (1-D) or sets where the value itself is undefined.
  virtual bool is_singular(const Point& x) const;
  /// Points where the field is not smooth (jumps, kinks, blow-up).
  virtual bool is_nonsmooth(const Point& x) const { return is_singular(x); }
  virtual std::vector<Point> singular_points() const { return {}; }
  /// Power behaviour |y - x|^p of f near a non-smooth point x (0 for jumps).
  virtual double exponent_at(const Point& /*x*/) const { return 0.0; }

  /// Distances t > 0 at which t -> f(x + t theta) is not smooth, with the
  /// local power behaviour |t - t_i|^exponent (0 for jumps).
  virtual void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const;
  /// Azimuth angles (n = 2) of directions from x along which ray profiles
  /// change structure.
  virtual void angle_breaks(const Point& x, std::vector<quad::Singularity>& out) const;

  virtual std::optional<CatalogParams> catalog_params() const { return std::nullopt; }
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::shared_ptr<const FieldNode> node) : node_(std::move(node)) {}

  const FieldNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }
  int dim() const { return node_->dim(); }
  std::string kind() const { return node_->kind(); }
  double operator()(const Point& x) const { return node_->value(x); }

 private:
  std::shared_ptr<const FieldNode> node_;
};

struct VectorField {
  std::vector<ScalarField> components;

  VectorField() = default;
  /// All components must share the same dimension.
  explicit VectorField(std::vector<ScalarField> comps);
  int dim() const { return components.empty() ? 0 : components.front().dim(); }
  int size() const { return static_cast<int>(components.size()); }
};

struct Atom {
  Point point;
  std::vector<double> weight;
};

/// Atomic part plus optional absolutely continuous density.
struct SignedMeasure {
  std::vector<Atom> atoms;
  std::optional<VectorField> density;

  double atomic_variation() const;
};

namespace fields {

ScalarField gaussian(const Point& center, double width, double amplitude = 1.0);
/// amplitude * exp(1 - 1/(1 - |x - c|^2 / r^2)) on B_r(c); equals amplitude at c.
ScalarField smooth_bump(const Point& center, double radius, double amplitude = 1.0);
/// Tensor smooth step: amplitude on [lo, hi], zero outside [lo - gap, hi + gap].
ScalarField plateau(const Point& lo, const Point& hi, double gap, double amplitude = 1.0);
/// Indicator of (center - radius, center + radius).
ScalarField interval_indicator(double center, double radius = 1.0);
/// Indicator of the open cube center + (-half_side, half_side)^n.
ScalarField cube_indicator(const Point& center, double half_side = 1.0);
ScalarField half_space_indicator(const HalfSpace& h);
/// mu_{1,-a} (|x|^{a-1} sgn x - |x-1|^{a-1} sgn(x-1)) on the line.
ScalarField f_alpha(double alpha);
/// (-Delta)^{(1-a)/2} of the indicator of (-1, 1)^n, n <= 3.
ScalarField magic_cube(int n, double alpha);
ScalarField mollified(const ScalarField& base, double eps);
ScalarField sum(std::vector<std::pair<double, ScalarField>> terms);
ScalarField product(const ScalarField& a, const ScalarField& b);
ScalarField constant(int n, double value);

}  // namespace fields

/// Checked evaluation: throws SingularPointError at declared singularities.
double eval(const ScalarField& f, const Point& x);

/// rho_eps * f with the standard bump mollifier.
ScalarField mollify(const ScalarField& f, double eps);

/// Limit of ball averages at x (midpoint value at jumps).
/// Throws NonConvergentAverageError if the averages do not settle.
double precise_representative(const ScalarField& f, const Point& x, const quad::QuadSpec& spec = {});

/// Known D^alpha measures: f_alpha, magic_cube and smooth fields.
/// Throws UnsupportedFieldError otherwise.
SignedMeasure d_alpha_measure(const ScalarField& f, double alpha);

/// Normalizing constant of the bump mollifier exp(1/(|y|^2 - 1)) on B_1 in R^n.
double mollifier_constant(int n);

}  // namespace fracvar
