#include "fracvar/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int n, const char* what) {
  if (n < 1 || n > Point::kMaxDim) throw DomainError(std::string(what) + ": dimension must be 1, 2 or 3");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

Box box_around(const Point& c, double r) {
  Point lo = c, hi = c;
  for (int i = 0; i < c.dim(); ++i) {
    lo[i] -= r;
    hi[i] += r;
  }
  return {lo, hi};
}

Box box_union(const Box& a, const Box& b) {
  Box u = a;
  for (int i = 0; i < a.lo.dim(); ++i) {
    u.lo[i] = std::min(a.lo[i], b.lo[i]);
    u.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return u;
}

Box box_intersection(const Box& a, const Box& b) {
  Box u = a;
  for (int i = 0; i < a.lo.dim(); ++i) {
    u.lo[i] = std::max(a.lo[i], b.lo[i]);
    u.hi[i] = std::min(a.hi[i], b.hi[i]);
    if (u.hi[i] < u.lo[i]) u.hi[i] = u.lo[i];
  }
  return u;
}

// Boundary crossings of the ray x + t theta (t > 0) with a box.
void box_crossings(const Box& b, const Point& x, const Point& theta, double exponent,
                   std::vector<quad::Singularity>& out) {
  if (const auto c = b.clip(x, theta)) {
    if (c->first > 0.0) out.push_back({c->first, exponent});
    if (c->second > 0.0 && c->second != c->first) out.push_back({c->second, exponent});
  }
}

bool on_box_boundary(const Box& b, const Point& x) {
  if (!b.contains(x)) return false;
  for (int i = 0; i < x.dim(); ++i)
    if (x[i] == b.lo[i] || x[i] == b.hi[i]) return true;
  return false;
}

bool in_open_box(const Box& b, const Point& x) {
  for (int i = 0; i < x.dim(); ++i)
    if (!(x[i] > b.lo[i] && x[i] < b.hi[i])) return false;
  return true;
}

void corner_angles(const Box& b, const Point& x, std::vector<quad::Singularity>& out) {
  if (x.dim() != 2) return;
  for (int k = 0; k < 4; ++k) {
    const double cx = (k & 1) ? b.hi[0] : b.lo[0];
    const double cy = (k & 2) ? b.hi[1] : b.lo[1];
    if (cx == x[0] && cy == x[1]) continue;
    out.push_back({std::atan2(cy - x[1], cx - x[0]), 0.0});
  }
}

// ---------------------------------------------------------------------------

class GaussianNode final : public FieldNode {
 public:
  GaussianNode(Point c, double w, double a) : c_(c), w_(w), a_(a) {}
  std::string kind() const override { return "gaussian"; }
  int dim() const override { return c_.dim(); }
  double value(const Point& x) const override {
    const Point d = x - c_;
    return a_ * std::exp(-kPi * dot(d, d) / (w_ * w_));
  }
  std::optional<Box> effective_support() const override { return box_around(c_, 6.5 * w_); }
  double length_scale() const override { return w_; }
  bool smooth() const override { return true; }
  std::optional<CatalogParams> catalog_params() const override { return CatalogParams{c_, w_, a_, 0.0}; }

 private:
  Point c_;
  double w_, a_;
};

class BumpNode final : public FieldNode {
 public:
  BumpNode(Point c, double r, double a) : c_(c), r_(r), a_(a) {}
  std::string kind() const override { return "smooth_bump"; }
  int dim() const override { return c_.dim(); }
  double value(const Point& x) const override {
    const Point d = x - c_;
    const double q = dot(d, d) / (r_ * r_);
    if (q >= 1.0) return 0.0;
    return a_ * std::exp(1.0 - 1.0 / (1.0 - q));
  }
  std::optional<Box> support() const override { return box_around(c_, r_); }
  double length_scale() const override { return 0.5 * r_; }
  bool smooth() const override { return true; }
  std::optional<CatalogParams> catalog_params() const override { return CatalogParams{c_, r_, a_, 0.0}; }

 private:
  Point c_;
  double r_, a_;
};

// C-infinity step from 0 (t <= 0) to 1 (t >= 1).
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

class PlateauNode final : public FieldNode {
 public:
  PlateauNode(Point lo, Point hi, double gap, double a) : lo_(lo), hi_(hi), gap_(gap), a_(a) {}
  std::string kind() const override { return "plateau"; }
  int dim() const override { return lo_.dim(); }
  double value(const Point& x) const override {
    double v = a_;
    for (int i = 0; i < lo_.dim() && v != 0.0; ++i) {
      if (x[i] < lo_[i])
        v *= smooth_step((x[i] - (lo_[i] - gap_)) / gap_);
      else if (x[i] > hi_[i])
        v *= smooth_step(((hi_[i] + gap_) - x[i]) / gap_);
    }
    return v;
  }
  std::optional<Box> support() const override { return Box{lo_, hi_}.grown(gap_); }
  double length_scale() const override { return 0.5 * gap_; }
  bool smooth() const override { return true; }

 private:
  Point lo_, hi_;
  double gap_, a_;
};

class BoxIndicatorNode final : public FieldNode {
 public:
  BoxIndicatorNode(Box b, std::string kind) : b_(b), kind_(std::move(kind)) {}
  std::string kind() const override { return kind_; }
  int dim() const override { return b_.lo.dim(); }
  double value(const Point& x) const override { return in_open_box(b_, x) ? 1.0 : 0.0; }
  std::optional<Box> support() const override { return b_; }
  double length_scale() const override { return 0.5 * (b_.hi[0] - b_.lo[0]); }
  bool is_nonsmooth(const Point& x) const override { return on_box_boundary(b_, x); }
  void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const override {
    box_crossings(b_, x, theta, 0.0, out);
  }
  void angle_breaks(const Point& x, std::vector<quad::Singularity>& out) const override { corner_angles(b_, x, out); }

 private:
  Box b_;
  std::string kind_;
};

class HalfSpaceNode final : public FieldNode {
 public:
  explicit HalfSpaceNode(HalfSpace h) : h_(std::move(h)) {}
  std::string kind() const override { return "half_space_indicator"; }
  int dim() const override { return h_.nu.dim(); }
  double value(const Point& x) const override { return h_.signed_distance(x) > 0.0 ? 1.0 : 0.0; }
  double decay_exponent() const override { return 0.0; }
  double length_scale() const override { return 1.0; }
  bool is_singular(const Point& x) const override { return h_.signed_distance(x) == 0.0; }
  void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const override {
    const double c = dot(theta, h_.nu);
    if (c == 0.0) return;
    const double t = -h_.signed_distance(x) / c;
    if (t > 0.0) out.push_back({t, 0.0});
  }
  void angle_breaks(const Point&, std::vector<quad::Singularity>& out) const override {
    if (dim() == 2) out.push_back({std::atan2(h_.nu[1], h_.nu[0]) + 0.5 * kPi, 0.0});
  }

 private:
  HalfSpace h_;
};

class FAlphaNode final : public FieldNode {
 public:
  explicit FAlphaNode(double alpha) : alpha_(alpha), mu_(constants::mu(1, -alpha)) {}
  std::string kind() const override { return "f_alpha"; }
  int dim() const override { return 1; }
  double value(const Point& p) const override {
    const double x = p[0];
    if (x == 0.0 || x == 1.0) return 0.0;
    const double e = alpha_ - 1.0;
    const double a = std::pow(std::fabs(x), e) * (x > 0.0 ? 1.0 : -1.0);
    const double b = std::pow(std::fabs(x - 1.0), e) * (x > 1.0 ? 1.0 : -1.0);
    return mu_ * (a - b);
  }
  double decay_exponent() const override { return 2.0 - alpha_; }
  double length_scale() const override { return 1.0; }
  bool is_singular(const Point& x) const override { return x[0] == 0.0 || x[0] == 1.0; }
  std::vector<Point> singular_points() const override { return {Point{0.0}, Point{1.0}}; }
  double exponent_at(const Point&) const override { return alpha_ - 1.0; }
  std::optional<CatalogParams> catalog_params() const override { return CatalogParams{Point(1), 0.0, mu_, alpha_}; }
  void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const override {
    for (double p : {0.0, 1.0}) {
      const double t = (p - x[0]) / theta[0];
      if (t > 0.0) out.push_back({t, alpha_ - 1.0});
    }
  }

 private:
  double alpha_, mu_;
};

class MagicCubeNode final : public FieldNode {
 public:
  MagicCubeNode(int n, double alpha)
      : n_(n), alpha_(alpha), beta_(1.0 - alpha), nu_(constants::nu(n, 1.0 - alpha)),
        cube_{box_around(Point(n), 1.0)} {}
  std::string kind() const override { return "magic_cube"; }
  int dim() const override { return n_; }

  double value(const Point& x) const override {
    if (on_box_boundary(cube_, x)) return 0.0;
    if (n_ == 1) return closed_1d(x[0]);
    const bool inside = in_open_box(cube_, x);
    const auto g = [&](const Point& theta) {
      const auto c = cube_.clip(x, theta);
      double v = 0.0;
      if (inside) {
        v = -std::pow(c->second, -beta_) / beta_;
      } else if (c && c->first > 0.0) {
        v = (std::pow(c->first, -beta_) - std::pow(c->second, -beta_)) / beta_;
      }
      return quad::Values{v, 0.0, 0.0, 0.0};
    };
    std::vector<quad::Singularity> breaks;
    corner_angles(cube_, x, breaks);
    quad::QuadSpec spec;
    spec.rel_tol = n_ == 2 ? 1e-11 : 1e-8;
    const auto r = quad::integrate_sphere_vec(g, 1, n_, false, breaks, spec);
    return nu_ * r.value[0];
  }

  double decay_exponent() const override { return n_ + beta_; }
  double length_scale() const override { return 1.0; }
  bool is_singular(const Point& x) const override { return on_box_boundary(cube_, x); }
  double exponent_at(const Point&) const override { return alpha_ - 1.0; }
  std::optional<CatalogParams> catalog_params() const override { return CatalogParams{Point(n_), 1.0, nu_, alpha_}; }
  void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const override {
    box_crossings(cube_, x, theta, alpha_ - 1.0, out);
  }
  void angle_breaks(const Point& x, std::vector<quad::Singularity>& out) const override {
    corner_angles(cube_, x, out);
  }

 private:
  double closed_1d(double x) const {
    const double e = alpha_ - 1.0;
    const double ax = std::fabs(x);
    if (ax > 1.0) return nu_ * (std::pow(ax - 1.0, e) - std::pow(ax + 1.0, e)) / (1.0 - alpha_);
    return -nu_ * (std::pow(1.0 - x, e) + std::pow(1.0 + x, e)) / (1.0 - alpha_);
  }

  int n_;
  double alpha_, beta_, nu_;
  Box cube_;
};

class MollifiedNode final : public FieldNode {
 public:
  MollifiedNode(ScalarField base, double eps)
      : base_(std::move(base)), eps_(eps), norm_(mollifier_constant(base_.dim())) {}
  std::string kind() const override { return "mollified"; }
  int dim() const override { return base_.dim(); }

  double kernel(const Point& y) const {
    const double q = dot(y, y) / (eps_ * eps_);
    if (q >= 1.0) return 0.0;
    return norm_ * std::exp(1.0 / (q - 1.0)) / std::pow(eps_, dim());
  }

  double value(const Point& x) const override {
    const FieldNode& b = base_.node();
    if (dim() == 1) {
      // Non-smooth points of the base inside [x - eps, x + eps], in the variable z = y - x.
      std::vector<quad::Singularity> sing;
      std::vector<quad::Singularity> tmp;
      b.ray_breaks(x, Point{1.0}, tmp);
      for (const auto& s : tmp)
        if (s.point < eps_) sing.push_back(s);
      tmp.clear();
      b.ray_breaks(x, Point{-1.0}, tmp);
      for (const auto& s : tmp)
        if (s.point < eps_) sing.push_back({-s.point, s.exponent});
      if (b.is_nonsmooth(x)) sing.push_back({0.0, b.exponent_at(x)});
      const quad::Fn1 f = [&](double z) { return kernel(Point{z}) * b.value(Point{x[0] + z}); };
      return quad::integrate_1d(f, -eps_, eps_, sing, quad::QuadSpec::for_dim(1).tightened(0.01)).value;
    }
    const quad::FnN f = [&](const Point& y) { return kernel(y - x) * b.value(y); };
    return quad::integrate_ball(f, x, eps_, quad::QuadSpec::for_dim(dim())).value;
  }

  std::optional<Box> support() const override {
    if (auto s = base_.node().support()) return s->grown(eps_);
    return std::nullopt;
  }
  std::optional<Box> effective_support() const override {
    if (auto s = base_.node().effective_support()) return s->grown(eps_);
    return std::nullopt;
  }
  double decay_exponent() const override { return base_.node().decay_exponent(); }
  double length_scale() const override { return std::min(0.5 * eps_, base_.node().length_scale()); }
  bool smooth() const override { return true; }

 private:
  ScalarField base_;
  double eps_, norm_;
};

class SumNode final : public FieldNode {
 public:
  explicit SumNode(std::vector<std::pair<double, ScalarField>> terms) : terms_(std::move(terms)) {}
  std::string kind() const override { return "sum"; }
  int dim() const override { return terms_.front().second.dim(); }
  double value(const Point& x) const override {
    double v = 0.0;
    for (const auto& [c, f] : terms_) v += c * f(x);
    return v;
  }
  std::optional<Box> support() const override { return merged(&FieldNode::support); }
  std::optional<Box> effective_support() const override { return merged(&FieldNode::effective_support); }
  double decay_exponent() const override {
    double d = quad::kInf;
    for (const auto& t : terms_) d = std::min(d, t.second.node().decay_exponent());
    return d;
  }
  double length_scale() const override {
    double l = quad::kInf;
    for (const auto& t : terms_) l = std::min(l, t.second.node().length_scale());
    return l;
  }
  bool smooth() const override {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.node().smooth(); });
  }
  bool is_singular(const Point& x) const override {
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.second.node().is_singular(x); });
  }
  bool is_nonsmooth(const Point& x) const override {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return t.second.node().is_nonsmooth(x); });
  }
  double exponent_at(const Point& x) const override {
    double e = 0.0;
    for (const auto& t : terms_)
      if (t.second.node().is_nonsmooth(x)) e = std::min(e, t.second.node().exponent_at(x));
    return e;
  }
  std::vector<Point> singular_points() const override {
    std::vector<Point> out;
    for (const auto& t : terms_) {
      const auto s = t.second.node().singular_points();
      out.insert(out.end(), s.begin(), s.end());
    }
    return out;
  }
  void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const override {
    for (const auto& t : terms_) t.second.node().ray_breaks(x, theta, out);
  }
  void angle_breaks(const Point& x, std::vector<quad::Singularity>& out) const override {
    for (const auto& t : terms_) t.second.node().angle_breaks(x, out);
  }

 private:
  std::optional<Box> merged(std::optional<Box> (FieldNode::*get)() const) const {
    std::optional<Box> u;
    for (const auto& t : terms_) {
      const auto b = (t.second.node().*get)();
      if (!b) return std::nullopt;
      u = u ? box_union(*u, *b) : *b;
    }
    return u;
  }

  std::vector<std::pair<double, ScalarField>> terms_;
};

class ProductNode final : public FieldNode {
 public:
  ProductNode(ScalarField a, ScalarField b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string kind() const override { return "product"; }
  int dim() const override { return a_.dim(); }
  double value(const Point& x) const override {
    const double va = a_(x);
    return va == 0.0 ? 0.0 : va * b_(x);
  }
  std::optional<Box> support() const override { return meet(a_.node().support(), b_.node().support()); }
  std::optional<Box> effective_support() const override {
    return meet(a_.node().effective_support(), b_.node().effective_support());
  }
  double decay_exponent() const override { return a_.node().decay_exponent() + b_.node().decay_exponent(); }
  double length_scale() const override { return std::min(a_.node().length_scale(), b_.node().length_scale()); }
  bool smooth() const override { return a_.node().smooth() && b_.node().smooth(); }
  bool is_singular(const Point& x) const override { return a_.node().is_singular(x) || b_.node().is_singular(x); }
  bool is_nonsmooth(const Point& x) const override {
    return a_.node().is_nonsmooth(x) || b_.node().is_nonsmooth(x);
  }
  double exponent_at(const Point& x) const override {
    return std::min(a_.node().exponent_at(x), b_.node().exponent_at(x));
  }
  std::vector<Point> singular_points() const override {
    auto out = a_.node().singular_points();
    const auto s = b_.node().singular_points();
    out.insert(out.end(), s.begin(), s.end());
    return out;
  }
  void ray_breaks(const Point& x, const Point& theta, std::vector<quad::Singularity>& out) const override {
    a_.node().ray_breaks(x, theta, out);
    b_.node().ray_breaks(x, theta, out);
  }
  void angle_breaks(const Point& x, std::vector<quad::Singularity>& out) const override {
    a_.node().angle_breaks(x, out);
    b_.node().angle_breaks(x, out);
  }

 private:
  static std::optional<Box> meet(const std::optional<Box>& a, const std::optional<Box>& b) {
    if (a && b) return box_intersection(*a, *b);
    return a ? a : b;
  }

  ScalarField a_, b_;
};

class ConstantNode final : public FieldNode {
 public:
  ConstantNode(int n, double v) : n_(n), v_(v) {}
  std::string kind() const override { return "constant"; }
  int dim() const override { return n_; }
  double value(const Point&) const override { return v_; }
  std::optional<Box> support() const override {
    if (v_ == 0.0) return box_around(Point(n_), 0.0);
    return std::nullopt;
  }
  double decay_exponent() const override { return v_ == 0.0 ? quad::kInf : 0.0; }
  double length_scale() const override { return 1.0; }
  bool smooth() const override { return true; }

 private:
  int n_;
  double v_;
};

}  // namespace

// ---------------------------------------------------------------------------

bool Box::contains(const Point& x) const {
  for (int i = 0; i < x.dim(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

std::optional<std::pair<double, double>> Box::clip(const Point& x, const Point& theta) const {
  double t0 = -quad::kInf, t1 = quad::kInf;
  for (int i = 0; i < x.dim(); ++i) {
    if (theta[i] == 0.0) {
      if (x[i] < lo[i] || x[i] > hi[i]) return std::nullopt;
      continue;
    }
    double a = (lo[i] - x[i]) / theta[i];
    double b = (hi[i] - x[i]) / theta[i];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (t0 > t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

Box Box::grown(double r) const {
  Box b = *this;
  for (int i = 0; i < lo.dim(); ++i) {
    b.lo[i] -= r;
    b.hi[i] += r;
  }
  return b;
}

HalfSpace::HalfSpace(Point n, Point x) : nu(n), x0(x) {
  if (nu.dim() != x0.dim()) throw DomainError("HalfSpace: nu and x0 dimensions differ");
  if (std::fabs(norm(nu) - 1.0) > 1e-14) throw DomainError("HalfSpace: |nu| must be 1");
}

HalfSpace HalfSpace::from_direction(const Point& dir, const Point& x0) {
  const double l = norm(dir);
  if (!(l > 0.0)) throw DomainError("HalfSpace: zero normal");
  return HalfSpace(dir * (1.0 / l), x0);
}

bool FieldNode::is_singular(const Point&) const { return false; }
void FieldNode::ray_breaks(const Point&, const Point&, std::vector<quad::Singularity>&) const {}
void FieldNode::angle_breaks(const Point&, std::vector<quad::Singularity>&) const {}

VectorField::VectorField(std::vector<ScalarField> comps) : components(std::move(comps)) {
  for (const auto& c : components)
    if (!c.valid() || c.dim() != components.front().dim())
      throw DomainError("VectorField: components must share one dimension");
}

double SignedMeasure::atomic_variation() const {
  double s = 0.0;
  for (const auto& a : atoms) {
    double w2 = 0.0;
    for (double w : a.weight) w2 += w * w;
    s += std::sqrt(w2);
  }
  return s;
}

double mollifier_constant(int n) {
  require_dim(n, "mollifier_constant");
  static const std::array<double, Point::kMaxDim> table = [] {
    std::array<double, Point::kMaxDim> t{};
    for (int d = 1; d <= Point::kMaxDim; ++d) {
      const quad::Fn1 f = [d](double r) { return r >= 1.0 ? 0.0 : std::pow(r, d - 1) * std::exp(1.0 / (r * r - 1.0)); };
      quad::QuadSpec s;
      s.rel_tol = 1e-14;
      const double mass = constants::sphere_area(d) * quad::integrate_1d(f, 0.0, 1.0, s).value;
      t[d - 1] = 1.0 / mass;
    }
    return t;
  }();
  return table[n - 1];
}

namespace fields {

ScalarField gaussian(const Point& center, double width, double amplitude) {
  require_dim(center.dim(), "gaussian");
  require_positive(width, "gaussian width");
  return ScalarField(std::make_shared<GaussianNode>(center, width, amplitude));
}

ScalarField smooth_bump(const Point& center, double radius, double amplitude) {
  require_dim(center.dim(), "smooth_bump");
  require_positive(radius, "smooth_bump radius");
  return ScalarField(std::make_shared<BumpNode>(center, radius, amplitude));
}

ScalarField plateau(const Point& lo, const Point& hi, double gap, double amplitude) {
  require_dim(lo.dim(), "plateau");
  if (hi.dim() != lo.dim()) throw DomainError("plateau: lo and hi dimensions differ");
  for (int i = 0; i < lo.dim(); ++i)
    if (!(hi[i] >= lo[i])) throw DomainError("plateau: need lo <= hi");
  require_positive(gap, "plateau gap");
  return ScalarField(std::make_shared<PlateauNode>(lo, hi, gap, amplitude));
}

ScalarField interval_indicator(double center, double radius) {
  require_positive(radius, "interval radius");
  return ScalarField(std::make_shared<BoxIndicatorNode>(Box{Point{center - radius}, Point{center + radius}},
                                                        "interval_indicator"));
}

ScalarField cube_indicator(const Point& center, double half_side) {
  require_dim(center.dim(), "cube_indicator");
  require_positive(half_side, "cube half side");
  return ScalarField(std::make_shared<BoxIndicatorNode>(box_around(center, half_side), "cube_indicator"));
}

ScalarField half_space_indicator(const HalfSpace& h) {
  require_dim(h.nu.dim(), "half_space_indicator");
  return ScalarField(std::make_shared<HalfSpaceNode>(h));
}

ScalarField f_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("f_alpha: alpha must lie in (0, 1)");
  return ScalarField(std::make_shared<FAlphaNode>(alpha));
}

ScalarField magic_cube(int n, double alpha) {
  require_dim(n, "magic_cube");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("magic_cube: alpha must lie in (0, 1)");
  return ScalarField(std::make_shared<MagicCubeNode>(n, alpha));
}

ScalarField mollified(const ScalarField& base, double eps) {
  if (!base.valid()) throw DomainError("mollified: empty base field");
  require_positive(eps, "mollifier radius");
  return ScalarField(std::make_shared<MollifiedNode>(base, eps));
}

ScalarField sum(std::vector<std::pair<double, ScalarField>> terms) {
  if (terms.empty()) throw DomainError("sum: no terms");
  for (const auto& t : terms)
    if (!t.second.valid() || t.second.dim() != terms.front().second.dim())
      throw DomainError("sum: terms must share one dimension");
  return ScalarField(std::make_shared<SumNode>(std::move(terms)));
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  if (!a.valid() || !b.valid() || a.dim() != b.dim()) throw DomainError("product: dimension mismatch");
  return ScalarField(std::make_shared<ProductNode>(a, b));
}

ScalarField constant(int n, double value) {
  require_dim(n, "constant");
  return ScalarField(std::make_shared<ConstantNode>(n, value));
}

}  // namespace fields

double eval(const ScalarField& f, const Point& x) {
  if (x.dim() != f.dim()) throw DomainError("eval: point dimension differs from field dimension");
  if (f.node().is_singular(x)) throw SingularPointError("eval: " + f.kind() + " is singular at the given point");
  return f(x);
}

ScalarField mollify(const ScalarField& f, double eps) { return fields::mollified(f, eps); }

double precise_representative(const ScalarField& f, const Point& x, const quad::QuadSpec& spec) {
  if (x.dim() != f.dim()) throw DomainError("precise_representative: dimension mismatch");
  const FieldNode& node = f.node();
  const int n = f.dim();
  const double tol = std::max(10.0 * spec.rel_tol, 1e-10);

  const auto average = [&](double eps) {
    if (n == 1) {
      std::vector<quad::Singularity> sing, tmp;
      node.ray_breaks(x, Point{1.0}, tmp);
      for (const auto& s : tmp)
        if (s.point < eps) sing.push_back(s);
      tmp.clear();
      node.ray_breaks(x, Point{-1.0}, tmp);
      for (const auto& s : tmp)
        if (s.point < eps) sing.push_back({-s.point, s.exponent});
      if (node.is_nonsmooth(x)) sing.push_back({0.0, node.exponent_at(x)});
      const quad::Fn1 g = [&](double z) { return node.value(Point{x[0] + z}); };
      return quad::integrate_1d(g, -eps, eps, sing, spec.tightened(0.1)).value / (2.0 * eps);
    }
    const double p = node.is_nonsmooth(x) ? node.exponent_at(x) : 0.0;
    const quad::FnN g = [&](const Point& y) { return node.value(y); };
    return quad::integrate_ball(g, x, eps, spec.tightened(0.1), p).value /
           (constants::ball_volume(n) * std::pow(eps, n));
  };

  // Ball averages converge at rate eps^2 for smooth f; Richardson removes that term.
  double eps = 0.25 * node.length_scale();
  double prev_avg = average(eps);
  double prev_extra = prev_avg;
  for (int k = 0; k < 30; ++k) {
    eps *= 0.5;
    const double avg = average(eps);
    const double extra = (4.0 * avg - prev_avg) / 3.0;
    if (std::fabs(extra - prev_extra) <= tol * std::max(1.0, std::fabs(extra))) return extra;
    prev_avg = avg;
    prev_extra = extra;
  }
  throw NonConvergentAverageError("precise_representative: ball averages did not settle");
}

}  // namespace fracvar
