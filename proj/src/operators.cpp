#include "fracvar/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

using quad::QuadResult;
using quad::QuadSpec;
using quad::Singularity;
using quad::Values;

constexpr double kPi = std::numbers::pi;

enum class Near { none, odd, even };

// Profile of g(rho) along one direction; the integrand is g(rho) rho^p.
struct Radial {
  double p = 0.0;
  Near near = Near::none;
  double delta = 0.0;
  double reach = quad::kInf;  // g is constant (== beyond) for rho > reach
  double beyond = 0.0;
  // Size of the values whose difference forms g; g carries a rounding
  // error of about eps * amp that no subdivision can remove.
  double amp = 0.0;
  std::vector<Singularity> breaks;
};

// Near field on [0, delta] from the fit g = a rho + b rho^3 (odd) or
// g = a rho^2 + b rho^4 (even) through rho = delta and delta / 2; then the
// far field, piece by piece between breaks, in the variable t = ln rho where
// a piece spans many scales.
QuadResult radial_integral(const quad::Fn1& g, const Radial& r, const QuadSpec& spec) {
  QuadResult out;
  out.evals_used = 0;
  double lo = 0.0;
  const double p = r.p;
  if (r.near != Near::none) {
    const double d = r.delta;
    const double g1 = g(d), g2 = g(0.5 * d);
    out.evals_used = 2;
    double lead = 0.0, next = 0.0;
    if (r.near == Near::odd) {
      const double a = (8.0 * g2 - g1) / (3.0 * d);
      const double b = (g1 - a * d) / (d * d * d);
      lead = a * std::pow(d, p + 2.0) / (p + 2.0);
      next = b * std::pow(d, p + 4.0) / (p + 4.0);
    } else {
      const double a = (16.0 * g2 - g1) / (3.0 * d * d);
      const double b = (g1 - a * d * d) / (d * d * d * d);
      lead = a * std::pow(d, p + 3.0) / (p + 3.0);
      next = b * std::pow(d, p + 5.0) / (p + 5.0);
    }
    out.value = lead + next;
    out.err_estimate = 0.1 * std::fabs(next);
    lo = d;
  }

  if (r.reach > lo) {
    QuadSpec s = spec;
    s.tail_exponent = 3.0;
    if (r.amp > 0.0 && lo > 0.0 && p < -1.0)
      s.abs_tol = std::max(s.abs_tol, 100.0 * std::numeric_limits<double>::epsilon() * r.amp *
                                          std::pow(lo, p + 1.0) / (-(p + 1.0)));
    // Pieces between consecutive breaks. Narrow pieces (ratio below 4) are
    // integrated in rho itself: far from x the log variable would squeeze
    // a support of width O(1) into a few ulps.
    std::vector<Singularity> knots = {{lo, 0.0}};
    std::vector<Singularity> inner = r.breaks;
    std::sort(inner.begin(), inner.end(), [](const Singularity& u, const Singularity& v) { return u.point < v.point; });
    for (const auto& b : inner) {
      if (!(b.point > lo) || b.point > r.reach) continue;
      if (b.point == knots.back().point)
        knots.back().exponent = std::min(knots.back().exponent, b.exponent);
      else
        knots.push_back(b);
    }
    if (knots.back().point < r.reach) knots.push_back({r.reach, 0.0});
    const quad::Fn1 in_log = [&](double t) {
      const double rho = std::exp(t);
      const double v = g(rho);
      return v == 0.0 ? 0.0 : v * std::pow(rho, p + 1.0);
    };
    const quad::Fn1 in_rho = [&](double rho) {
      const double v = g(rho);
      return v == 0.0 ? 0.0 : v * std::pow(rho, p);
    };
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const Singularity& u = knots[i];
      const Singularity& v = knots[i + 1];
      if (u.point > 0.0 && std::isfinite(v.point) && v.point <= 4.0 * u.point) {
        const Singularity ends[] = {u, v};
        out += quad::integrate_1d(in_rho, u.point, v.point, ends, s);
      } else {
        const double a = u.point > 0.0 ? std::log(u.point) : -quad::kInf;
        const double b = std::isinf(v.point) ? quad::kInf : std::log(v.point);
        std::vector<Singularity> ends;
        if (std::isfinite(a)) ends.push_back({a, u.exponent});
        if (std::isfinite(b)) ends.push_back({b, v.exponent});
        out += quad::integrate_1d(in_log, a, b, ends, s);
      }
    }
  }
  if (std::isfinite(r.reach) && r.beyond != 0.0) {
    const double from = std::max(r.reach, lo);
    out.value += r.beyond * std::pow(from, p + 1.0) / (-(p + 1.0));
  }
  return out;
}

// Distance beyond which x +- rho theta stays outside the effective support.
// The support edges crossed on the way are added to `edges` so that a
// narrow support far from x is never skipped by the adaptive rule.
double reach_of(const FieldNode& f, const Point& x, const Point& theta, std::vector<Singularity>& edges) {
  const auto box = f.effective_support();
  if (!box) return quad::kInf;
  double r = 0.0;
  for (const Point& dir : {theta, -theta})
    if (const auto c = box->clip(x, dir)) {
      if (c->second > 0.0) r = std::max(r, c->second);
      if (c->first > 0.0) edges.push_back({c->first, 0.0});
    }
  return r;
}

void both_ways(const FieldNode& f, const Point& x, const Point& theta, std::vector<Singularity>& out) {
  f.ray_breaks(x, theta, out);
  f.ray_breaks(x, -theta, out);
}

double clamp_delta(double delta, const std::vector<Singularity>& breaks) {
  for (const auto& b : breaks)
    if (b.point > 0.0) delta = std::min(delta, 0.5 * b.point);
  return delta;
}

// Collects the statistics of the per-direction radial integrals.
struct InnerStats {
  long evals = 0;
  bool converged = true;
  bool budget = false;
  double err = 0.0;

  void add(const QuadResult& r) {
    evals += r.evals_used;
    converged = converged && r.converged;
    budget = budget || r.budget_exhausted;
    err = std::max(err, r.err_estimate);
  }
};

double hemisphere_area(int n) { return n == 1 ? 1.0 : 0.5 * constants::sphere_area(n); }

// Integrates ray(theta) (times theta when vector_out) over one direction per
// antipodal pair.
OperatorEval over_directions(OpKind op, FracOrder order, const Point& x, bool vector_out, double scale,
                             const std::vector<Singularity>& angle_breaks,
                             const std::function<QuadResult(const Point&)>& ray, const QuadSpec& spec) {
  const int n = x.dim();
  const int nc = vector_out ? n : 1;
  InnerStats stats;
  const auto g = [&](const Point& theta) {
    const QuadResult r = ray(theta);
    stats.add(r);
    Values v{};
    if (vector_out)
      for (int i = 0; i < n; ++i) v[i] = theta[i] * r.value;
    else
      v[0] = r.value;
    return v;
  };
  const auto res = quad::integrate_sphere_vec(g, nc, n, true, angle_breaks, spec);
  OperatorEval out{op, order, x, std::vector<double>(nc), {}};
  double err = 0.0;
  for (int i = 0; i < nc; ++i) {
    out.value[i] = scale * res.value[i];
    err = std::max(err, res.err_estimate[i]);
  }
  out.quad.value = nc == 1 ? out.value[0] : 0.0;
  out.quad.err_estimate = std::fabs(scale) * (err + hemisphere_area(n) * stats.err);
  out.quad.evals_used = res.evals_used + stats.evals;
  out.quad.converged = res.converged && stats.converged;
  out.quad.budget_exhausted = res.budget_exhausted || stats.budget;
  return out;
}

void check_point(const ScalarField& f, const Point& x, const char* what) {
  if (!f.valid()) throw DomainError(std::string(what) + ": empty field");
  if (x.dim() != f.dim()) throw DomainError(std::string(what) + ": point dimension differs from field dimension");
  if (f.dim() > 3) throw DomainError(std::string(what) + ": n must be at most 3");
}

void check_smooth_at(const ScalarField& f, const Point& x, const char* what) {
  if (f.node().is_singular(x) || f.node().is_nonsmooth(x))
    throw SingularPointError(std::string(what) + ": " + f.kind() + " is not smooth at the evaluation point");
}

std::vector<Singularity> angle_breaks_of(const std::vector<const FieldNode*>& nodes, const Point& x) {
  std::vector<Singularity> out;
  if (x.dim() == 2)
    for (const auto* f : nodes) f->angle_breaks(x, out);
  return out;
}

double auto_delta(double scale, const QuadSpec& spec) {
  return spec.near_radius ? *spec.near_radius : near_radius(scale, spec.rel_tol);
}

class GradientComponentNode final : public FieldNode {
 public:
  GradientComponentNode(ScalarField f, double alpha, int axis, QuadSpec spec)
      : f_(std::move(f)), alpha_(alpha), axis_(axis), spec_(spec) {}
  std::string kind() const override { return "frac_gradient_component"; }
  int dim() const override { return f_.dim(); }
  double value(const Point& x) const override { return frac_gradient(f_, alpha_, x, spec_).value[axis_]; }
  double decay_exponent() const override {
    return std::min(f_.node().decay_exponent(), static_cast<double>(f_.dim())) + alpha_;
  }
  double length_scale() const override { return f_.node().length_scale(); }
  bool smooth() const override { return f_.node().smooth(); }

 private:
  ScalarField f_;
  double alpha_;
  int axis_;
  QuadSpec spec_;
};

// Integral of w(x) over the line, split at the non-smooth points of f and
// closed with algebraic tails when f has no bounded support.
QuadResult integrate_line(const FieldNode& f, const quad::Fn1& w, double tail_exponent, const QuadSpec& spec) {
  std::vector<Singularity> sing;
  if (const auto box = f.effective_support()) {
    const double a = box->lo[0], b = box->hi[0];
    std::vector<Singularity> tmp;
    f.ray_breaks(Point{a}, Point{1.0}, tmp);
    for (const auto& s : tmp) sing.push_back({a + s.point, s.exponent});
    if (f.is_nonsmooth(Point{a})) sing.push_back({a, f.exponent_at(Point{a})});
    if (!(a < b)) return {};
    return quad::integrate_1d(w, a, b, sing, spec);
  }
  std::vector<Singularity> tmp;
  f.ray_breaks(Point{0.0}, Point{1.0}, tmp);
  for (const auto& s : tmp) sing.push_back(s);
  tmp.clear();
  f.ray_breaks(Point{0.0}, Point{-1.0}, tmp);
  for (const auto& s : tmp) sing.push_back({-s.point, s.exponent});
  if (f.is_nonsmooth(Point{0.0})) sing.push_back({0.0, f.exponent_at(Point{0.0})});
  QuadSpec s = spec;
  s.tail_exponent = tail_exponent;
  if (!(tail_exponent > 1.0)) throw NonIntegrableError("integral over the line: tail decays too slowly");
  return quad::integrate_1d(w, -quad::kInf, quad::kInf, sing, s);
}

// Bounding box of the joint effective support when x lies at least two
// diameters away from it. There the kernel is smooth on the support and the
// operator is an ordinary integral in y, which keeps y - x exact where the
// radial form x + rho theta would round y to the spacing of doubles near x.
// n >= 2 additionally needs smooth fields, whose support boxes carry no
// interior breaks.
struct Far {
  Box box;
  double dist;
};

std::optional<Far> far_support(const std::vector<const FieldNode*>& nodes, const Point& x) {
  std::optional<Box> box;
  for (const auto* f : nodes) {
    const auto s = f->effective_support();
    if (!s || (x.dim() > 1 && !f->smooth())) return std::nullopt;
    if (!box) {
      box = *s;
      continue;
    }
    for (int i = 0; i < x.dim(); ++i) {
      box->lo[i] = std::min(box->lo[i], s->lo[i]);
      box->hi[i] = std::max(box->hi[i], s->hi[i]);
    }
  }
  if (!box) return std::nullopt;
  double diam2 = 0.0, dist2 = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double w = box->hi[i] - box->lo[i];
    if (!(w > 0.0)) return std::nullopt;
    diam2 += w * w;
    const double d = std::max({box->lo[i] - x[i], x[i] - box->hi[i], 0.0});
    dist2 += d * d;
  }
  if (dist2 < 4.0 * diam2) return std::nullopt;
  return Far{*box, std::sqrt(dist2)};
}

// Integral of the first `nc` components of h over the support box; in 1-D
// split at the non-smooth points of the nodes. The kernel decays like
// dist^{-decay}, and abs_tol shrinks with it.
quad::VecQuadResult support_integral(const Point& x, int nc, const Far& far, double decay,
                                     const std::vector<const FieldNode*>& nodes,
                                     const std::function<Values(const Point&)>& h, const QuadSpec& base) {
  const Box& box = far.box;
  QuadSpec spec = base;
  spec.abs_tol *= std::min(1.0, std::pow(far.dist, -decay));
  if (x.dim() == 1) {
    const double a = box.lo[0], b = box.hi[0];
    std::vector<Singularity> tmp, sing;
    for (const auto* f : nodes) {
      f->ray_breaks(Point{a}, Point{1.0}, tmp);
      if (f->is_nonsmooth(Point{a})) sing.push_back({a, 0.0});
    }
    for (const auto& s : tmp)
      if (s.point > 0.0 && a + s.point < b) sing.push_back({a + s.point, 0.0});
    return quad::integrate_1d_vec([&](double y) { return h(Point{y}); }, nc, a, b, sing, spec);
  }
  quad::VecQuadResult out;
  for (int i = 0; i < nc; ++i) {
    const auto r = quad::integrate_box([&](const Point& y) { return h(y)[i]; }, box.lo, box.hi, spec);
    out.value[i] = r.value;
    out.err_estimate[i] = r.err_estimate;
    out.evals_used += r.evals_used;
    out.converged = out.converged && r.converged;
    out.budget_exhausted = out.budget_exhausted || r.budget_exhausted;
  }
  return out;
}

OperatorEval over_support(OpKind op, FracOrder order, const Point& x, int nc, double scale, const Far& far,
                          double decay, const std::vector<const FieldNode*>& nodes,
                          const std::function<Values(const Point&)>& h, const QuadSpec& spec) {
  const auto r = support_integral(x, nc, far, decay, nodes, h, spec);
  OperatorEval out{op, order, x, std::vector<double>(nc), {}};
  double err = 0.0;
  for (int i = 0; i < nc; ++i) {
    out.value[i] = scale * r.value[i];
    err = std::max(err, r.err_estimate[i]);
  }
  out.quad.value = nc == 1 ? out.value[0] : 0.0;
  out.quad.err_estimate = std::fabs(scale) * err;
  out.quad.evals_used = r.evals_used;
  out.quad.converged = r.converged;
  out.quad.budget_exhausted = r.budget_exhausted;
  return out;
}

// (y - x) / |y - x|^{n + a + 1} split into direction and power.
Values odd_kernel(const Point& x, const Point& y, double a, double weight) {
  Values v{};
  const Point d = y - x;
  const double r = norm(d);
  const double k = weight * std::pow(r, -static_cast<double>(x.dim()) - a - 1.0);
  for (int i = 0; i < x.dim(); ++i) v[i] = k * d[i];
  return v;
}

}  // namespace

double near_radius(double scale, double rel_tol) { return scale * 0.3 * std::pow(rel_tol, 0.2); }

FracOrder FracOrder::gradient(double alpha) {
  if (!(alpha >= 0.05 && alpha <= 0.95)) throw DomainError("alpha must lie in [0.05, 0.95]");
  return FracOrder(alpha, Role::gradient);
}

FracOrder FracOrder::potential(double s, int n) {
  if (!(s > 0.0 && s < n)) throw DomainError("Riesz potential order must lie in (0, n)");
  return FracOrder(s, Role::potential);
}

FracOrder FracOrder::laplacian(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("Laplacian order must lie in (0, 1)");
  return FracOrder(beta, Role::laplacian);
}

std::string to_string(OpKind op) {
  switch (op) {
    case OpKind::grad: return "grad";
    case OpKind::div: return "div";
    case OpKind::riesz: return "riesz";
    case OpKind::laplacian: return "laplacian";
    case OpKind::nl_grad: return "nlgrad";
  }
  return "?";
}

OperatorEval frac_gradient(const ScalarField& f, double alpha, const Point& x, const QuadSpec& spec) {
  const FracOrder order = FracOrder::gradient(alpha);
  spec.validate();
  check_point(f, x, "frac_gradient");
  check_smooth_at(f, x, "frac_gradient");
  const FieldNode& node = f.node();
  if (!(node.decay_exponent() + alpha > 0.0)) throw NonIntegrableError("frac_gradient: field decays too slowly");
  const double mu = constants::mu(x.dim(), alpha);
  if (const auto far = far_support({&node}, x))
    return over_support(OpKind::grad, order, x, x.dim(), mu, *far, x.dim() + alpha, {&node},
                        [&](const Point& y) { return odd_kernel(x, y, alpha, node.value(y)); }, spec);
  const double fx = node.value(x);
  const double delta0 = auto_delta(node.length_scale(), spec);
  const QuadSpec inner = spec.tightened(0.1);
  const auto ray = [&](const Point& theta) {
    Radial r;
    r.p = -1.0 - alpha;
    r.near = Near::odd;
    r.amp = std::fabs(fx);
    both_ways(node, x, theta, r.breaks);
    r.reach = reach_of(node, x, theta, r.breaks);
    r.delta = clamp_delta(delta0, r.breaks);
    const quad::Fn1 g = [&](double rho) { return node.value(x + rho * theta) - node.value(x - rho * theta); };
    return radial_integral(g, r, inner);
  };
  return over_directions(OpKind::grad, order, x, true, mu, angle_breaks_of({&node}, x), ray, spec);
}

OperatorEval frac_divergence(const VectorField& phi, double alpha, const Point& x, const QuadSpec& spec) {
  const FracOrder order = FracOrder::gradient(alpha);
  spec.validate();
  if (phi.size() != x.dim() || phi.dim() != x.dim())
    throw DomainError("frac_divergence: need n components of dimension n");
  std::vector<const FieldNode*> nodes;
  double scale = quad::kInf;
  for (const auto& c : phi.components) {
    check_point(c, x, "frac_divergence");
    check_smooth_at(c, x, "frac_divergence");
    if (!(c.node().decay_exponent() + alpha > 0.0))
      throw NonIntegrableError("frac_divergence: field decays too slowly");
    nodes.push_back(&c.node());
    scale = std::min(scale, c.node().length_scale());
  }
  const int n = x.dim();
  if (const auto far = far_support(nodes, x))
    return over_support(OpKind::div, order, x, 1, constants::mu(n, alpha), *far, n + alpha, nodes,
                        [&](const Point& y) {
                          Values v{};
                          const Point d = y - x;
                          double s = 0.0;
                          for (int i = 0; i < n; ++i) s += d[i] * nodes[i]->value(y);
                          v[0] = s * std::pow(norm(d), -n - alpha - 1.0);
                          return v;
                        },
                        spec);
  double amp = 0.0;
  for (const auto* c : nodes) amp += std::fabs(c->value(x));
  const double delta0 = auto_delta(scale, spec);
  const QuadSpec inner = spec.tightened(0.1);
  const auto ray = [&](const Point& theta) {
    Radial r;
    r.p = -1.0 - alpha;
    r.near = Near::odd;
    r.amp = amp;
    r.reach = 0.0;
    for (const auto* c : nodes) {
      both_ways(*c, x, theta, r.breaks);
      r.reach = std::max(r.reach, reach_of(*c, x, theta, r.breaks));
    }
    r.delta = clamp_delta(delta0, r.breaks);
    const quad::Fn1 g = [&](double rho) {
      const Point yp = x + rho * theta, ym = x - rho * theta;
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        if (theta[i] != 0.0) s += theta[i] * (nodes[i]->value(yp) - nodes[i]->value(ym));
      return s;
    };
    return radial_integral(g, r, inner);
  };
  return over_directions(OpKind::div, order, x, false, constants::mu(n, alpha), angle_breaks_of(nodes, x), ray,
                         spec);
}

OperatorEval riesz_potential(const ScalarField& f, double s, const Point& x, const QuadSpec& spec) {
  check_point(f, x, "riesz_potential");
  const FracOrder order = FracOrder::potential(s, x.dim());
  spec.validate();
  if (f.node().is_singular(x)) throw SingularPointError("riesz_potential: field is singular at the evaluation point");
  const FieldNode& node = f.node();
  if (!(node.decay_exponent() > s))
    throw NonIntegrableError("riesz_potential: field decay " + std::to_string(node.decay_exponent()) +
                             " does not exceed the order");
  if (const auto far = far_support({&node}, x))
    return over_support(OpKind::riesz, order, x, 1, constants::riesz_constant(x.dim(), s), *far, x.dim() - s,
                        {&node},
                        [&](const Point& y) {
                          Values v{};
                          v[0] = node.value(y) * std::pow(norm(y - x), s - x.dim());
                          return v;
                        },
                        spec);
  const QuadSpec inner = spec.tightened(0.1);
  const auto ray = [&](const Point& theta) {
    Radial r;
    r.p = s - 1.0;
    both_ways(node, x, theta, r.breaks);
    r.reach = reach_of(node, x, theta, r.breaks);
    const quad::Fn1 g = [&](double rho) { return node.value(x + rho * theta) + node.value(x - rho * theta); };
    return radial_integral(g, r, inner);
  };
  return over_directions(OpKind::riesz, order, x, false, constants::riesz_constant(x.dim(), s),
                         angle_breaks_of({&node}, x), ray, spec);
}

OperatorEval frac_laplacian(const ScalarField& f, double beta, const Point& x, const QuadSpec& spec) {
  const FracOrder order = FracOrder::laplacian(beta);
  spec.validate();
  check_point(f, x, "frac_laplacian");
  check_smooth_at(f, x, "frac_laplacian");
  const FieldNode& node = f.node();
  if (const auto far = far_support({&node}, x))
    return over_support(OpKind::laplacian, order, x, 1, constants::nu(x.dim(), beta), *far, x.dim() + beta,
                        {&node},
                        [&](const Point& y) {
                          Values v{};
                          v[0] = node.value(y) * std::pow(norm(y - x), -x.dim() - beta);
                          return v;
                        },
                        spec);
  const double fx = node.value(x);
  const double delta0 = auto_delta(node.length_scale(), spec);
  const QuadSpec inner = spec.tightened(0.1);
  const auto ray = [&](const Point& theta) {
    Radial r;
    r.p = -1.0 - beta;
    r.near = Near::even;
    r.amp = 2.0 * std::fabs(fx);
    both_ways(node, x, theta, r.breaks);
    r.reach = reach_of(node, x, theta, r.breaks);
    r.delta = clamp_delta(delta0, r.breaks);
    r.beyond = -2.0 * fx;
    const quad::Fn1 g = [&](double rho) {
      return node.value(x + rho * theta) + node.value(x - rho * theta) - 2.0 * fx;
    };
    return radial_integral(g, r, inner);
  };
  return over_directions(OpKind::laplacian, order, x, false, constants::nu(x.dim(), beta),
                         angle_breaks_of({&node}, x), ray, spec);
}

OperatorEval nl_gradient(const ScalarField& f, const ScalarField& g, double alpha, const Point& x,
                         const QuadSpec& spec) {
  const FracOrder order = FracOrder::gradient(alpha);
  spec.validate();
  check_point(f, x, "nl_gradient");
  check_point(g, x, "nl_gradient");
  check_smooth_at(f, x, "nl_gradient");
  check_smooth_at(g, x, "nl_gradient");
  const FieldNode& a = f.node();
  const FieldNode& b = g.node();
  if (const auto far = far_support({&a, &b}, x))
    return over_support(OpKind::nl_grad, order, x, x.dim(), constants::mu(x.dim(), alpha), *far, x.dim() + alpha,
                        {&a, &b},
                        [&](const Point& y) { return odd_kernel(x, y, alpha, a.value(y) * b.value(y)); }, spec);
  const double fa = a.value(x), fb = b.value(x);
  const QuadSpec inner = spec.tightened(0.1);
  const auto ray = [&](const Point& theta) {
    Radial r;
    r.p = -1.0 - alpha;
    both_ways(a, x, theta, r.breaks);
    both_ways(b, x, theta, r.breaks);
    r.reach = std::max(reach_of(a, x, theta, r.breaks), reach_of(b, x, theta, r.breaks));
    const quad::Fn1 h = [&](double rho) {
      const Point yp = x + rho * theta, ym = x - rho * theta;
      return (a.value(yp) - fa) * (b.value(yp) - fb) - (a.value(ym) - fa) * (b.value(ym) - fb);
    };
    return radial_integral(h, r, inner);
  };
  return over_directions(OpKind::nl_grad, order, x, true, constants::mu(x.dim(), alpha),
                         angle_breaks_of({&a, &b}, x), ray, spec);
}

double spectral_gradient_1d(const ScalarField& f, double alpha, double x) {
  if (!f.valid() || f.kind() != "gaussian" || f.dim() != 1)
    throw UnsupportedFieldError("spectral_gradient_1d: only 1-D gaussians have a transform here");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("spectral_gradient_1d: alpha must lie in (0, 1)");
  const CatalogParams p = *f.node().catalog_params();
  const double w = p.width, u = x - p.center[0];
  const quad::Fn1 h = [&](double xi) {
    return std::pow(2.0 * kPi * xi, alpha) * std::exp(-kPi * w * w * xi * xi) * std::sin(2.0 * kPi * u * xi);
  };
  QuadSpec s;
  s.rel_tol = 1e-13;
  s.abs_tol = 1e-17;
  const Singularity origin[] = {{0.0, 1.0 + alpha}};
  const QuadResult r = quad::integrate_1d(h, 0.0, 6.5 / w, origin, s);
  if (r.budget_exhausted) throw BudgetExceededError("spectral_gradient_1d: budget exhausted");
  return -2.0 * p.amplitude * w * r.value;
}

QuadResult gagliardo_seminorm(const ScalarField& f, double alpha, const QuadSpec& spec) {
  if (!f.valid() || f.dim() != 1) throw DomainError("gagliardo_seminorm: n = 1 only");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("gagliardo_seminorm: alpha must lie in (0, 1)");
  spec.validate();
  const FieldNode& node = f.node();
  const auto box = node.effective_support();
  if (!box) throw DomainError("gagliardo_seminorm: field needs bounded support");
  const double a = box->lo[0], b = box->hi[0];
  const QuadSpec inner = spec.tightened(0.1);
  const double delta0 = auto_delta(node.length_scale(), spec);
  InnerStats stats;
  const quad::Fn1 outer = [&](double x) {
    const Point px{x};
    if (const auto far = far_support({&node}, px)) {
      const auto q = support_integral(px, 1, *far, 1.0 + alpha, {&node},
                                      [&](const Point& y) {
                                        Values v{};
                                        v[0] = std::fabs(node.value(y)) * std::pow(std::fabs(y[0] - x), -1.0 - alpha);
                                        return v;
                                      },
                                      inner);
      stats.add({q.value[0], q.err_estimate[0], q.evals_used, q.converged, q.budget_exhausted});
      return q.value[0];
    }
    const double fx = node.value(px);
    // |f(x + h) - fx| + |f(x - h) - fx| = 2 |f'(x)| h + O(h^3).
    Radial r;
    r.p = -1.0 - alpha;
    r.near = Near::odd;
    r.amp = 2.0 * std::fabs(fx);
    both_ways(node, px, Point{1.0}, r.breaks);
    r.reach = reach_of(node, px, Point{1.0}, r.breaks);
    r.delta = clamp_delta(delta0, r.breaks);
    r.beyond = 2.0 * std::fabs(fx);
    const quad::Fn1 g = [&](double h) {
      return std::fabs(node.value(Point{x + h}) - fx) + std::fabs(node.value(Point{x - h}) - fx);
    };
    const QuadResult q = radial_integral(g, r, inner);
    stats.add(q);
    return q.value;
  };
  const Singularity edges[] = {{a, 0.0}, {b, 0.0}};
  QuadSpec s = spec;
  s.tail_exponent = 1.0 + alpha;
  QuadResult out = quad::integrate_1d(outer, -quad::kInf, quad::kInf, edges, s);
  out.evals_used += stats.evals;
  out.converged = out.converged && stats.converged;
  out.budget_exhausted = out.budget_exhausted || stats.budget;
  return out;
}

double variation_lower_bound(const ScalarField& f, double alpha, const std::vector<VectorField>& family,
                             const QuadSpec& spec) {
  FracOrder::gradient(alpha);
  if (!f.valid()) throw DomainError("variation_lower_bound: empty field");
  const int n = f.dim();
  double best = 0.0;
  for (const auto& phi : family) {
    if (phi.dim() != n || phi.size() != n) throw DomainError("variation_lower_bound: test field dimension mismatch");
    // Sup-norm check on a sample grid over the test field's support.
    std::optional<Box> box;
    for (const auto& c : phi.components) {
      const auto s = c.node().effective_support();
      if (!s) throw TestFieldNormError("variation_lower_bound: test fields must have bounded support");
      if (!box) {
        box = *s;
        continue;
      }
      for (int i = 0; i < n; ++i) {
        box->lo[i] = std::min(box->lo[i], s->lo[i]);
        box->hi[i] = std::max(box->hi[i], s->hi[i]);
      }
    }
    const int per_axis = n == 1 ? 4001 : 201;
    const int total = n == 1 ? per_axis : per_axis * per_axis;
    for (int k = 0; k < total; ++k) {
      Point y(n);
      int rem = k;
      for (int i = 0; i < n; ++i) {
        const int j = rem % per_axis;
        rem /= per_axis;
        y[i] = box->lo[i] + (box->hi[i] - box->lo[i]) * j / (per_axis - 1);
      }
      double s2 = 0.0;
      for (const auto& c : phi.components) s2 += c(y) * c(y);
      if (s2 > 1.0 + 1e-12) throw TestFieldNormError("variation_lower_bound: test field exceeds unit sup-norm");
    }

    double value = 0.0;
    if (n == 1) {
      const quad::Fn1 w = [&](double x) {
        const double fx = f(Point{x});
        if (fx == 0.0) return 0.0;
        return fx * frac_divergence(phi, alpha, Point{x}, spec.tightened(0.1)).value[0];
      };
      value = integrate_line(f.node(), w, f.node().decay_exponent() + 1.0 + alpha, spec).value;
    } else {
      const auto s = f.node().effective_support();
      if (!s) throw DomainError("variation_lower_bound: n >= 2 needs bounded support");
      const quad::FnN w = [&](const Point& x) {
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx * frac_divergence(phi, alpha, x, spec.tightened(0.1)).value[0];
      };
      value = quad::integrate_box(w, s->lo, s->hi, spec).value;
    }
    best = std::max(best, value);
  }
  return best;
}

std::vector<VectorField> default_variation_family() {
  std::vector<VectorField> family;
  for (double gap : {0.1, 0.3}) {
    double reach = 1.5;
    for (int k = 0; k < 10; ++k, reach *= 2.0) {
      const ScalarField right = fields::plateau(Point{gap}, Point{reach}, gap);
      const ScalarField left = fields::plateau(Point{-reach}, Point{-gap}, gap);
      family.emplace_back(std::vector<ScalarField>{fields::sum({{1.0, right}, {-1.0, left}})});
    }
  }
  return family;
}

ScalarField gradient_component(const ScalarField& f, double alpha, int axis, const QuadSpec& spec) {
  FracOrder::gradient(alpha);
  if (axis < 0 || axis >= f.dim()) throw DomainError("gradient_component: axis out of range");
  return ScalarField(std::make_shared<GradientComponentNode>(f, alpha, axis, spec));
}

QuadResult integrate_field(const ScalarField& f, const QuadSpec& spec) {
  const FieldNode& node = f.node();
  if (f.dim() == 1) {
    const quad::Fn1 w = [&](double x) { return node.value(Point{x}); };
    return integrate_line(node, w, node.decay_exponent(), spec);
  }
  const auto s = node.effective_support();
  if (!s) throw DomainError("integrate_field: n >= 2 needs bounded support");
  return quad::integrate_box([&](const Point& y) { return node.value(y); }, s->lo, s->hi, spec);
}

SignedMeasure d_alpha_measure(const ScalarField& f, double alpha) {
  if (!f.valid()) throw DomainError("d_alpha_measure: empty field");
  const std::string kind = f.kind();
  if (kind == "f_alpha" || kind == "magic_cube") {
    const CatalogParams p = *f.node().catalog_params();
    if (std::fabs(p.alpha - alpha) > 1e-15)
      throw UnsupportedFieldError("d_alpha_measure: " + kind + " is built for a different alpha");
    if (kind == "f_alpha") return SignedMeasure{{{Point{0.0}, {1.0}}, {Point{1.0}, {-1.0}}}, std::nullopt};
    if (f.dim() != 1)
      throw UnsupportedFieldError("d_alpha_measure: magic_cube with n >= 2 has a surface measure, not atoms");
    return SignedMeasure{{{Point{-1.0}, {1.0}}, {Point{1.0}, {-1.0}}}, std::nullopt};
  }
  if (f.node().smooth()) {
    std::vector<ScalarField> comps;
    for (int i = 0; i < f.dim(); ++i) comps.push_back(gradient_component(f, alpha, i, QuadSpec::for_dim(f.dim())));
    return SignedMeasure{{}, VectorField(std::move(comps))};
  }
  throw UnsupportedFieldError("d_alpha_measure: no known identification for " + kind);
}

}  // namespace fracvar
