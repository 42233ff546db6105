#include "fracvar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fracvar/errors.hpp"

namespace fracvar::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// QUADPACK qk21 nodes and weights; odd indices carry the embedded 10-point Gauss rule.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525614206, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651146};

enum class MapKind { linear, left_power, right_power, right_tail, left_tail };

// Change of variables from u in [0, 1] to x.
struct Piece {
  MapKind kind = MapKind::linear;
  double lo = 0.0;  // finite anchor(s)
  double hi = 0.0;
  int power = 1;
  double scale = 1.0;

  // Returns false when the node collapses onto a singular endpoint or overflows.
  bool map(double u, double& x, double& jac) const {
    switch (kind) {
      case MapKind::linear:
        x = lo + (hi - lo) * u;
        jac = hi - lo;
        return true;
      case MapKind::left_power: {
        const double up = std::pow(u, power);
        const double h = (hi - lo) * up;
        x = lo + h;
        jac = (hi - lo) * power * (up / u);
        return x != lo && h > 0.0;
      }
      case MapKind::right_power: {
        const double up = std::pow(u, power);
        const double h = (hi - lo) * up;
        x = hi - h;
        jac = (hi - lo) * power * (up / u);
        return x != hi && h > 0.0;
      }
      case MapKind::right_tail: {
        const double up = std::pow(u, -power);
        x = lo + scale * (up - 1.0);
        jac = scale * power * up / u;
        return std::isfinite(x) && std::isfinite(jac);
      }
      case MapKind::left_tail: {
        const double up = std::pow(u, -power);
        x = hi - scale * (up - 1.0);
        jac = scale * power * up / u;
        return std::isfinite(x) && std::isfinite(jac);
      }
    }
    return false;
  }
};

int power_for_exponent(double p) {
  if (p >= 1.0) return 1;
  return std::clamp(static_cast<int>(std::ceil(2.0 / (1.0 + p) - 1e-9)), 1, 60);
}

int power_for_tail(double q) { return std::clamp(static_cast<int>(std::ceil(2.0 / (q - 1.0) - 1e-9)), 1, 60); }

struct Interval {
  int piece;
  double a, b;
  Values value, err, resabs;
  double key;  // max component error, heap order
  bool frozen;
};

struct HeapLess {
  bool operator()(const Interval& l, const Interval& r) const { return l.key < r.key; }
};

class Engine {
 public:
  Engine(const VecFn1& f, int nc, std::vector<Piece> pieces, const QuadSpec& spec)
      : f_(f), nc_(nc), pieces_(std::move(pieces)), spec_(spec) {}

  VecQuadResult run() {
    std::vector<Interval> heap;
    for (int p = 0; p < static_cast<int>(pieces_.size()); ++p) {
      heap.push_back(rule(p, 0.0, 0.5));
      heap.push_back(rule(p, 0.5, 1.0));
    }
    std::make_heap(heap.begin(), heap.end(), HeapLess{});
    std::vector<Interval> done;  // frozen intervals

    VecQuadResult out;
    for (;;) {
      Values total{}, err{}, resabs{};
      accumulate(heap, total, err, resabs);
      accumulate(done, total, err, resabs);
      double vmax = 0.0, emax = 0.0, amax = 0.0;
      for (int c = 0; c < nc_; ++c) {
        vmax = std::max(vmax, std::fabs(total[c]));
        emax = std::max(emax, err[c]);
        amax = std::max(amax, resabs[c]);
      }
      const double tol = std::max({spec_.abs_tol, spec_.rel_tol * vmax, 100.0 * kEps * amax});
      const bool ok = emax <= tol;
      if (ok || heap.empty() || evals_ + 42 > spec_.max_evals) {
        out.converged = ok;
        out.budget_exhausted = !ok && !heap.empty();
        break;
      }
      std::pop_heap(heap.begin(), heap.end(), HeapLess{});
      Interval worst = heap.back();
      heap.pop_back();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 64.0 * kEps * std::fabs(mid)) {
        worst.frozen = true;
        done.push_back(worst);
        continue;
      }
      heap.push_back(rule(worst.piece, worst.a, mid));
      std::push_heap(heap.begin(), heap.end(), HeapLess{});
      heap.push_back(rule(worst.piece, mid, worst.b));
      std::push_heap(heap.begin(), heap.end(), HeapLess{});
    }

    // Sum in a fixed geometric order so the result does not depend on heap layout.
    std::vector<Interval> all = std::move(heap);
    all.insert(all.end(), done.begin(), done.end());
    std::sort(all.begin(), all.end(), [](const Interval& l, const Interval& r) {
      return l.piece != r.piece ? l.piece < r.piece : l.a < r.a;
    });
    for (const auto& iv : all)
      for (int c = 0; c < nc_; ++c) {
        out.value[c] += iv.value[c];
        out.err_estimate[c] += iv.err[c];
      }
    out.evals_used = evals_;
    return out;
  }

 private:
  void accumulate(const std::vector<Interval>& v, Values& t, Values& e, Values& a) const {
    for (const auto& iv : v)
      for (int c = 0; c < nc_; ++c) {
        t[c] += iv.value[c];
        e[c] += iv.err[c];
        a[c] += iv.resabs[c];
      }
  }

  Values eval(int p, double u) {
    ++evals_;
    double x = 0.0, jac = 0.0;
    Values v{};
    if (!pieces_[p].map(u, x, jac)) return v;
    v = f_(x);
    for (int c = 0; c < nc_; ++c) v[c] *= jac;
    return v;
  }

  Interval rule(int p, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Values fc = eval(p, center);
    Values resg{}, resk{}, resabs{};
    std::array<Values, 10> f1{}, f2{};
    for (int c = 0; c < nc_; ++c) {
      resk[c] = fc[c] * kWgk[10];
      resabs[c] = std::fabs(resk[c]);
    }
    for (int j = 0; j < 10; ++j) {
      const double dx = half * kXgk[j];
      f1[j] = eval(p, center - dx);
      f2[j] = eval(p, center + dx);
      for (int c = 0; c < nc_; ++c) {
        const double s = f1[j][c] + f2[j][c];
        resk[c] += kWgk[j] * s;
        resabs[c] += kWgk[j] * (std::fabs(f1[j][c]) + std::fabs(f2[j][c]));
        if (j % 2 == 1) resg[c] += kWg[j / 2] * s;
      }
    }
    Interval iv{p, a, b, {}, {}, {}, 0.0, false};
    for (int c = 0; c < nc_; ++c) {
      const double mean = resk[c] * 0.5;
      double resasc = kWgk[10] * std::fabs(fc[c] - mean);
      for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::fabs(f1[j][c] - mean) + std::fabs(f2[j][c] - mean));
      double abserr = std::fabs((resk[c] - resg[c]) * half);
      resasc *= std::fabs(half);
      const double rabs = resabs[c] * std::fabs(half);
      if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
      if (rabs > std::numeric_limits<double>::min() / (50.0 * kEps)) abserr = std::max(50.0 * kEps * rabs, abserr);
      iv.value[c] = resk[c] * half;
      iv.err[c] = abserr;
      iv.resabs[c] = rabs;
      iv.key = std::max(iv.key, abserr);
    }
    return iv;
  }

  const VecFn1& f_;
  int nc_;
  std::vector<Piece> pieces_;
  const QuadSpec& spec_;
  long evals_ = 0;
};

struct Node {
  double x;
  double exponent;  // NaN when regular
  bool singular() const { return !std::isnan(exponent); }
};

// Splits [a, b] at the declared singular points and assigns maps.
std::vector<Piece> build_pieces(double a, double b, std::span<const Singularity> sing, const QuadSpec& spec) {
  if (std::isnan(a) || std::isnan(b) || !(a < b)) throw DomainError("integrate_1d: need a < b");
  const bool inf_lo = std::isinf(a), inf_hi = std::isinf(b);
  if ((inf_lo || inf_hi) && !(spec.tail_exponent > 1.0))
    throw DomainError("integrate_1d: infinite range needs tail_exponent > 1");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Node> nodes;
  for (const auto& s : sing) {
    if (!(s.exponent > -1.0))
      throw NonIntegrableError("integrate_1d: singularity exponent " + std::to_string(s.exponent) + " <= -1");
    if (s.point < a || s.point > b) continue;
    nodes.push_back({s.point, s.exponent});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& l, const Node& r) { return l.x < r.x; });
  // Merge duplicates keeping the strongest exponent.
  std::vector<Node> merged;
  for (const auto& nd : nodes) {
    if (!merged.empty() && merged.back().x == nd.x)
      merged.back().exponent = std::min(merged.back().exponent, nd.exponent);
    else
      merged.push_back(nd);
  }
  std::vector<Node> pts;
  auto at = [&](double x) {
    for (const auto& m : merged)
      if (m.x == x) return m;
    return Node{x, nan};
  };
  if (!inf_lo) pts.push_back(at(a));
  for (const auto& m : merged)
    if (m.x > a && m.x < b) pts.push_back(m);
  if (!inf_hi) pts.push_back(at(b));
  if (pts.empty()) pts.push_back({0.0, nan});

  std::vector<Piece> pieces;
  const double q = spec.tail_exponent;
  auto add_finite = [&](const Node& l, const Node& r) {
    if (l.singular() && r.singular()) {
      const Node m{0.5 * (l.x + r.x), nan};
      pieces.push_back({MapKind::left_power, l.x, m.x, power_for_exponent(l.exponent), 1.0});
      pieces.push_back({MapKind::right_power, m.x, r.x, power_for_exponent(r.exponent), 1.0});
    } else if (l.singular()) {
      pieces.push_back({MapKind::left_power, l.x, r.x, power_for_exponent(l.exponent), 1.0});
    } else if (r.singular()) {
      pieces.push_back({MapKind::right_power, l.x, r.x, power_for_exponent(r.exponent), 1.0});
    } else {
      pieces.push_back({MapKind::linear, l.x, r.x, 1, 1.0});
    }
  };

  if (inf_lo) {
    const Node& first = pts.front();
    const double scale = std::max(1.0, std::fabs(first.x));
    if (first.singular()) {
      const Node cut{first.x - scale, nan};
      pieces.push_back({MapKind::left_tail, 0.0, cut.x, power_for_tail(q), scale});
      add_finite(cut, first);
    } else {
      pieces.push_back({MapKind::left_tail, 0.0, first.x, power_for_tail(q), scale});
    }
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) add_finite(pts[i], pts[i + 1]);
  if (inf_hi) {
    const Node& last = pts.back();
    const double scale = std::max(1.0, std::fabs(last.x));
    if (last.singular()) {
      const Node cut{last.x + scale, nan};
      add_finite(last, cut);
      pieces.push_back({MapKind::right_tail, cut.x, 0.0, power_for_tail(q), scale});
    } else {
      pieces.push_back({MapKind::right_tail, last.x, 0.0, power_for_tail(q), scale});
    }
  }
  return pieces;
}

}  // namespace

QuadSpec QuadSpec::for_dim(int n) {
  QuadSpec s;
  s.rel_tol = n <= 1 ? 1e-8 : (n == 2 ? 1e-6 : 1e-5);
  return s;
}

QuadSpec QuadSpec::tightened(double factor) const {
  QuadSpec s = *this;
  s.rel_tol *= factor;
  s.abs_tol *= factor;
  return s;
}

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadSpec: tolerances must be positive");
  if (max_evals < 100) throw DomainError("QuadSpec: max_evals must be at least 100");
}

QuadResult& QuadResult::operator+=(const QuadResult& o) {
  value += o.value;
  err_estimate += o.err_estimate;
  evals_used += o.evals_used;
  converged = converged && o.converged;
  budget_exhausted = budget_exhausted || o.budget_exhausted;
  return *this;
}

VecQuadResult integrate_1d_vec(const VecFn1& f, int components, double a, double b,
                               std::span<const Singularity> singularities, const QuadSpec& spec) {
  spec.validate();
  if (components < 1 || components > 4) throw DomainError("integrate_1d_vec: 1..4 components");
  Engine engine(f, components, build_pieces(a, b, singularities, spec), spec);
  return engine.run();
}

QuadResult integrate_1d(const Fn1& f, double a, double b, std::span<const Singularity> singularities,
                        const QuadSpec& spec) {
  const VecFn1 g = [&f](double x) { return Values{f(x), 0.0, 0.0, 0.0}; };
  const VecQuadResult r = integrate_1d_vec(g, 1, a, b, singularities, spec);
  return {r.value[0], r.err_estimate[0], r.evals_used, r.converged, r.budget_exhausted};
}

VecQuadResult integrate_sphere_vec(const std::function<Values(const Point&)>& g, int components, int n,
                                   bool hemisphere, std::span<const Singularity> angle_breaks,
                                   const QuadSpec& spec) {
  VecQuadResult out;
  if (n == 1) {
    const Values vp = g(Point{1.0});
    out.evals_used = 1;
    for (int c = 0; c < components; ++c) out.value[c] = vp[c];
    if (!hemisphere) {
      const Values vm = g(Point{-1.0});
      out.evals_used = 2;
      for (int c = 0; c < components; ++c) out.value[c] += vm[c];
    }
    return out;
  }
  if (n != 2 && n != 3) throw DomainError("integrate_sphere_vec: n must be 1, 2 or 3");

  const double period = hemisphere ? kPi : 2.0 * kPi;
  std::vector<Singularity> kinks;
  for (const auto& b : angle_breaks) {
    double r = std::fmod(b.point, period);
    if (r < 0) r += period;
    if (r >= period) r = 0.0;
    kinks.push_back({r, b.exponent});
    if (r == 0.0) kinks.push_back({period, b.exponent});  // periodic wrap
  }

  if (n == 2) {
    const VecFn1 h = [&](double phi) { return g(Point{std::cos(phi), std::sin(phi)}); };
    return integrate_1d_vec(h, components, 0.0, period, kinks, spec);
  }

  long inner_evals = 0;
  bool inner_budget = false;
  bool inner_conv = true;
  Values inner_err{};
  const QuadSpec inner_spec = spec.tightened(0.1);
  const VecFn1 outer = [&](double theta) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const VecFn1 h = [&](double phi) {
      return g(Point{st * std::cos(phi), st * std::sin(phi), ct});
    };
    const VecQuadResult r = integrate_1d_vec(h, components, 0.0, period, kinks, inner_spec);
    inner_evals += r.evals_used;
    inner_budget = inner_budget || r.budget_exhausted;
    inner_conv = inner_conv && r.converged;
    Values v = r.value;
    for (int c = 0; c < components; ++c) {
      v[c] *= st;
      inner_err[c] = std::max(inner_err[c], r.err_estimate[c]);
    }
    return v;
  };
  out = integrate_1d_vec(outer, components, 0.0, kPi, {}, spec);
  out.evals_used += inner_evals;
  out.budget_exhausted = out.budget_exhausted || inner_budget;
  out.converged = out.converged && inner_conv;
  for (int c = 0; c < components; ++c) out.err_estimate[c] += kPi * inner_err[c];
  return out;
}

namespace {

// Radial-angular integration of f(center + rho theta) rho^{n-1} over [r0, r1].
QuadResult polar(const FnN& f, const Point& center, double r0, double r1, const QuadSpec& spec,
                 double center_exponent) {
  const int n = center.dim();
  if (n < 1 || n > 3) throw DomainError("polar quadrature: n must be 1, 2 or 3");
  long inner_evals = 0;
  bool inner_budget = false, inner_conv = true;
  double inner_err = 0.0;
  const QuadSpec inner_spec = spec.tightened(0.1);
  std::vector<Singularity> sing;
  if (r0 == 0.0 && center_exponent != 0.0) sing.push_back({0.0, center_exponent + n - 1});
  const auto g = [&](const Point& theta) {
    const Fn1 radial = [&](double rho) { return f(center + rho * theta) * std::pow(rho, n - 1); };
    const QuadResult r = integrate_1d(radial, r0, r1, sing, inner_spec);
    inner_evals += r.evals_used;
    inner_budget = inner_budget || r.budget_exhausted;
    inner_conv = inner_conv && r.converged;
    inner_err = std::max(inner_err, r.err_estimate);
    return Values{r.value, 0.0, 0.0, 0.0};
  };
  const VecQuadResult s = integrate_sphere_vec(g, 1, n, false, {}, spec);
  QuadResult out{s.value[0], s.err_estimate[0] + inner_err * (n == 1 ? 2.0 : 4.0 * kPi), s.evals_used + inner_evals,
                 s.converged && inner_conv, s.budget_exhausted || inner_budget};
  return out;
}

}  // namespace

QuadResult integrate_ball(const FnN& f, const Point& center, double radius, const QuadSpec& spec,
                          double center_exponent) {
  spec.validate();
  if (!(radius > 0.0)) throw DomainError("integrate_ball: radius must be positive");
  if (!(center_exponent > -center.dim()))
    throw NonIntegrableError("integrate_ball: center exponent must exceed -n");
  return polar(f, center, 0.0, radius, spec, center_exponent);
}

QuadResult integrate_complement(const FnN& f, const Point& center, double radius, double tail_exponent,
                                const QuadSpec& spec) {
  spec.validate();
  if (!(radius > 0.0)) throw DomainError("integrate_complement: radius must be positive");
  const int n = center.dim();
  if (!(tail_exponent > n)) throw NonIntegrableError("integrate_complement: tail exponent must exceed n");
  QuadSpec s = spec;
  s.far = FarStrategy::power_tail;
  s.tail_exponent = tail_exponent - (n - 1);
  return polar(f, center, radius, kInf, s, 0.0);
}

QuadResult integrate_box(const FnN& f, const Point& lo, const Point& hi, const QuadSpec& spec,
                         const std::array<std::vector<double>, Point::kMaxDim>& breaks) {
  spec.validate();
  const int n = lo.dim();
  if (n < 1 || n > 3 || hi.dim() != n) throw DomainError("integrate_box: dimension mismatch");
  auto kinks = [&](int axis) {
    std::vector<Singularity> s;
    for (double b : breaks[axis]) s.push_back({b, 0.0});
    return s;
  };

  // Recursive iterated integration over axes axis..n-1 with the leading coordinates fixed.
  long evals = 0;
  bool budget = false, conv = true;
  double inner_err = 0.0;
  std::function<QuadResult(Point&, int, const QuadSpec&)> level = [&](Point& x, int axis,
                                                                       const QuadSpec& s) -> QuadResult {
    const auto sing = kinks(axis);
    if (axis == n - 1) {
      const Fn1 g = [&](double t) {
        x[axis] = t;
        return f(x);
      };
      return integrate_1d(g, lo[axis], hi[axis], sing, s);
    }
    const QuadSpec inner = s.tightened(0.1);
    const Fn1 g = [&](double t) {
      Point y = x;
      y[axis] = t;
      const QuadResult r = level(y, axis + 1, inner);
      evals += r.evals_used;
      budget = budget || r.budget_exhausted;
      conv = conv && r.converged;
      inner_err = std::max(inner_err, r.err_estimate);
      return r.value;
    };
    return integrate_1d(g, lo[axis], hi[axis], sing, s);
  };
  Point x(n);
  QuadResult r = level(x, 0, spec);
  double width = 1.0;
  for (int i = 0; i < n; ++i) width *= hi[i] - lo[i];
  r.err_estimate += inner_err * width;
  r.evals_used += evals;
  r.budget_exhausted = r.budget_exhausted || budget;
  r.converged = r.converged && conv;
  return r;
}

namespace {

// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  std::vector<double> x(m), w(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= m; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

double tensor_rule(const FnN& f, const Point& lo, const Point& hi, int panels, int order) {
  const int n = lo.dim();
  const auto [gx, gw] = gauss_legendre(order);
  const int per_axis = panels * order;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  double sum = 0.0;
  Point y(n);
  for (long k = 0; k < total; ++k) {
    long rem = k;
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      const int j = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      const double h = (hi[i] - lo[i]) / panels;
      const double a = lo[i] + h * (j / order);
      y[i] = a + 0.5 * h * (1.0 + gx[j % order]);
      weight *= 0.5 * h * gw[j % order];
    }
    sum += weight * f(y);
  }
  return sum;
}

}  // namespace

QuadResult integrate_box_fixed(const FnN& f, const Point& lo, const Point& hi, int panels, int order,
                               const QuadSpec& spec) {
  spec.validate();
  const int n = lo.dim();
  if (n < 1 || n > 3 || hi.dim() != n) throw DomainError("integrate_box_fixed: dimension mismatch");
  if (panels < 1 || order < 6) throw DomainError("integrate_box_fixed: need panels >= 1 and order >= 6");
  long evals = 0;
  for (int m : {order, order - 4}) {
    long t = 1;
    for (int i = 0; i < n; ++i) t *= static_cast<long>(panels) * m;
    evals += t;
  }
  QuadResult r;
  for (int i = 0; i < n; ++i)
    if (!(lo[i] < hi[i])) return r;
  if (evals > spec.max_evals) {
    r.budget_exhausted = true;
    r.converged = false;
    return r;
  }
  r.value = tensor_rule(f, lo, hi, panels, order);
  r.err_estimate = std::fabs(r.value - tensor_rule(f, lo, hi, panels, order - 4));
  r.evals_used = evals;
  r.converged = r.err_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(r.value));
  return r;
}

}  // namespace fracvar::quad
