#include "fracvar/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "fracvar/closed_forms.hpp"
#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/field_json.hpp"
#include "fracvar/operators.hpp"
#include "fracvar/parallel.hpp"

namespace fracvar::suites {

namespace {

using quad::QuadResult;
using quad::QuadSpec;
using quad::Singularity;

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// Records whether any quadrature inside a case ran out of budget.
struct Tally {
  bool budget = false;

  QuadResult operator()(QuadResult r) {
    budget = budget || r.budget_exhausted;
    return r;
  }
  OperatorEval operator()(OperatorEval e) {
    budget = budget || e.quad.budget_exhausted;
    return e;
  }
};

using Body = std::function<std::vector<CaseResult>(Tally&)>;

void attempt(SuiteReport& rep, const std::string& id, double alpha, int n, double tol, const Body& body) {
  Tally t;
  try {
    for (CaseResult c : body(t)) {
      if (t.budget) {
        c.budget_exhausted = true;
        c.pass = false;
      }
      rep.cases.push_back(std::move(c));
    }
  } catch (const BudgetExceededError& e) {
    rep.cases.push_back(failed_case(rep.suite, id, alpha, n, tol, e.what(), true));
  } catch (const std::exception& e) {
    rep.cases.push_back(failed_case(rep.suite, id, alpha, n, tol, e.what()));
  }
}

std::pair<double, double> support_1d(const ScalarField& f) {
  const auto box = f.node().effective_support();
  if (!box) throw DomainError(f.kind() + " needs bounded support here");
  return {box->lo[0], box->hi[0]};
}

Box support_box(const VectorField& phi) {
  std::optional<Box> out;
  for (const auto& c : phi.components) {
    const auto s = c.node().effective_support();
    if (!s) throw DomainError(c.kind() + " needs bounded support here");
    if (!out) {
      out = *s;
      continue;
    }
    for (int i = 0; i < phi.dim(); ++i) {
      out->lo[i] = std::min(out->lo[i], s->lo[i]);
      out->hi[i] = std::max(out->hi[i], s->hi[i]);
    }
  }
  if (!out) throw DomainError("empty vector field");
  return *out;
}

QuadResult over(const quad::Fn1& w, double a, double b, std::vector<Singularity> sing, const QuadSpec& spec) {
  if (!(a < b)) return {};
  std::erase_if(sing, [&](const Singularity& s) { return s.point < a || s.point > b; });
  return quad::integrate_1d(w, a, b, sing, spec);
}

QuadSpec spec_or(const SuiteConfig& cfg, double rel_tol) {
  if (cfg.quad) return *cfg.quad;
  QuadSpec s;
  s.rel_tol = rel_tol;
  s.abs_tol = 1e-15;
  return s;
}

std::vector<double> alphas_or(const SuiteConfig& cfg, std::vector<double> fallback) {
  return cfg.alphas.empty() ? fallback : cfg.alphas;
}

const std::vector<double> kCoarse = {0.25, 0.5, 0.75};
const std::vector<double> kFine = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

SuiteReport run_jobs(const std::string& name, const std::vector<std::function<SuiteReport()>>& jobs) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SuiteReport> parts(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { parts[i] = jobs[i](); });
  SuiteReport out;
  out.suite = name;
  for (auto& p : parts)
    for (auto& c : p.cases) out.cases.push_back(std::move(c));
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// Left-hand side shared by the half-space Gauss-Green formula and Hardy
// inequality: (mu/a) int f(x0 + u) |u|^{-a} du, in the variable u so that
// the kernel singularity sits at zero.
double hyperplane_pairing(double alpha, const ScalarField& f, const HalfSpace& h, const QuadSpec& spec, Tally& t) {
  const auto [a, b] = support_1d(f);
  const double x0 = h.x0[0];
  const quad::Fn1 w = [&](double u) {
    if (u == 0.0) return 0.0;
    return f(Point{x0 + u}) * std::pow(std::fabs(u), -alpha);
  };
  const double v = t(over(w, a - x0, b - x0, {{0.0, -alpha}}, spec)).value;
  return constants::mu(1, alpha) / alpha * v;
}

// int_0^inf g(grad^a f(x0 + nu u)) du with the support edges of f as breaks.
double half_line_gradient(double alpha, const ScalarField& f, double x0, double nu, const QuadSpec& spec, Tally& t,
                          const std::function<double(double)>& g) {
  const auto [a, b] = support_1d(f);
  const QuadSpec inner = spec.tightened(0.1);
  std::vector<Singularity> sing;
  for (double e : {a, b}) {
    const double u = (e - x0) * nu;
    if (u > 0.0) sing.push_back({u, 0.0});
  }
  if (const auto p = f.node().catalog_params()) {
    const double u = (p->center[0] - x0) * nu;
    if (u > 0.0) sing.push_back({u, 0.0});
  }
  std::sort(sing.begin(), sing.end(), [](const Singularity& l, const Singularity& r) { return l.point < r.point; });
  const quad::Fn1 w = [&](double u) { return g(t(frac_gradient(f, alpha, Point{x0 + nu * u}, inner)).value[0]); };
  QuadSpec s = spec;
  s.tail_exponent = 1.0 + alpha;
  return t(quad::integrate_1d(w, 0.0, quad::kInf, sing, s)).value;
}

ScalarField bump1(double c, double r, double amp = 1.0) { return fields::smooth_bump(Point{c}, r, amp); }

}  // namespace

SuiteConfig config_from_json(const nlohmann::json& j) {
  SuiteConfig cfg;
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "alpha") {
      if (value.is_number()) {
        cfg.alphas.push_back(value.get<double>());
      } else if (value.is_array()) {
        for (const auto& a : value) {
          if (!a.is_number()) throw ParseError("config: alpha entries must be numbers");
          cfg.alphas.push_back(a.get<double>());
        }
      } else {
        throw ParseError("config: alpha must be a number or an array");
      }
    } else if (key == "quad") {
      cfg.quad = quad_spec_from_json(value, QuadSpec{});
    } else {
      throw ParseError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

SuiteReport suite_ibp(double alpha, const ScalarField& f, const VectorField& phi, const QuadSpec& spec, double tol,
                      const std::string& case_id) {
  SuiteReport rep;
  rep.suite = "ibp";
  const int n = f.valid() ? f.dim() : 0;
  attempt(rep, case_id, alpha, n, tol, [&](Tally& t) -> std::vector<CaseResult> {
    FracOrder::gradient(alpha);
    if (n < 1 || n > 2) throw DomainError("suite_ibp: n must be 1 or 2");
    if (phi.dim() != n || phi.size() != n) throw DomainError("suite_ibp: test field dimension mismatch");
    const QuadSpec inner = spec.tightened(0.1);
    double lhs = 0.0, rhs = 0.0;
    if (n == 1) {
      const auto [a, b] = support_1d(f);
      const quad::Fn1 wl = [&](double x) {
        const double fx = f(Point{x});
        if (fx == 0.0) return 0.0;
        return fx * t(frac_divergence(phi, alpha, Point{x}, inner)).value[0];
      };
      lhs = t(over(wl, a, b, {}, spec)).value;
      const ScalarField& p = phi.components[0];
      const auto [c, d] = support_1d(p);
      const quad::Fn1 wr = [&](double x) {
        const double px = p(Point{x});
        if (px == 0.0) return 0.0;
        return px * t(frac_gradient(f, alpha, Point{x}, inner)).value[0];
      };
      rhs = -t(over(wr, c, d, {}, spec)).value;
    } else {
      const auto fb = f.node().effective_support();
      if (!fb) throw DomainError("suite_ibp: f needs bounded support");
      // Weights below abs_tol cannot move the result; most of a gaussian's
      // effective box is skipped this way.
      const quad::FnN wl = [&](const Point& x) {
        const double fx = f(x);
        if (std::fabs(fx) <= spec.abs_tol) return 0.0;
        return fx * t(frac_divergence(phi, alpha, x, inner)).value[0];
      };
      // Nested adaptive rules would chase the operator's own quadrature
      // noise; a fixed tensor rule needs far fewer operator calls.
      lhs = t(quad::integrate_box_fixed(wl, fb->lo, fb->hi, 4, 16, spec)).value;
      const Box pb = support_box(phi);
      const quad::FnN wr = [&](const Point& x) {
        double px[2], s2 = 0.0;
        for (int i = 0; i < 2; ++i) {
          px[i] = phi.components[i](x);
          s2 += px[i] * px[i];
        }
        if (std::sqrt(s2) <= spec.abs_tol) return 0.0;
        const auto g = t(frac_gradient(f, alpha, x, inner)).value;
        return px[0] * g[0] + px[1] * g[1];
      };
      rhs = -t(quad::integrate_box_fixed(wr, pb.lo, pb.hi, 4, 16, spec)).value;
    }
    return {make_case(rep.suite, case_id, alpha, n, lhs, rhs, tol, Compare::relative)};
  });
  return rep;
}

SuiteReport suite_halfspace(double alpha, const std::vector<double>& distances) {
  SuiteReport rep;
  rep.suite = "halfspace";
  QuadSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-15;
  const HalfSpace h1(Point{1.0}, Point{0.0});
  for (double d : distances) {
    const std::string id = fmt("n1_d=%g", d);
    attempt(rep, id, alpha, 1, 1e-6, [&](Tally& t) -> std::vector<CaseResult> {
      const Point x{h1.x0[0] + d};
      const double got = t(frac_gradient(fields::half_space_indicator(h1), alpha, x, spec)).value[0];
      const double want = closed::half_space_gradient(alpha, h1, x)[0];
      return {make_case(rep.suite, id, alpha, 1, got, want, 1e-6, Compare::relative)};
    });
  }
  // Tilted plane through (0.2, -0.1); the point sits at distance 1 with a
  // tangential offset so that no coordinate symmetry helps.
  const HalfSpace h2(Point{0.6, 0.8}, Point{0.2, -0.1});
  const Point tangent{-0.8, 0.6};
  const Point x = h2.x0 + 1.0 * h2.nu + 0.7 * tangent;
  attempt(rep, "n2_d=1_normal", alpha, 2, 1e-4, [&](Tally& t) -> std::vector<CaseResult> {
    const auto g = t(frac_gradient(fields::half_space_indicator(h2), alpha, x, spec)).value;
    const Point got{g[0], g[1]};
    const Point want = closed::half_space_gradient(alpha, h2, x);
    return {make_case(rep.suite, "n2_d=1_normal", alpha, 2, dot(got, h2.nu), dot(want, h2.nu), 1e-4,
                      Compare::relative),
            make_case(rep.suite, "n2_d=1_tangential", alpha, 2, dot(got, tangent), 0.0, 1e-8, Compare::absolute)};
  });
  return rep;
}

SuiteReport suite_hardy_optimal(const std::vector<double>& alpha_grid) {
  SuiteReport rep;
  rep.suite = "hardy";
  for (double alpha : alpha_grid) {
    attempt(rep, "identity", alpha, 1, 1e-14, [&](Tally&) -> std::vector<CaseResult> {
      if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
      const auto hc = constants::hardy_constants(1, alpha);
      const double lhs = hc.c_half * (2.0 / (1.0 - alpha));
      const double rhs = 4.0 * constants::mu(1, alpha) / (alpha * (1.0 - alpha));
      return {make_case(rep.suite, "identity", alpha, 1, lhs, rhs, 1e-14, Compare::relative)};
    });
    attempt(rep, "hardy_integral", alpha, 1, 1e-8, [&](Tally& t) -> std::vector<CaseResult> {
      QuadSpec s;
      s.rel_tol = 1e-12;
      s.abs_tol = 1e-15;
      const Singularity origin[] = {{0.0, -alpha}};
      const double q = t(quad::integrate_1d(
                             [&](double x) { return x == 0.0 ? 0.0 : std::pow(std::fabs(x), -alpha); }, -1.0, 1.0,
                             origin, s))
                           .value;
      return {make_case(rep.suite, "hardy_integral", alpha, 1, q, closed::interval_identities(alpha).hardy_integral,
                        1e-8, Compare::relative)};
    });
  }
  return rep;
}

SuiteReport suite_chain_failure(double alpha, const std::vector<double>& eps_list) {
  SuiteReport rep;
  rep.suite = "chain";
  QuadSpec spec;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 1e-13;
  struct Probe {
    const char* id;
    double c, r;
  };
  const Probe probes[] = {{"pair_c=0", 0.0, 0.8}, {"pair_c=1", 1.0, 0.6}, {"pair_c=0.5", 0.5, 1.2},
                          {"pair_c=3", 3.0, 1.0}};
  for (const auto& pr : probes) {
    attempt(rep, pr.id, alpha, 1, 1e-4, [&](Tally& t) -> std::vector<CaseResult> {
      const ScalarField bump = bump1(pr.c, pr.r);
      const VectorField phi({bump});
      const QuadSpec inner = spec.tightened(0.1);
      // f_alpha = m (|x|^{a-1} sgn x - |x - 1|^{a-1} sgn(x - 1)); each term is
      // integrated in its own variable so that its singular point sits at 0.
      const auto term = [&](double shift) {
        const quad::Fn1 w = [&](double u) {
          if (u == 0.0) return 0.0;
          const double k = std::copysign(std::pow(std::fabs(u), alpha - 1.0), u);
          return k * t(frac_divergence(phi, alpha, Point{shift + u}, inner)).value[0];
        };
        QuadSpec s = spec;
        s.tail_exponent = 2.0;
        const std::vector<Singularity> sing = {{pr.c - pr.r - shift, 0.0}, {0.0, alpha - 1.0},
                                               {pr.c + pr.r - shift, 0.0}};
        std::vector<Singularity> sorted = sing;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Singularity& l, const Singularity& r) { return l.point < r.point; });
        return t(quad::integrate_1d(w, -quad::kInf, quad::kInf, sorted, s)).value;
      };
      const double lhs = constants::mu(1, -alpha) * (term(0.0) - term(1.0));
      const double rhs = bump(Point{1.0}) - bump(Point{0.0});
      return {make_case(rep.suite, pr.id, alpha, 1, lhs, rhs, 1e-4, Compare::absolute)};
    });
  }

  attempt(rep, "log_slope", alpha, 1, 0.02, [&](Tally& t) -> std::vector<CaseResult> {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    std::vector<double> eps = eps_list;
    if (eps.empty()) {
      const double top = std::pow(0.005, 1.0 / (1.0 - alpha));
      for (int k = 0; k < 5; ++k) eps.push_back(top * std::pow(10.0, -k));
    }
    if (eps.size() < 2) throw DomainError("suite_chain_failure: need at least two eps values");
    QuadSpec s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-15;
    // P(eps) = int_eps^{1/2} |f_a(x)| / x^a dx in the variable t = ln x.
    std::vector<double> X, Y;
    for (double e : eps) {
      if (!(e > 0.0 && e < 0.5)) throw DomainError("suite_chain_failure: eps must lie in (0, 1/2)");
      const quad::Fn1 w = [&](double tt) {
        const double x = std::exp(tt);
        return std::fabs(closed::f_alpha_closed(alpha, x)) * std::pow(x, 1.0 - alpha);
      };
      X.push_back(std::log(1.0 / e));
      Y.push_back(t(quad::integrate_1d(w, std::log(e), std::log(0.5), s)).value);
    }
    const double m = static_cast<double>(X.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      sx += X[i];
      sy += Y[i];
      sxx += X[i] * X[i];
      sxy += X[i] * Y[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return {make_case(rep.suite, "log_slope", alpha, 1, slope, std::fabs(constants::mu(1, -alpha)), 0.02,
                      Compare::relative)};
  });
  return rep;
}

SuiteReport suite_gauss_green(double alpha, const ScalarField& f, const HalfSpace& h, const QuadSpec& spec,
                              const std::string& case_id) {
  SuiteReport rep;
  rep.suite = "gauss-green";
  attempt(rep, case_id, alpha, 1, 1e-4, [&](Tally& t) -> std::vector<CaseResult> {
    FracOrder::gradient(alpha);
    if (f.dim() != 1 || h.nu.dim() != 1) throw DomainError("suite_gauss_green: n = 1 only");
    const double lhs = hyperplane_pairing(alpha, f, h, spec, t);
    const double nu = h.nu[0];
    const double rhs = -nu * half_line_gradient(alpha, f, h.x0[0], nu, spec, t, [](double g) { return g; });
    return {make_case(rep.suite, case_id, alpha, 1, lhs, rhs, 1e-4, Compare::relative)};
  });
  return rep;
}

SuiteReport suite_hardy_halfspace(double alpha, const ScalarField& f, const HalfSpace& h, const QuadSpec& spec,
                                  const std::string& case_id) {
  SuiteReport rep;
  rep.suite = "hardy-half";
  attempt(rep, case_id, alpha, 1, 1e-6, [&](Tally& t) -> std::vector<CaseResult> {
    FracOrder::gradient(alpha);
    if (f.dim() != 1 || h.nu.dim() != 1) throw DomainError("suite_hardy_halfspace: n = 1 only");
    const double lhs = hyperplane_pairing(alpha, f, h, spec, t);
    const double rhs =
        half_line_gradient(alpha, f, h.x0[0], h.nu[0], spec, t, [](double g) { return std::fabs(g); });
    return {make_case(rep.suite, case_id, alpha, 1, lhs, rhs, 1e-6, Compare::margin)};
  });
  return rep;
}

SuiteReport suite_weighted_hardy(double alpha, const ScalarField& f, double x0, double r, const QuadSpec& spec,
                                 const std::string& case_id) {
  SuiteReport rep;
  rep.suite = "weighted";
  attempt(rep, case_id, alpha, 1, 1e-6, [&](Tally& t) -> std::vector<CaseResult> {
    FracOrder::gradient(alpha);
    if (f.dim() != 1) throw DomainError("suite_weighted_hardy: n = 1 only");
    if (!(r > 0.0)) throw DomainError("suite_weighted_hardy: r must be positive");
    const auto [a, b] = support_1d(f);
    const double k = constants::mu(1, alpha) / (2.0 * alpha);
    // x = x0 + side (r + s): the weight's singularity t = r becomes s = 0.
    double lhs = 0.0;
    for (double side : {1.0, -1.0}) {
      const double lo = side > 0 ? a - x0 : x0 - b;
      const double hi = side > 0 ? b - x0 : x0 - a;
      const double t0 = std::max(lo, 0.0);
      if (!(t0 < hi)) continue;
      const quad::Fn1 w = [&](double s) {
        if (s == 0.0) return 0.0;
        const double fx = f(Point{x0 + side * (r + s)});
        if (fx == 0.0) return 0.0;
        return fx * k * (std::pow(std::fabs(s), -alpha) + std::pow(std::fabs(2.0 * r + s), -alpha));
      };
      lhs += t(over(w, t0 - r, hi - r, {{0.0, -alpha}}, spec)).value;
    }
    double rhs = 0.0;
    for (double side : {1.0, -1.0}) {
      const QuadSpec inner = spec.tightened(0.1);
      std::vector<Singularity> sing;
      for (double e : {a, b, 0.5 * (a + b)}) {
        const double u = side * (e - x0) - r;
        if (u > 0.0) sing.push_back({u, 0.0});
      }
      std::sort(sing.begin(), sing.end(), [](const Singularity& l, const Singularity& q) { return l.point < q.point; });
      const quad::Fn1 w = [&](double u) {
        return std::fabs(t(frac_gradient(f, alpha, Point{x0 + side * (r + u)}, inner)).value[0]);
      };
      QuadSpec s = spec;
      s.tail_exponent = 1.0 + alpha;
      rhs += t(quad::integrate_1d(w, 0.0, quad::kInf, sing, s)).value;
    }
    return {make_case(rep.suite, case_id, alpha, 1, lhs, rhs, 1e-6, Compare::margin)};
  });
  return rep;
}

SuiteReport suite_rigidity(double alpha, double L, int sample_count) {
  SuiteReport rep;
  rep.suite = "rigidity";
  QuadSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-16;
  if (!(L > 0.0) || sample_count < 2) {
    rep.cases.push_back(failed_case(rep.suite, "setup", alpha, 1, 0.0, "suite_rigidity: need L > 0 and 2 samples"));
    return rep;
  }
  const ScalarField f = bump1(0.0, L);
  for (int k = 0; k < sample_count; ++k) {
    const double x = L * (1.0 + 3.0 * k / (sample_count - 1));
    const std::string id = fmt("x=%.6g", x);
    attempt(rep, id, alpha, 1, 0.0, [&](Tally& t) -> std::vector<CaseResult> {
      const double g = t(frac_gradient(f, alpha, Point{x}, spec)).value[0];
      return {make_case(rep.suite, id, alpha, 1, g, 0.0, 0.0, Compare::strict_less)};
    });
  }
  attempt(rep, "tail_exponent", alpha, 1, 0.15, [&](Tally& t) -> std::vector<CaseResult> {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (double k : {8.0, 16.0, 32.0, 64.0}) {
      const double g = t(frac_gradient(f, alpha, Point{k * L}, spec)).value[0];
      const double X = std::log(k * L), Y = std::log(std::fabs(g));
      sx += X;
      sy += Y;
      sxx += X * X;
      sxy += X * Y;
      ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return {make_case(rep.suite, "tail_exponent", alpha, 1, -slope, 1.0 + alpha, 0.15, Compare::relative)};
  });
  return rep;
}

SuiteReport suite_leibniz(double alpha, const ScalarField& f, const ScalarField& g, const std::vector<double>& points,
                          const QuadSpec& spec) {
  SuiteReport rep;
  rep.suite = "leibniz";
  const ScalarField fg = fields::product(f, g);
  for (double x : points) {
    const std::string id = fmt("x=%g", x);
    attempt(rep, id, alpha, 1, 1e-6, [&](Tally& t) -> std::vector<CaseResult> {
      if (f.dim() != 1 || g.dim() != 1) throw DomainError("suite_leibniz: n = 1 only");
      const Point p{x};
      const double lhs = t(frac_gradient(fg, alpha, p, spec)).value[0];
      const double rhs = g(p) * t(frac_gradient(f, alpha, p, spec)).value[0] +
                         f(p) * t(frac_gradient(g, alpha, p, spec)).value[0] +
                         t(nl_gradient(f, g, alpha, p, spec)).value[0];
      return {make_case(rep.suite, id, alpha, 1, lhs, rhs, 1e-6, Compare::absolute)};
    });
  }
  return rep;
}

SuiteReport suite_variation_bound(double alpha) {
  SuiteReport rep;
  rep.suite = "varbound";
  QuadSpec spec;
  spec.rel_tol = 1e-7;
  spec.abs_tol = 1e-12;
  double bound = 0.0;
  bool ok = false;
  attempt(rep, "bound<=exact", alpha, 1, 1e-6, [&](Tally&) -> std::vector<CaseResult> {
    bound = variation_lower_bound(fields::interval_indicator(0.0, 1.0), alpha, default_variation_family(), spec);
    ok = true;
    return {make_case(rep.suite, "bound<=exact", alpha, 1, bound, closed::interval_identities(alpha).variation, 1e-6,
                      Compare::margin)};
  });
  if (!ok) return rep;
  const double exact = closed::interval_identities(alpha).variation;
  rep.cases.push_back(make_case(rep.suite, "ratio>=0.6", alpha, 1, 0.6, bound / exact, 0.0, Compare::margin));
  rep.cases.push_back(make_case(rep.suite, "bound>0", alpha, 1, 0.0, bound, 0.0, Compare::strict_less));
  return rep;
}

SuiteReport suite_gagliardo_bound(double alpha, const ScalarField& f, const QuadSpec& spec) {
  SuiteReport rep;
  rep.suite = "gagliardo";
  const std::string id = f.valid() ? f.kind() : "empty";
  attempt(rep, id, alpha, 1, 1e-6, [&](Tally& t) -> std::vector<CaseResult> {
    FracOrder::gradient(alpha);
    if (f.dim() != 1) throw DomainError("suite_gagliardo_bound: n = 1 only");
    const QuadSpec inner = spec.tightened(0.1);
    const auto [a, b] = support_1d(f);
    const quad::Fn1 w = [&](double x) { return std::fabs(t(frac_gradient(f, alpha, Point{x}, inner)).value[0]); };
    std::vector<Singularity> sing = {{a, 0.0}, {0.5 * (a + b), 0.0}, {b, 0.0}};
    QuadSpec s = spec;
    s.tail_exponent = 1.0 + alpha;
    const double lhs = t(quad::integrate_1d(w, -quad::kInf, quad::kInf, sing, s)).value;
    const double rhs = constants::mu(1, alpha) * t(gagliardo_seminorm(f, alpha, spec)).value;
    return {make_case(rep.suite, id, alpha, 1, lhs, rhs, 1e-6, Compare::margin)};
  });
  return rep;
}

SuiteReport suite_spectral(double alpha, const ScalarField& gaussian, const std::vector<double>& points) {
  SuiteReport rep;
  rep.suite = "spectral";
  QuadSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-16;
  for (double x : points) {
    const std::string id = fmt("x=%g", x);
    attempt(rep, id, alpha, 1, 1e-7, [&](Tally& t) -> std::vector<CaseResult> {
      const double lhs = t(frac_gradient(gaussian, alpha, Point{x}, spec)).value[0];
      const double rhs = spectral_gradient_1d(gaussian, alpha, x);
      return {make_case(rep.suite, id, alpha, 1, lhs, rhs, 1e-7, Compare::relative)};
    });
  }
  return rep;
}

SuiteReport suite_gamma_radial(const std::vector<double>& alpha_grid) {
  SuiteReport rep;
  rep.suite = "gamma-radial";
  QuadSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-15;
  for (double alpha : alpha_grid) {
    for (int n = 2; n <= 5; ++n) {
      const std::string id = fmt("n=%d", n);
      attempt(rep, id, alpha, n, 1e-8, [&](Tally& t) -> std::vector<CaseResult> {
        const double e = 0.5 * (n + alpha - 1.0);
        const quad::Fn1 w = [&](double r) { return std::pow(r, n - 2) * std::pow(1.0 + r * r, -e); };
        QuadSpec s = spec;
        s.tail_exponent = 1.0 + alpha;
        const double q = t(quad::integrate_1d(w, 0.0, quad::kInf, s)).value;
        const double exact = closed::gamma_radial_integral(n, alpha);
        std::vector<CaseResult> out = {make_case(rep.suite, id, alpha, n, q, exact, 1e-8, Compare::relative)};
        if (n == 3) out.push_back(make_case(rep.suite, "n=3_inverse_alpha", alpha, 3, exact, 1.0 / alpha, 1e-12,
                                            Compare::relative));
        return out;
      });
    }
  }
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hardy",     "halfspace", "gamma-radial", "ibp",      "chain",
                                                 "gauss-green", "hardy-half", "weighted",   "rigidity", "leibniz",
                                                 "spectral",  "varbound",  "gagliardo"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  using Job = std::function<SuiteReport()>;
  std::vector<Job> jobs;
  const auto coarse = alphas_or(config, kCoarse);

  if (name == "hardy") {
    for (double a : alphas_or(config, kFine)) jobs.push_back([a] { return suite_hardy_optimal({a}); });
  } else if (name == "halfspace") {
    for (double a : coarse) jobs.push_back([a] { return suite_halfspace(a, {0.25, 1.0, 4.0}); });
  } else if (name == "gamma-radial") {
    jobs.push_back([coarse] { return suite_gamma_radial(coarse); });
  } else if (name == "ibp") {
    const QuadSpec s1 = spec_or(config, 1e-9);
    const QuadSpec s2 = spec_or(config, 1e-6);
    for (double a : coarse) {
      jobs.push_back([=] {
        return suite_ibp(a, fields::gaussian(Point{0.0}, 1.0), VectorField({bump1(0.3, 1.2)}), s1, 1e-6,
                         "gaussian_bump");
      });
      jobs.push_back([=] {
        return suite_ibp(a, bump1(-0.2, 1.0), VectorField({bump1(0.5, 0.8, 0.5)}), s1, 1e-6, "bump_bump");
      });
      jobs.push_back([=] {
        return suite_ibp(a, fields::constant(1, 0.0), VectorField({bump1(0.0, 1.0)}), s1, 1e-6, "zero_bump");
      });
    }
    const double a2 = coarse[coarse.size() / 2];
    jobs.push_back([=] {
      const ScalarField f = fields::gaussian(Point{0.1, -0.2}, 0.8);
      const VectorField phi({fields::gaussian(Point{0.3, 0.2}, 1.0, 0.8), fields::gaussian(Point{-0.2, 0.1}, 0.9, 0.5)});
      return suite_ibp(a2, f, phi, s2, 1e-4, "n2_gaussians");
    });
  } else if (name == "chain") {
    for (double a : coarse) jobs.push_back([a] { return suite_chain_failure(a, {}); });
  } else if (name == "gauss-green" || name == "hardy-half") {
    const QuadSpec s = spec_or(config, 1e-9);
    struct Geo {
      const char* id;
      double x0, nu;
    };
    const bool gg = name == "gauss-green";
    const std::vector<Geo> geos =
        gg ? std::vector<Geo>{{"x0=0", 0.0, 1.0}, {"x0=-2", -2.0, 1.0}, {"x0=0.5", 0.5, 1.0},
                              {"x0=-0.7", -0.7, 1.0}, {"x0=3_nu=-1", 3.0, -1.0}}
           : std::vector<Geo>{{"x0=0", 0.0, 1.0}, {"x0=0.5_nu=-1", 0.5, -1.0}, {"x0=-0.3", -0.3, 1.0},
                              {"x0=1", 1.0, 1.0}, {"x0=4", 4.0, 1.0}};
    for (double a : coarse) {
      for (const auto& g : geos) {
        jobs.push_back([=] {
          const HalfSpace h(Point{g.nu}, Point{g.x0});
          return gg ? suite_gauss_green(a, bump1(0.0, 1.0), h, s, g.id)
                    : suite_hardy_halfspace(a, bump1(0.0, 1.0), h, s, g.id);
        });
      }
      jobs.push_back([=] {
        const HalfSpace h(Point{1.0}, Point{0.0});
        return gg ? suite_gauss_green(a, fields::constant(1, 0.0), h, s, "zero")
                  : suite_hardy_halfspace(a, fields::constant(1, 0.0), h, s, "zero");
      });
    }
  } else if (name == "weighted") {
    const QuadSpec s = spec_or(config, 1e-9);
    for (double a : coarse) {
      for (double x0 : {0.0, 0.4})
        for (double r : {0.5, 1.0, 2.0, 5.0})
          jobs.push_back([=] { return suite_weighted_hardy(a, bump1(0.0, 1.0), x0, r, s, fmt("x0=%g_r=%g", x0, r)); });
      jobs.push_back([=] { return suite_weighted_hardy(a, fields::constant(1, 0.0), 0.0, 1.0, s, "zero"); });
    }
  } else if (name == "rigidity") {
    for (double a : coarse) jobs.push_back([a] { return suite_rigidity(a, 1.0, 20); });
  } else if (name == "leibniz") {
    const QuadSpec s = spec_or(config, 1e-10);
    std::vector<double> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(-1.5 + 3.0 * k / 9.0);
    for (double a : coarse)
      jobs.push_back([=] {
        return suite_leibniz(a, fields::gaussian(Point{-0.3}, 1.0), fields::gaussian(Point{0.4}, 0.8, 0.7), pts, s);
      });
  } else if (name == "spectral") {
    const std::vector<double> pts = {-1.9, -1.1, -0.6, -0.2, 0.05, 0.35, 0.6, 0.9, 1.4, 2.2};
    for (double a : coarse)
      jobs.push_back([=] { return suite_spectral(a, fields::gaussian(Point{0.2}, 1.0), pts); });
  } else if (name == "varbound") {
    for (double a : coarse) jobs.push_back([a] { return suite_variation_bound(a); });
  } else if (name == "gagliardo") {
    const QuadSpec s = spec_or(config, 1e-9);
    for (double a : coarse) {
      jobs.push_back([=] { return suite_gagliardo_bound(a, bump1(0.0, 1.0), s); });
      jobs.push_back([=] { return suite_gagliardo_bound(a, fields::plateau(Point{-0.5}, Point{0.5}, 0.5), s); });
    }
  } else {
    throw DomainError("unknown suite '" + name + "'");
  }
  return run_jobs(name, jobs);
}

std::vector<SuiteReport> run_all(const SuiteConfig& config) {
  std::vector<SuiteReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, config));
  return out;
}

int exit_status(const std::vector<SuiteReport>& reports) {
  bool budget = false, failed = false;
  for (const auto& r : reports) {
    budget = budget || r.budget_exhausted();
    failed = failed || !r.passed();
  }
  return budget ? 3 : failed ? 1 : 0;
}

}  // namespace fracvar::suites
