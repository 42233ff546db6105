#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracvar/closed_forms.hpp"
#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/field_json.hpp"
#include "fracvar/operators.hpp"
#include "fracvar/report.hpp"
#include "fracvar/suites.hpp"

using namespace fracvar;

namespace {

constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string csv(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i]);
  }
  return s;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(b), &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t\r", b + used) != std::string::npos) throw ParseError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Points are separated by ';' or newlines and coordinates by ','. In one
// dimension a plain comma list is a list of points. "@path" reads a file.
std::vector<Point> parse_points(std::string text, int n) {
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ParseError("cannot read " + text.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::vector<Point> out;
  std::string row;
  for (char& c : text)
    if (c == '\n') c = ';';
  std::stringstream ss(text);
  while (std::getline(ss, row, ';')) {
    const auto xs = parse_numbers(row);
    if (xs.empty()) continue;
    if (n == 1) {
      for (double x : xs) out.push_back(Point{x});
      continue;
    }
    if (static_cast<int>(xs.size()) != n) throw ParseError("point '" + row + "' does not have " + std::to_string(n) + " coordinates");
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = xs[i];
    out.push_back(p);
  }
  if (out.empty()) throw ParseError("no points given");
  return out;
}

Point parse_point(const std::string& text) {
  const auto xs = parse_numbers(text);
  if (xs.empty() || xs.size() > 3) throw ParseError("expected 1 to 3 coordinates: '" + text + "'");
  Point p(static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) p[static_cast<int>(i)] = xs[i];
  return p;
}

std::vector<double> coords(const Point& p) {
  std::vector<double> v;
  for (int i = 0; i < p.dim(); ++i) v.push_back(p[i]);
  return v;
}

struct EvalArgs {
  std::string op;
  double alpha = 0.5;
  std::string field, field2, points;
  double rel_tol = 0.0;
};

int run_eval(const EvalArgs& a) {
  const nlohmann::json j = load_json_argument(a.field);
  quad::QuadSpec spec;
  ScalarField f, g;
  VectorField phi;
  int n = 0;
  if (a.op == "div") {
    phi = vector_field_from_json(j);
    n = phi.dim();
  } else {
    f = field_from_json(j);
    n = f.dim();
  }
  if (a.op == "nlgrad") {
    if (a.field2.empty()) throw ParseError("nlgrad needs --field2");
    g = field_from_json(load_json_argument(a.field2));
  }
  spec = quad::QuadSpec::for_dim(n);
  if (a.rel_tol > 0.0) spec.rel_tol = a.rel_tol;
  const auto pts = parse_points(a.points, n);
  const int nv = a.op == "grad" || a.op == "nlgrad" ? n : 1;
  std::string header;
  for (int i = 0; i < n; ++i) header += "x" + std::to_string(i) + ",";
  for (int i = 0; i < nv; ++i) header += "value" + std::to_string(i) + ",";
  std::printf("%serr_estimate,evals\n", header.c_str());
  bool budget = false;
  for (const Point& x : pts) {
    OperatorEval e = [&] {
      if (a.op == "grad") return frac_gradient(f, a.alpha, x, spec);
      if (a.op == "div") return frac_divergence(phi, a.alpha, x, spec);
      if (a.op == "riesz") return riesz_potential(f, a.alpha, x, spec);
      if (a.op == "laplacian") return frac_laplacian(f, a.alpha, x, spec);
      return nl_gradient(f, g, a.alpha, x, spec);
    }();
    budget = budget || e.quad.budget_exhausted;
    std::printf("%s,%s,%s,%ld\n", csv(coords(x)).c_str(), csv(e.value).c_str(),
                format_number(e.quad.err_estimate).c_str(), e.quad.evals_used);
  }
  return budget ? kBudget : 0;
}

struct OracleArgs {
  std::string name;
  double alpha = 0.5;
  int n = 1;
  std::string nu = "1", x0 = "0", x;
  double t = 1.0, r = 1.0;
};

int run_oracle(const OracleArgs& a) {
  if (a.name == "halfspace" || a.name == "hyperplane") {
    const HalfSpace h = HalfSpace::from_direction(parse_point(a.nu), parse_point(a.x0));
    for (const Point& x : parse_points(a.x, h.nu.dim())) {
      if (a.name == "halfspace")
        std::printf("%s,%s\n", csv(coords(x)).c_str(), csv(coords(closed::half_space_gradient(a.alpha, h, x))).c_str());
      else
        std::printf("%s,%s\n", csv(coords(x)).c_str(), format_number(closed::riesz_hyperplane(a.alpha, h, x)).c_str());
    }
  } else if (a.name == "gamma-radial") {
    std::printf("%d,%s\n", a.n, csv({a.alpha, closed::gamma_radial_integral(a.n, a.alpha)}).c_str());
  } else if (a.name == "interval") {
    const auto id = closed::interval_identities(a.alpha);
    std::printf("%s\n", csv({a.alpha, id.hardy_integral, id.variation, id.hardy_constant}).c_str());
  } else if (a.name == "weight") {
    std::printf("%d,%s\n", a.n, csv({a.alpha, a.t, a.r, closed::weight_w(a.n, a.alpha, a.t, a.r)}).c_str());
  } else {
    for (const Point& x : parse_points(a.x, 1))
      std::printf("%s\n", csv({x[0], closed::f_alpha_closed(a.alpha, x[0])}).c_str());
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::vector<double> alphas;
  std::string config, out;
};

int run_verify(const VerifyArgs& a) {
  suites::SuiteConfig cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw ParseError("cannot read " + a.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
    cfg = suites::config_from_json(j);
  }
  if (!a.alphas.empty()) cfg.alphas = a.alphas;

  std::vector<SuiteReport> reports;
  if (a.suite == "all") {
    for (const auto& name : suites::suite_names()) {
      reports.push_back(suites::run_suite(name, cfg));
      std::fprintf(stderr, "%s: %.2f s\n", name.c_str(), reports.back().wall_seconds);
    }
  } else {
    reports.push_back(suites::run_suite(a.suite, cfg));
    std::fprintf(stderr, "%s: %.2f s\n", a.suite.c_str(), reports.back().wall_seconds);
  }

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw ParseError("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  write_csv_header(os);
  for (const auto& r : reports) write_csv(os, r);
  for (const auto& r : reports)
    for (const auto& c : r.cases)
      if (!c.error.empty()) std::fprintf(stderr, "%s/%s: %s\n", c.suite.c_str(), c.case_id.c_str(), c.error.c_str());
  return suites::exit_status(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional gradient operators and verification suites"};
  app.require_subcommand(1);

  int cn = 1;
  double calpha = 0.5;
  auto* cmd_constants = app.add_subcommand("constants", "Normalizing constants for (n, alpha)");
  cmd_constants->add_option("--n", cn, "Dimension")->required();
  cmd_constants->add_option("--alpha", calpha, "Fractional order in (0, 1)")->required();

  EvalArgs ev;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate an operator at points");
  cmd_eval->add_option("--op", ev.op, "Operator")
      ->required()
      ->check(CLI::IsMember({"grad", "div", "riesz", "laplacian", "nlgrad"}));
  cmd_eval->add_option("--alpha", ev.alpha, "Order (alpha, s or beta)")->required();
  cmd_eval->add_option("--field", ev.field, "Field descriptor (JSON or @file)")->required();
  cmd_eval->add_option("--field2", ev.field2, "Second field for nlgrad");
  cmd_eval->add_option("--points", ev.points, "Points: ';'-separated, ','-separated coordinates, or @file")
      ->required();
  cmd_eval->add_option("--rel-tol", ev.rel_tol, "Relative tolerance (default depends on n)");

  OracleArgs orc;
  auto* cmd_oracle = app.add_subcommand("oracle", "Closed-form values");
  cmd_oracle->add_option("--name", orc.name, "Oracle")
      ->required()
      ->check(CLI::IsMember({"halfspace", "hyperplane", "gamma-radial", "interval", "weight", "f-alpha"}));
  cmd_oracle->add_option("--alpha", orc.alpha, "Fractional order");
  cmd_oracle->add_option("--n", orc.n, "Dimension (gamma-radial, weight)");
  cmd_oracle->add_option("--nu", orc.nu, "Plane normal, comma separated");
  cmd_oracle->add_option("--x0", orc.x0, "Point on the plane");
  cmd_oracle->add_option("--x", orc.x, "Evaluation points");
  cmd_oracle->add_option("--t", orc.t, "Radius t (weight)");
  cmd_oracle->add_option("--r", orc.r, "Ball radius r (weight)");

  VerifyArgs ver;
  std::vector<std::string> names = suites::suite_names();
  names.push_back("all");
  auto* cmd_verify = app.add_subcommand("verify", "Run verification suites and write a CSV report");
  cmd_verify->add_option("--suite", ver.suite, "Suite name or all")->required()->check(CLI::IsMember(names));
  cmd_verify->add_option("--alpha", ver.alphas, "Override the alpha grid");
  cmd_verify->add_option("--config", ver.config, "JSON config with alpha and quad keys");
  cmd_verify->add_option("--out", ver.out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*cmd_constants) {
      const auto h = constants::hardy_constants(cn, calpha);
      std::printf("n,alpha,mu,nu(1-alpha),c_half,gamma_spector,c_max,omega_n\n");
      std::printf("%d,%s\n", cn,
                  csv({calpha, constants::mu(cn, calpha), constants::nu(cn, 1.0 - calpha), h.c_half, h.gamma_spector,
                       h.c_max, constants::ball_volume(cn)})
                      .c_str());
      return 0;
    }
    if (*cmd_eval) {
      return run_eval(ev);
    }
    if (*cmd_oracle) {
      if (orc.x.empty() && (orc.name == "halfspace" || orc.name == "hyperplane" || orc.name == "f-alpha"))
        throw ParseError("--x is required for " + orc.name);
      return run_oracle(orc);
    }
    return run_verify(ver);
  } catch (const BudgetExceededError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBudget;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
