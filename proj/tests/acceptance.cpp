// Acceptance gate: runs `fracvar verify --suite all` twice and checks every
// criterion against its pinned tolerance. Errors are recomputed from the lhs
// and rhs columns; the pass column of the report is not trusted.
//
// usage: fracvar_acceptance <path to fracvar> <work dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace {

struct Row {
  std::string suite, id;
  double alpha = 0.0;
  int n = 0;
  double lhs = 0.0, rhs = 0.0;
};

struct Run {
  int status = -1;
  std::string csv;
  std::vector<Row> rows;
  std::map<std::string, double> seconds;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Run run_all(const std::string& cli, const std::filesystem::path& dir, const std::string& tag) {
  const auto csv = dir / (tag + ".csv");
  const auto err = dir / (tag + ".err");
  const std::string cmd = "\"" + cli + "\" verify --suite all --out \"" + csv.string() + "\" 2> \"" + err.string() + "\"";
  Run r;
  const int raw = std::system(cmd.c_str());
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.csv = slurp(csv);
  const auto lines = split(r.csv, '\n');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 10) continue;
    r.rows.push_back({f[0], f[1], std::stod(f[2]), std::stoi(f[3]), std::stod(f[4]), std::stod(f[5])});
  }
  // stderr carries "<suite>: <seconds> s" per suite.
  for (const auto& line : split(slurp(err), '\n')) {
    const auto colon = line.find(": ");
    if (colon == std::string::npos || line.size() < 2 || line.substr(line.size() - 2) != " s") continue;
    try {
      r.seconds[line.substr(0, colon)] = std::stod(line.substr(colon + 2));
    } catch (const std::exception&) {
    }
  }
  return r;
}

double rel_err(double got, double want) {
  return std::fabs(want) > 1e-12 ? std::fabs(got - want) / std::fabs(want) : std::fabs(got - want);
}

class Gate {
 public:
  explicit Gate(const Run& run) : run_(run) {}

  std::vector<Row> rows(const std::string& suite, const std::function<bool(const Row&)>& keep = nullptr) const {
    std::vector<Row> out;
    for (const auto& r : run_.rows)
      if (r.suite == suite && (!keep || keep(r))) out.push_back(r);
    return out;
  }

  double seconds(const std::string& suite) const {
    const auto it = run_.seconds.find(suite);
    return it == run_.seconds.end() ? HUGE_VAL : it->second;
  }

  void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", number, name.c_str(), detail.c_str());
    failures_ += ok ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  const Run& run_;
  int failures_ = 0;
};

// Largest error over the rows; count is the number of rows seen.
struct Worst {
  double err = 0.0;
  int count = 0;

  void add(double e) {
    err = std::isnan(e) ? HUGE_VAL : std::max(err, e);
    ++count;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool has_prefix(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <fracvar> <work dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path dir = argv[2];
  std::filesystem::create_directories(dir);

  const Run first = run_all(cli, dir, "run1");
  const Run second = run_all(cli, dir, "run2");
  Gate g(first);
  using oracle::ld;

  {
    Worst id, quad, oracle_gap;
    for (const auto& r : g.rows("hardy")) {
      if (r.id == "identity") {
        id.add(rel_err(r.lhs, r.rhs));
        oracle_gap.add(rel_err(r.rhs, static_cast<double>(4 * oracle::mu(1, r.alpha) / (r.alpha * (1 - r.alpha)))));
      } else if (r.id == "hardy_integral") {
        quad.add(rel_err(r.lhs, r.rhs));
        oracle_gap.add(rel_err(r.rhs, 2.0 / (1.0 - r.alpha)));
      }
    }
    const double t = g.seconds("hardy");
    g.report(1, "Hardy optimality",
             id.count == 9 && quad.count == 9 && id.err <= 1e-14 && quad.err <= 1e-8 && oracle_gap.err <= 1e-13 &&
                 t < 5.0,
             fmt("identity rel %.3g (<= 1e-14), quadrature rel %.3g (<= 1e-8), ", id.err, quad.err) +
                 fmt("rhs vs oracle %.3g, %.2f s", oracle_gap.err, t));
  }

  {
    Worst n1, normal, tangential, oracle_gap;
    for (const auto& r : g.rows("halfspace")) {
      if (has_prefix(r.id, "n1_d=")) {
        n1.add(rel_err(r.lhs, r.rhs));
        const double d = std::stod(r.id.substr(5));
        oracle_gap.add(rel_err(r.rhs, static_cast<double>(oracle::mu(1, r.alpha) / r.alpha * std::pow(d, -r.alpha))));
      } else if (r.id.find("normal") != std::string::npos) {
        normal.add(rel_err(r.lhs, r.rhs));
      } else if (r.id.find("tangential") != std::string::npos) {
        tangential.add(std::fabs(r.lhs));
      }
    }
    const double t = g.seconds("halfspace");
    g.report(2, "half-space gradient",
             n1.count == 9 && normal.count == 3 && tangential.count == 3 && n1.err <= 1e-6 && normal.err <= 1e-4 &&
                 tangential.err <= 1e-8 && oracle_gap.err <= 1e-13 && t < 60.0,
             fmt("n=1 rel %.3g (<= 1e-6), n=2 rel %.3g (<= 1e-4), ", n1.err, normal.err) +
                 fmt("tangential %.3g (<= 1e-8), %.2f s", tangential.err, t));
  }

  {
    Worst quad, inverse;
    for (const auto& r : g.rows("gamma-radial")) {
      if (r.id == "n=3_inverse_alpha") {
        inverse.add(rel_err(r.lhs, 1.0 / r.alpha));
        continue;
      }
      const int n = r.n;
      const ld a = r.alpha;
      const ld closed = std::tgamma(a / 2) * std::tgamma((n - 1) / 2.0L) / (2 * std::tgamma((n + a - 1) / 2));
      quad.add(std::max(rel_err(r.lhs, static_cast<double>(closed)), rel_err(r.rhs, static_cast<double>(closed))));
    }
    const double t = g.seconds("gamma-radial");
    g.report(3, "Gamma radial integral",
             quad.count == 12 && inverse.count == 3 && quad.err <= 1e-8 && inverse.err <= 1e-12 && t < 5.0,
             fmt("quadrature rel %.3g (<= 1e-8), n=3 vs 1/alpha %.3g (<= 1e-12), %.2f s", quad.err, inverse.err, t));
  }

  {
    Worst n1, n2;
    for (const auto& r : g.rows("ibp")) (r.n == 1 ? n1 : n2).add(rel_err(r.lhs, r.rhs));
    const double t = g.seconds("ibp");
    g.report(4, "integration by parts", n1.count >= 6 && n2.count >= 1 && n1.err <= 1e-6 && n2.err <= 1e-4 && t < 120.0,
             fmt("n=1 rel %.3g (<= 1e-6) over %g cases, ", n1.err, n1.count) +
                 fmt("n=2 rel %.3g (<= 1e-4) over %g cases, %.2f s", n2.err, n2.count, t));
  }

  {
    Worst pair, slope;
    std::map<double, int> pairs_per_alpha;
    for (const auto& r : g.rows("chain")) {
      if (has_prefix(r.id, "pair_")) {
        pair.add(std::fabs(r.lhs - r.rhs));
        ++pairs_per_alpha[r.alpha];
      } else if (r.id == "log_slope") {
        slope.add(rel_err(r.lhs, static_cast<double>(std::fabs(oracle::mu(1, -r.alpha)))));
      }
    }
    bool enough = pairs_per_alpha.size() >= 3;
    for (const auto& [a, c] : pairs_per_alpha) enough = enough && c >= 3;
    const double t = g.seconds("chain");
    g.report(5, "chain-rule failure", enough && slope.count >= 3 && pair.err <= 1e-4 && slope.err <= 0.02 && t < 60.0,
             fmt("pairing abs %.3g (<= 1e-4), slope rel %.3g (<= 0.02), %.2f s", pair.err, slope.err, t));
  }

  {
    Worst gg;
    std::map<double, int> per_alpha;
    for (const auto& r : g.rows("gauss-green")) {
      gg.add(rel_err(r.lhs, r.rhs));
      if (r.id != "zero") ++per_alpha[r.alpha];
    }
    bool enough = !per_alpha.empty();
    for (const auto& [a, c] : per_alpha) enough = enough && c >= 5;
    const double t = g.seconds("gauss-green");
    g.report(6, "Gauss-Green on half-spaces", enough && gg.err <= 1e-4 && t < 60.0,
             fmt("rel %.3g (<= 1e-4) over %g cases, %.2f s", gg.err, gg.count, t));
  }

  {
    Worst lb;
    std::map<double, int> per_alpha;
    for (const auto& r : g.rows("leibniz")) {
      lb.add(std::fabs(r.lhs - r.rhs));
      ++per_alpha[r.alpha];
    }
    bool enough = !per_alpha.empty();
    for (const auto& [a, c] : per_alpha) enough = enough && c >= 10;
    const double t = g.seconds("leibniz");
    g.report(7, "Leibniz rule", enough && lb.err <= 1e-6 && t < 60.0,
             fmt("abs %.3g (<= 1e-6) over %g points, %.2f s", lb.err, lb.count, t));
  }

  {
    Worst sp, vs_oracle;
    std::map<double, int> per_alpha;
    for (const auto& r : g.rows("spectral")) {
      sp.add(rel_err(r.lhs, r.rhs));
      const double x = std::stod(r.id.substr(2));
      vs_oracle.add(rel_err(r.lhs, static_cast<double>(oracle::spectral_gaussian(r.alpha, x, 0.2L, 1.0L, 1.0L))));
      ++per_alpha[r.alpha];
    }
    bool enough = !per_alpha.empty();
    for (const auto& [a, c] : per_alpha) enough = enough && c >= 10;
    g.report(8, "spectral cross-oracle", enough && sp.err <= 1e-7 && vs_oracle.err <= 1e-7,
             fmt("rel %.3g (<= 1e-7), against the independent transform %.3g, %.2f s", sp.err, vs_oracle.err,
                 g.seconds("spectral")));
  }

  {
    double largest = -HUGE_VAL;
    Worst tail;
    std::map<double, int> per_alpha;
    for (const auto& r : g.rows("rigidity")) {
      if (has_prefix(r.id, "x=")) {
        largest = std::max(largest, r.lhs);
        ++per_alpha[r.alpha];
      } else if (r.id == "tail_exponent") {
        tail.add(rel_err(r.lhs, r.n + r.alpha));
      }
    }
    bool enough = !per_alpha.empty();
    for (const auto& [a, c] : per_alpha) enough = enough && c >= 20;
    g.report(9, "rigidity sign", enough && largest < 0.0 && tail.count == static_cast<int>(per_alpha.size()) &&
                                     tail.err <= 0.15,
             fmt("largest sampled value %.3g (< 0), tail exponent rel %.3g (<= 0.15)", largest, tail.err));
  }

  {
    double worst = HUGE_VAL;
    int count = 0;
    for (const char* s : {"hardy-half", "weighted", "gagliardo"})
      for (const auto& r : g.rows(s)) {
        worst = std::min(worst, r.rhs - r.lhs);
        ++count;
      }
    g.report(10, "inequality margins", count >= 3 && worst >= -1e-6,
             fmt("smallest margin %.3g (>= -1e-6) over %g cases", worst, count));
  }

  g.report(11, "determinism",
           first.status == 0 && second.status == 0 && !first.csv.empty() && first.csv == second.csv,
           fmt("exit codes %g and %g, ", first.status, second.status) +
               fmt("%g and %g bytes", static_cast<double>(first.csv.size()), static_cast<double>(second.csv.size())));

  std::printf("%d failing\n", g.failures());
  return g.failures() == 0 ? 0 : 1;
}
