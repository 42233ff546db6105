#include "fracvar/report.hpp"

#include <cmath>
#include <cstdio>

namespace fracvar {

CaseResult make_case(const std::string& suite, const std::string& id, double alpha, int n, double lhs, double rhs,
                     double tol, Compare mode) {
  CaseResult c;
  c.suite = suite;
  c.case_id = id;
  c.alpha = alpha;
  c.n = n;
  c.lhs = lhs;
  c.rhs = rhs;
  c.tol = tol;
  const bool finite = std::isfinite(lhs) && std::isfinite(rhs);
  switch (mode) {
    case Compare::relative:
    case Compare::absolute: {
      c.abs_err = std::fabs(lhs - rhs);
      c.rel_err = std::fabs(rhs) > 0.0 ? c.abs_err / std::fabs(rhs) : c.abs_err;
      const bool use_abs = mode == Compare::absolute || std::fabs(rhs) <= 1e-12;
      c.pass = finite && (use_abs ? c.abs_err <= tol : c.rel_err <= tol);
      break;
    }
    case Compare::margin:
      c.abs_err = rhs - lhs;
      c.rel_err = std::fabs(rhs) > 0.0 ? c.abs_err / std::fabs(rhs) : c.abs_err;
      c.pass = finite && c.abs_err >= -tol;
      break;
    case Compare::strict_less:
      c.abs_err = rhs - lhs;
      c.rel_err = std::fabs(rhs) > 0.0 ? c.abs_err / std::fabs(rhs) : c.abs_err;
      c.pass = finite && lhs < rhs;
      break;
  }
  return c;
}

CaseResult failed_case(const std::string& suite, const std::string& id, double alpha, int n, double tol,
                       const std::string& message, bool budget) {
  CaseResult c;
  c.suite = suite;
  c.case_id = id;
  c.alpha = alpha;
  c.n = n;
  c.lhs = c.rhs = c.abs_err = c.rel_err = std::nan("");
  c.tol = tol;
  c.pass = false;
  c.budget_exhausted = budget;
  c.error = message;
  return c;
}

bool SuiteReport::passed() const { return failures() == 0; }

bool SuiteReport::budget_exhausted() const {
  for (const auto& c : cases)
    if (c.budget_exhausted) return true;
  return false;
}

int SuiteReport::failures() const {
  int k = 0;
  for (const auto& c : cases) k += c.pass ? 0 : 1;
  return k;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_header(std::ostream& os) { os << "suite,case_id,alpha,n,lhs,rhs,abs_err,rel_err,tol,pass\n"; }

void write_csv(std::ostream& os, const SuiteReport& report) {
  for (const auto& c : report.cases) {
    os << c.suite << ',' << c.case_id << ',' << format_number(c.alpha) << ',' << c.n << ',' << format_number(c.lhs)
       << ',' << format_number(c.rhs) << ',' << format_number(c.abs_err) << ',' << format_number(c.rel_err) << ','
       << format_number(c.tol) << ',' << (c.pass ? "true" : "false") << '\n';
  }
}

}  // namespace fracvar
