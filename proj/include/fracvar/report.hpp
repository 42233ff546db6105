#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracvar {

/// How a case turns its two sides into a pass flag.
enum class Compare {
  relative,     ///< |lhs - rhs| / |rhs| <= tol (absolute error when |rhs| <= 1e-12)
  absolute,     ///< |lhs - rhs| <= tol
  margin,       ///< lhs <= rhs + tol; abs_err holds the margin rhs - lhs
  strict_less,  ///< lhs < rhs; abs_err holds rhs - lhs
};

struct CaseResult {
  std::string suite;
  std::string case_id;
  double alpha = 0.0;
  int n = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool budget_exhausted = false;
  std::string error;  ///< message when the case threw
};

CaseResult make_case(const std::string& suite, const std::string& id, double alpha, int n, double lhs, double rhs,
                     double tol, Compare mode);
/// Failed case carrying an exception message.
CaseResult failed_case(const std::string& suite, const std::string& id, double alpha, int n, double tol,
                       const std::string& message, bool budget = false);

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  double wall_seconds = 0.0;

  bool passed() const;
  bool budget_exhausted() const;
  int failures() const;
};

/// Shortest round-trip representation ("%.17g"); nan and inf spelled out.
std::string format_number(double v);

void write_csv_header(std::ostream& os);
void write_csv(std::ostream& os, const SuiteReport& report);

}  // namespace fracvar
