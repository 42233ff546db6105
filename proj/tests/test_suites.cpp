#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "fracvar/errors.hpp"
#include "fracvar/parallel.hpp"
#include "fracvar/report.hpp"
#include "fracvar/suites.hpp"

using namespace fracvar;

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  for (double v : {1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("comparison modes") {
  const auto r = make_case("s", "c", 0.5, 1, 1.0 + 1e-9, 1.0, 1e-8, Compare::relative);
  CHECK(r.pass);
  CHECK(r.abs_err == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(!make_case("s", "c", 0.5, 1, 1.1, 1.0, 1e-8, Compare::relative).pass);
  CHECK(make_case("s", "c", 0.5, 1, 1e-13, 0.0, 1e-12, Compare::relative).pass);
  CHECK(make_case("s", "c", 0.5, 1, 0.3, 0.30001, 1e-4, Compare::absolute).pass);
  const auto m = make_case("s", "c", 0.5, 1, 1.0, 2.0, 1e-6, Compare::margin);
  CHECK(m.pass);
  CHECK(m.abs_err == 1.0);
  CHECK(make_case("s", "c", 0.5, 1, 2.0 + 1e-7, 2.0, 1e-6, Compare::margin).pass);
  CHECK(!make_case("s", "c", 0.5, 1, 2.1, 2.0, 1e-6, Compare::margin).pass);
  CHECK(make_case("s", "c", 0.5, 1, -1e-3, 0.0, 0.0, Compare::strict_less).pass);
  CHECK(!make_case("s", "c", 0.5, 1, 0.0, 0.0, 0.0, Compare::strict_less).pass);
  CHECK(!make_case("s", "c", 0.5, 1, std::nan(""), 1.0, 1.0, Compare::absolute).pass);
  const auto f = failed_case("s", "c", 0.5, 1, 1e-6, "boom", true);
  CHECK(!f.pass);
  CHECK(f.budget_exhausted);
}

TEST_CASE("csv layout") {
  SuiteReport r;
  r.suite = "demo";
  r.cases.push_back(make_case("demo", "a=1", 0.25, 2, 1.5, 1.5, 1e-6, Compare::relative));
  std::ostringstream os;
  write_csv_header(os);
  write_csv(os, r);
  CHECK(os.str() ==
        "suite,case_id,alpha,n,lhs,rhs,abs_err,rel_err,tol,pass\n"
        "demo,a=1,0.25,2,1.5,1.5,0,0,9.9999999999999995e-07,true\n");
  CHECK(r.passed());
  CHECK(r.failures() == 0);
}

TEST_CASE("configuration") {
  const auto c = suites::config_from_json(nlohmann::json::parse(R"({"alpha":[0.3,0.6],"quad":{"rel_tol":1e-9}})"));
  CHECK(c.alphas == std::vector<double>{0.3, 0.6});
  REQUIRE(c.quad);
  CHECK(c.quad->rel_tol == 1e-9);
  CHECK(suites::config_from_json(nlohmann::json::parse(R"({"alpha":0.4})")).alphas == std::vector<double>{0.4});
  CHECK_THROWS_AS(suites::config_from_json(nlohmann::json::parse(R"({"colour":1})")), ParseError);
  CHECK_THROWS_AS(suites::config_from_json(nlohmann::json::parse("[1]")), ParseError);
}

TEST_CASE("suite registry") {
  const auto& names = suites::suite_names();
  for (const char* n : {"ibp", "halfspace", "hardy", "chain", "gauss-green", "hardy-half", "weighted", "rigidity",
                        "leibniz", "varbound"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(suites::run_suite("nope"), DomainError);
}

TEST_CASE("cheap suites pass on their default grids") {
  for (const char* n : {"hardy", "gamma-radial", "halfspace", "spectral", "leibniz", "rigidity"}) {
    const auto r = suites::run_suite(n);
    CHECK_MESSAGE(r.passed(), n);
    CHECK(!r.cases.empty());
  }
  const auto h = suites::run_suite("hardy");
  CHECK(h.cases.size() == 18);
}

TEST_CASE("alpha overrides") {
  suites::SuiteConfig c;
  c.alphas = {0.4};
  const auto r = suites::run_suite("halfspace", c);
  for (const auto& k : r.cases) CHECK(k.alpha == 0.4);
  CHECK(r.passed());
}

TEST_CASE("suites reject bad input as failed cases") {
  const auto r = suites::suite_rigidity(1.5, 1.0, 5);
  CHECK(!r.passed());
  CHECK(!r.cases.empty());
  CHECK(!r.cases.front().error.empty());
  const auto z = suites::suite_gauss_green(0.5, fields::constant(1, 0.0), HalfSpace(Point{1.0}, Point{0.0}), {}, "z");
  CHECK(z.passed());
}

TEST_CASE("exit status") {
  SuiteReport ok, bad, budget;
  ok.cases.push_back(make_case("a", "b", 0.5, 1, 1.0, 1.0, 1e-6, Compare::relative));
  bad.cases.push_back(make_case("a", "b", 0.5, 1, 2.0, 1.0, 1e-6, Compare::relative));
  budget.cases.push_back(failed_case("a", "b", 0.5, 1, 1e-6, "budget", true));
  CHECK(suites::exit_status({ok}) == 0);
  CHECK(suites::exit_status({ok, bad}) == 1);
  CHECK(suites::exit_status({bad, budget}) == 3);
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<std::atomic<int>> seen(500);
  parallel_for(seen.size(), [&](std::size_t i) { seen[i]++; });
  for (const auto& s : seen) CHECK(s.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw DomainError("seven");
                  }),
                  DomainError);
  setenv("FRACVAR_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("FRACVAR_THREADS", "zero", 1);
  CHECK(worker_count() >= 1);
  unsetenv("FRACVAR_THREADS");
}
