#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracvar/field.hpp"
#include "fracvar/quadrature.hpp"
#include "fracvar/report.hpp"

namespace fracvar::suites {

struct SuiteConfig {
  /// Replaces every suite's default alpha grid when non-empty.
  std::vector<double> alphas;
  /// Replaces the default operator quadrature policy.
  std::optional<quad::QuadSpec> quad;
};

/// Keys: "alpha" (number or array) and "quad" (see quad_spec_from_json).
SuiteConfig config_from_json(const nlohmann::json& j);

/// Suite names in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Runs one suite on its default grid. Throws DomainError for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config = {});
std::vector<SuiteReport> run_all(const SuiteConfig& config = {});

/// 3 if any case exhausted its quadrature budget, 1 if any case failed, 0 otherwise.
int exit_status(const std::vector<SuiteReport>& reports);

// Building blocks; every function returns the cases for one configuration
// and turns thrown errors into failed cases.

/// int f div^a phi dx against -int phi . grad^a f dx.
SuiteReport suite_ibp(double alpha, const ScalarField& f, const VectorField& phi, const quad::QuadSpec& spec,
                      double tol, const std::string& case_id);

/// Definitional gradient of half-space indicators against the closed form;
/// n = 1 at the given distances plus a tilted n = 2 configuration at distance 1.
SuiteReport suite_halfspace(double alpha, const std::vector<double>& distances);

/// Hardy constant identity and quadrature of int_{-1}^{1} |x|^{-a} dx.
SuiteReport suite_hardy_optimal(const std::vector<double>& alpha_grid);

/// Atomic pairing of f_alpha with test bumps and the logarithmic growth of
/// int_eps^{1/2} |f_alpha(x)| / x^a dx. An empty eps_list selects
/// eps_k = 0.005^{1/(1-a)} 10^{-k}, k = 0..4.
SuiteReport suite_chain_failure(double alpha, const std::vector<double>& eps_list);

/// (mu_{1,a}/a) int f / |(x - x0).nu|^a dx against -nu . int_{H+} grad^a f dx, n = 1.
SuiteReport suite_gauss_green(double alpha, const ScalarField& f, const HalfSpace& h, const quad::QuadSpec& spec,
                              const std::string& case_id);

/// (mu_{1,a}/a) int f / |(x - x0).nu|^a dx <= int_{H+} |grad^a f| dx, n = 1.
SuiteReport suite_hardy_halfspace(double alpha, const ScalarField& f, const HalfSpace& h,
                                  const quad::QuadSpec& spec, const std::string& case_id);

/// int f(x) w(|x - x0|, r) dx <= int_{|x - x0| >= r} |grad^a f| dx, n = 1.
SuiteReport suite_weighted_hardy(double alpha, const ScalarField& f, double x0, double r,
                                 const quad::QuadSpec& spec, const std::string& case_id);

/// Sign of grad^a of a bump supported in (-L, L) at sample_count points of
/// [L, 4L], and the decay exponent fitted at 8L, 16L, 32L, 64L.
SuiteReport suite_rigidity(double alpha, double L, int sample_count);

/// grad^a(fg) = g grad^a f + f grad^a g + grad^a_NL(f, g) at the given points.
SuiteReport suite_leibniz(double alpha, const ScalarField& f, const ScalarField& g, const std::vector<double>& points,
                          const quad::QuadSpec& spec);

/// Lower bound for |D^a chi_{(-1,1)}|(R) from the default family.
SuiteReport suite_variation_bound(double alpha);

/// int |grad^a f| dx <= mu_{1,a} [f]_{W^{a,1}}.
SuiteReport suite_gagliardo_bound(double alpha, const ScalarField& f, const quad::QuadSpec& spec);

/// Definitional gradient of a 1-D gaussian against the Fourier-side formula.
SuiteReport suite_spectral(double alpha, const ScalarField& gaussian, const std::vector<double>& points);

/// Quadrature of the radial Gamma integral against its closed form.
SuiteReport suite_gamma_radial(const std::vector<double>& alpha_grid);

}  // namespace fracvar::suites
