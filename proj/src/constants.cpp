#include "fracvar/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar::constants {

namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's g = 607/128 Lanczos coefficients (15 terms).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

// Gamma for x >= 0.5.
double lanczos_gamma(double x) {
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // Split the power so large arguments do not overflow before exp(-t).
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * sum;
}

void check_dim(int n, int max_n, const char* what) {
  if (n < 1 || n > max_n)
    throw DomainError(std::string(what) + ": dimension " + std::to_string(n) + " outside [1, " +
                      std::to_string(max_n) + "]");
}

}  // namespace

double sin_pi(double x) {
  // r in [-1, 1], sin(pi x) = sin(pi r); fmod is exact.
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(kPi * r);
}

double gamma(double x) {
  if (!std::isfinite(x) || std::fabs(x) > kGammaRange)
    throw DomainError("gamma: argument outside [-64, 64]");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
  if (x == std::floor(x) && x <= 23.0) {
    // Exact factorials.
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  if (x < 0.5) return kPi / (sin_pi(x) * lanczos_gamma(1.0 - x));
  return lanczos_gamma(x);
}

double mu(int n, double alpha) {
  check_dim(n, 8, "mu");
  if (!(alpha > -1.0 && alpha < 1.0)) throw DomainError("mu: alpha must lie in (-1, 1)");
  return std::pow(2.0, alpha) * std::pow(kPi, -0.5 * n) * gamma(0.5 * (n + alpha + 1.0)) /
         gamma(0.5 * (1.0 - alpha));
}

double nu(int n, double beta) {
  check_dim(n, 8, "nu");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("nu: beta must lie in (0, 1)");
  return std::pow(2.0, beta) * std::pow(kPi, -0.5 * n) * gamma(0.5 * (n + beta)) / gamma(-0.5 * beta);
}

double riesz_constant(int n, double s) {
  check_dim(n, 8, "riesz_constant");
  if (!(s > 0.0 && s < n)) throw DomainError("riesz_constant: order must lie in (0, n)");
  return std::pow(2.0, -s) * std::pow(kPi, -0.5 * n) * gamma(0.5 * (n - s)) / gamma(0.5 * s);
}

double ball_volume(int n) {
  check_dim(n, 8, "ball_volume");
  return std::pow(kPi, 0.5 * n) / gamma(0.5 * n + 1.0);
}

double sphere_area(int n) { return n * ball_volume(n); }

HardyConstants hardy_constants(int n, double alpha) {
  check_dim(n, 8, "hardy_constants");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hardy_constants: alpha must lie in (0, 1)");
  HardyConstants h{};
  h.c_half = 2.0 * mu(1, alpha) / alpha;
  h.gamma_spector = std::pow(2.0, alpha) * gamma(0.5 * alpha) * gamma(0.5 * (n + 1.0)) /
                    (std::pow(kPi, 1.0 - 0.5 * alpha) * gamma(0.5 * (n - alpha)));
  h.c_max = h.c_half > h.gamma_spector ? h.c_half : h.gamma_spector;
  return h;
}

}  // namespace fracvar::constants
