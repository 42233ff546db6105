#include "fracvar/closed_forms.hpp"

#include <cmath>
#include <vector>

#include "fracvar/constants.hpp"
#include "fracvar/errors.hpp"

namespace fracvar::closed {

namespace {

void check_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(std::string(what) + ": alpha must lie in (0, 1)");
}

double off_plane(double alpha, const HalfSpace& h, const Point& x, const char* what) {
  check_alpha(alpha, what);
  if (x.dim() != h.nu.dim()) throw DomainError(std::string(what) + ": dimension mismatch");
  const double d = h.signed_distance(x);
  if (d == 0.0) throw SingularPointError(std::string(what) + ": point lies on the hyperplane");
  return constants::mu(1, alpha) / alpha * std::pow(std::fabs(d), -alpha);
}

}  // namespace

Point half_space_gradient(double alpha, const HalfSpace& h, const Point& x) {
  return off_plane(alpha, h, x, "half_space_gradient") * h.nu;
}

double riesz_hyperplane(double alpha, const HalfSpace& h, const Point& x) {
  return off_plane(alpha, h, x, "riesz_hyperplane");
}

double gamma_radial_integral(int n, double alpha) {
  if (n < 2) throw DomainError("gamma_radial_integral: n must be at least 2");
  check_alpha(alpha, "gamma_radial_integral");
  using constants::gamma;
  return gamma(0.5 * alpha) * gamma(0.5 * (n - 1)) / (2.0 * gamma(0.5 * (n + alpha - 1.0)));
}

IntervalIdentities interval_identities(double alpha) {
  check_alpha(alpha, "interval_identities");
  const double mu = constants::mu(1, alpha);
  return {2.0 / (1.0 - alpha), 4.0 * mu / (alpha * (1.0 - alpha)), 2.0 * mu / alpha};
}

double weight_w(int n, double alpha, double t, double r, const quad::QuadSpec& spec) {
  check_alpha(alpha, "weight_w");
  if (n < 1 || n > 8) throw DomainError("weight_w: dimension outside [1, 8]");
  if (!(t >= 0.0) || !(r > 0.0)) throw DomainError("weight_w: need t >= 0 and r > 0");
  const double c = constants::mu(1, alpha) / alpha;
  if (n == 1) {
    if (t == r) throw NonIntegrableError("weight_w: t = r is a pole of the one-dimensional weight");
    return 0.5 * c * (std::pow(std::fabs(t - r), -alpha) + std::pow(t + r, -alpha));
  }
  const double e = 0.5 * (n - 3);
  const quad::Fn1 g = [&](double s) { return std::pow(1.0 - s * s, e) * std::pow(std::fabs(s * t - r), -alpha); };
  std::vector<quad::Singularity> sing;
  if (e != 0.0) {
    sing.push_back({-1.0, e});
    sing.push_back({1.0, e});
  }
  if (t > r) sing.push_back({r / t, -alpha});
  if (t == r) sing.push_back({1.0, e - alpha});
  const double integral = quad::integrate_1d(g, -1.0, 1.0, sing, spec).value;
  const double ratio = (n - 1) * constants::ball_volume(n - 1) / (n * constants::ball_volume(n));
  return ratio * c * integral;
}

double f_alpha_closed(double alpha, double x) {
  check_alpha(alpha, "f_alpha_closed");
  if (x == 0.0 || x == 1.0) throw SingularPointError("f_alpha_closed: singular at 0 and 1");
  const double e = alpha - 1.0;
  const double a = std::pow(std::fabs(x), e) * (x > 0.0 ? 1.0 : -1.0);
  const double b = std::pow(std::fabs(x - 1.0), e) * (x > 1.0 ? 1.0 : -1.0);
  return constants::mu(1, -alpha) * (a - b);
}

}  // namespace fracvar::closed
