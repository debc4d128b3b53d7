#include "sievelab/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sievelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

stable_spec::stable_spec(double a) : alpha(a) {
  if (!(a > 1.0) || !(a < 2.0))
    throw std::invalid_argument("stable_spec: alpha must lie in (1,2)");
}

double stable_spec::sigma() const {
  const double g = std::tgamma(1.0 - alpha);     // negative on (1,2)
  const double c = std::cos(kPi * alpha / 2.0);  // negative on (1,2)
  return std::pow(g * c, 1.0 / alpha);
}

double sample_stable_z1(const stable_spec& spec, philox4x32& rng) {
  const double alpha = spec.alpha;
  // CMS with beta' = -1 in the one-parametrization:
  //   X = S sin(alpha(U+B)) / cos(U)^{1/alpha}
  //         * (cos(U - alpha(U+B)) / E)^{(1-alpha)/alpha}
  const double tan_half = std::tan(kPi * alpha / 2.0);
  const double B = std::atan(-tan_half) / alpha;
  const double S = std::pow(1.0 + tan_half * tan_half, 0.5 / alpha);
  const double U = kPi * (uniform_open01(rng) - 0.5);
  const double E = exponential(rng);
  const double x = S * std::sin(alpha * (U + B)) /
                   std::pow(std::cos(U), 1.0 / alpha) *
                   std::pow(std::cos(U - alpha * (U + B)) / E,
                            (1.0 - alpha) / alpha);
  return spec.sigma() * x;
}

std::complex<double> stable_cf(double alpha, double u) {
  if (u == 0.0) return {1.0, 0.0};
  const double g = std::tgamma(1.0 - alpha);
  const double mag = std::pow(std::abs(u), alpha) * g;
  const double sgn = u > 0.0 ? 1.0 : -1.0;
  const std::complex<double> expo(-mag * std::cos(kPi * alpha / 2.0),
                                  -mag * std::sin(kPi * alpha / 2.0) * sgn);
  return std::exp(expo);
}

double limit_integral_scale(double alpha, double beta) {
  if (!(alpha > 1.0) || !(alpha <= 2.0))
    throw std::invalid_argument("limit integral: alpha must lie in (1,2]");
  if (!(beta >= 0.0) || !(beta < 1.0 / alpha))
    throw std::invalid_argument(
        "limit integral: requires beta in [0, 1/alpha); the integral is "
        "not defined otherwise");
  return std::pow(1.0 - alpha * beta, -1.0 / alpha);
}

double sample_limit_integral(double alpha, double beta, philox4x32& rng) {
  const double scale = limit_integral_scale(alpha, beta);
  if (alpha == 2.0) {
    // Brownian case: Z(1) standard normal, sampled by Box-Muller
    const double u1 = uniform_open01(rng), u2 = uniform_open01(rng);
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    return scale * z;
  }
  return scale * sample_stable_z1(stable_spec(alpha), rng);
}

}  // namespace sievelab
