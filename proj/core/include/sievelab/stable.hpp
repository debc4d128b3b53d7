#pragma once

#include <complex>

#include "sievelab/rng.hpp"

namespace sievelab {

/// Spectrally negative alpha-stable spec, alpha in (1,2).
///
/// The target characteristic function is
///   u -> exp{ -|u|^alpha Gamma(1-alpha) (cos(pi alpha/2)
///                                        + i sin(pi alpha/2) sgn u) }.
/// Matching against the standard one-parametrization
///   exp{ -sigma^alpha |u|^alpha (1 - i beta' tan(pi alpha/2) sgn u) }
/// forces beta' = -1 and sigma^alpha = Gamma(1-alpha) cos(pi alpha/2);
/// both Gamma(1-alpha) and cos(pi alpha/2) are negative on (1,2), so the
/// scale is well defined. The law has mean zero.
struct stable_spec {
  double alpha;

  explicit stable_spec(double a);
  double sigma() const;  // (Gamma(1-alpha) cos(pi alpha/2))^(1/alpha)
};

/// One draw of Z(1) via the Chambers-Mallows-Stuck construction with
/// skew -1 and the derived scale.
double sample_stable_z1(const stable_spec& spec, philox4x32& rng);

/// Characteristic function value of Z(1) at u (the analytic target).
std::complex<double> stable_cf(double alpha, double u);

/// One draw of int_{[0,1]} v^{-beta} dZ(v) = (1 - alpha beta)^{-1/alpha} Z(1),
/// beta in [0, 1/alpha). alpha = 2 selects the Brownian case with
/// Z(1) ~ N(0,1).
double sample_limit_integral(double alpha, double beta, philox4x32& rng);

/// Scale factor (1 - alpha beta)^{-1/alpha} applied to Z(1).
double limit_integral_scale(double alpha, double beta);

}  // namespace sievelab
