#pragma once

#include <functional>
#include <vector>

namespace sievelab {

/// Adaptive Gauss-Kronrod integration of f over [a,b] to absolute
/// tolerance `abs_tol`. `breaks` lists interior points where the integrand
/// changes character (the integral is split there before adapting).
/// Throws std::runtime_error if the error estimate does not meet the
/// tolerance; never falls back silently.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10,
                 const std::vector<double>& breaks = {});

/// As above with b = +infinity.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol = 1e-10,
                        const std::vector<double>& breaks = {});

}  // namespace sievelab
