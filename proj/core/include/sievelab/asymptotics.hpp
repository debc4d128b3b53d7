#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sievelab/wlaw.hpp"

namespace sievelab {

/// Convergence regime of the number of empty boxes, keyed by the behaviour
/// of the law of W near 0 and 1.
enum class regime_kind {
  finite_finite,   // E|log W| and E|log(1-W)| both finite
  mu_inf_nu_fin,   // E|log W| = inf, E|log(1-W)| < inf  (L_n -> 0)
  case_a,          // mu < inf, nu = inf, Var(log W) < inf         -> normal
  case_b1,         // sigma^2 = inf, truncated-2nd-moment slowly varying,
                   // right tail negligible                         -> normal
  case_b2,         // as b1 but right tail slowly varying dominant  -> normal
  case_c1,         // |log W| tail index alpha in (1,2), right tail
                   // negligible                                    -> normal
  case_c2,         // as c1 with right tail index beta dominant     -> stable
  case_b3_open,    // boundary of b1/b2, no limit established
  case_c3_open,    // boundary of c1/c2, no limit established
  comparable,      // mu = nu = inf, comparable tails -> geometric
  asym_inf_zero,   // mu = nu = inf, tail ratio degenerate (0 or inf)
  lattice          // |log W| lattice: outside the non-lattice theory
};

struct regime_case {
  regime_kind kind;
  double comparable_c = 0.0;  // tail ratio c for `comparable`
  double alpha = 0.0;         // |log W| tail index (2 in the b cases)
  double beta = 0.0;          // |log(1-W)| tail index for b2/c2
};

const char* regime_name(regime_kind k);

regime_case classify_regime(const w_law& law);

/// psi(s) = E e^{-s(1-W)}
double psi(const w_law& law, double s);

/// phi(y) = psi(e^y), evaluated in log scale so large horizons never
/// overflow. phi(-inf) = 1.
double phi(const w_law& law, double y);

/// k(t) = int_0^t phi(y) dy
double k_of(const w_law& law, double t);

/// m(x) = int_0^x P{|log(1-W)| > y} dy; |m - k| is bounded so either may
/// center the empty-box count.
double m_of(const w_law& law, double x);

/// b_n = mu^{-1} int_[1,n] psi(z)/z dz, computed as mu^{-1} k(log n).
double centering_b(const w_law& law, double log_n);

/// b'_n = mu^{-1} m(log n), the integrated-right-tail variant.
double centering_b_prime(const w_law& law, double log_n);

/// c(x) solving x lt(c(x)) / c(x)^alpha = 1, where lt is the slowly varying
/// factor of the |log W| tail (cases b and c; alpha = 2 in case b).
double norming_c(const w_law& law, double x);

/// Case-appropriate normalization a_n. Throws for the unresolved boundary
/// cases (b3)/(c3).
double scaling_a(const w_law& law, double log_n, const regime_case& rc);

/// phi on a uniform grid with monotone cubic interpolation; built once,
/// then safe for concurrent read-only use inside shot-noise sums.
class phi_table {
 public:
  phi_table(const w_law& law, double y_max, double step = 1.0 / 16);
  double operator()(double y) const;
  double y_max() const { return y_max_; }

 private:
  double y_max_, step_;
  std::vector<double> value_, slope_;
};

}  // namespace sievelab
