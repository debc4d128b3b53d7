#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "sievelab/rng.hpp"

namespace sievelab {

/// -log(1 - e^{-x}), the involution exchanging |log W| and |log(1-W)|
/// when W = e^{-x}. Monotone decreasing, q(q(x)) = x.
inline double log_complement(double x) {
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  const double e = std::exp(-x);
  if (e >= 1.0) return std::numeric_limits<double>::infinity();
  const double q = -std::log1p(-e);
  // e^{-x} can underflow; keep the value positive so walks stay ordered
  return q > 0.0 ? q : std::numeric_limits<double>::min();
}

/// One sample of W together with the exact complement and |log W|.
/// The three fields are each computed at full precision; `w` alone loses
/// information when W is within one ulp of 0 or 1.
struct w_draw {
  double w;            // in (0,1)
  double one_minus_w;  // exact complement (may round to 1.0 when w ~ 0)
  double abs_log_w;    // |log W|, exact even when w rounds to 1
};

struct uniform01_params {};
struct beta_params {
  double a, b;
};
struct point_mass_params {
  double x;
};
struct right_log_pareto_params {
  double beta, xm;  // |log(1-W)| ~ Pareto(beta, xm), W = 1 - e^{-eta}
};
struct right_log_log_tail_params {
  double c0;  // P{|log(1-W)| > x} = min(1, c0/ln(e+x))
};
struct two_sided_log_pareto_params {
  double p, theta0, theta1, xm;
};

using w_law_params =
    std::variant<uniform01_params, beta_params, point_mass_params,
                 right_log_pareto_params, right_log_log_tail_params,
                 two_sided_log_pareto_params>;

/// A parametric law of W on (0,1) with analytic log-tails and log-moments.
class w_law {
 public:
  static w_law uniform01();
  static w_law beta(double a, double b);
  static w_law point_mass(double x);
  static w_law right_log_pareto(double beta, double xm);
  static w_law right_log_log_tail(double c0);
  static w_law two_sided_log_pareto(double p, double theta0, double theta1,
                                    double xm);

  w_draw draw(philox4x32& rng) const;
  double sample(philox4x32& rng) const { return draw(rng).w; }

  /// P{|log W| > x}
  double log_tail_left(double x) const;
  /// P{|log(1-W)| > x}
  double log_tail_right(double x) const;
  /// int_0^x P{|log W| > y} dy. Computed on the smooth side of each
  /// family (the |log W|-side tail has a log-singular derivative at 0 for
  /// the mark-transformed families).
  double integrated_log_tail_left(double x) const;

  double mu() const;      // E|log W|, +inf when divergent
  double nu() const;      // E|log(1-W)|, +inf when divergent
  double sigma2() const;  // Var(log W), +inf when divergent

  bool is_lattice() const;
  /// True for families with a closed-form thinning kernel
  /// C(i,j) E W^j (1-W)^{i-j} (uniform01, beta, point mass).
  bool has_closed_form_kernel() const;

  const w_law_params& params() const { return params_; }
  std::string name() const;
  std::string describe() const;  // name plus parameter values

 private:
  explicit w_law(w_law_params p) : params_(p) {}
  w_law_params params_;
};

}  // namespace sievelab
