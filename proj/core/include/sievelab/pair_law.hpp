#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "sievelab/rng.hpp"

namespace sievelab {

/// One draw of the renewal pair: xi > 0 is the inter-arrival time, eta >= 0
/// the mark attached to the arrival.
struct pair_draw {
  double xi;
  double eta;
};

struct exp_pareto_params {
  double rate, beta, xm;  // xi ~ Exp(rate), eta ~ Pareto(beta, xm)
};
struct pareto_pareto_params {
  double alpha, beta, xm;  // xi ~ Pareto(alpha, xm), alpha in (1,2)
};

class pair_law;

struct common_shock_params {
  std::shared_ptr<const pair_law> base;
  double scale;  // eta replaced by eta + scale*xi
};

using pair_law_params =
    std::variant<exp_pareto_params, pareto_pareto_params, common_shock_params>;

/// Joint law of (xi, eta); dependence allowed via the common-shock wrapper.
class pair_law {
 public:
  static pair_law independent_exp_pareto(double rate, double beta, double xm);
  static pair_law independent_pareto_pareto(double alpha, double beta,
                                            double xm);
  static pair_law common_shock(pair_law base, double scale);

  pair_draw sample(philox4x32& rng) const;

  double mean_xi() const;
  bool xi_has_finite_second_moment() const;

  /// True when the analytic mark tail below is exact (false under a
  /// nonzero common shock, which perturbs the tail).
  bool has_analytic_eta_tail() const;
  /// P{eta > x}
  double eta_tail(double x) const;
  /// int_0^t P{eta > y} dy, closed form
  double eta_tail_integral(double t) const;

  const pair_law_params& params() const { return params_; }
  std::string describe() const;

 private:
  explicit pair_law(pair_law_params p) : params_(std::move(p)) {}
  pair_law_params params_;
};

}  // namespace sievelab
