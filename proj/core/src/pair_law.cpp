#include "sievelab/pair_law.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sievelab {

namespace {

double pareto_tail(double x, double index, double xm) {
  return x <= xm ? 1.0 : std::pow(x / xm, -index);
}

// int_0^t min(1, (y/xm)^{-index}) dy for index in (0,1)
double pareto_tail_integral(double t, double index, double xm) {
  if (t <= xm) return t;
  return xm + std::pow(xm, index) * (std::pow(t, 1.0 - index) -
                                     std::pow(xm, 1.0 - index)) /
                  (1.0 - index);
}

}  // namespace

pair_law pair_law::independent_exp_pareto(double rate, double beta,
                                          double xm) {
  if (!(rate > 0.0))
    throw std::invalid_argument("exp_pareto: rate must be positive");
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("exp_pareto: beta must lie in (0,1)");
  if (!(xm > 0.0))
    throw std::invalid_argument("exp_pareto: xm must be positive");
  return pair_law(exp_pareto_params{rate, beta, xm});
}

pair_law pair_law::independent_pareto_pareto(double alpha, double beta,
                                             double xm) {
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::invalid_argument("pareto_pareto: alpha must lie in (1,2)");
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("pareto_pareto: beta must lie in (0,1)");
  if (!(xm > 0.0))
    throw std::invalid_argument("pareto_pareto: xm must be positive");
  return pair_law(pareto_pareto_params{alpha, beta, xm});
}

pair_law pair_law::common_shock(pair_law base, double scale) {
  if (std::holds_alternative<common_shock_params>(base.params_))
    throw std::invalid_argument("common_shock: cannot nest shocks");
  if (!(scale >= 0.0))
    throw std::invalid_argument("common_shock: scale must be >= 0");
  return pair_law(common_shock_params{
      std::make_shared<const pair_law>(std::move(base)), scale});
}

pair_draw pair_law::sample(philox4x32& rng) const {
  return std::visit(
      [&rng](const auto& lp) -> pair_draw {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, exp_pareto_params>) {
          return {exponential(rng, lp.rate), pareto(rng, lp.beta, lp.xm)};
        } else if constexpr (std::is_same_v<T, pareto_pareto_params>) {
          return {pareto(rng, lp.alpha, lp.xm), pareto(rng, lp.beta, lp.xm)};
        } else {
          static_assert(std::is_same_v<T, common_shock_params>);
          pair_draw d = lp.base->sample(rng);
          d.eta += lp.scale * d.xi;
          return d;
        }
      },
      params_);
}

double pair_law::mean_xi() const {
  return std::visit(
      [](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, exp_pareto_params>)
          return 1.0 / lp.rate;
        else if constexpr (std::is_same_v<T, pareto_pareto_params>)
          return lp.alpha * lp.xm / (lp.alpha - 1.0);
        else
          return lp.base->mean_xi();
      },
      params_);
}

bool pair_law::xi_has_finite_second_moment() const {
  return std::visit(
      [](const auto& lp) -> bool {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, exp_pareto_params>)
          return true;
        else if constexpr (std::is_same_v<T, pareto_pareto_params>)
          return false;  // alpha < 2
        else
          return lp.base->xi_has_finite_second_moment();
      },
      params_);
}

bool pair_law::has_analytic_eta_tail() const {
  return std::visit(
      [](const auto& lp) -> bool {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, common_shock_params>)
          return lp.scale == 0.0 && lp.base->has_analytic_eta_tail();
        else
          return true;
      },
      params_);
}

double pair_law::eta_tail(double x) const {
  return std::visit(
      [x](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, exp_pareto_params>)
          return pareto_tail(x, lp.beta, lp.xm);
        else if constexpr (std::is_same_v<T, pareto_pareto_params>)
          return pareto_tail(x, lp.beta, lp.xm);
        else {
          if (!(lp.scale == 0.0))
            throw std::domain_error(
                "eta tail is not analytic under a nonzero common shock");
          return lp.base->eta_tail(x);
        }
      },
      params_);
}

double pair_law::eta_tail_integral(double t) const {
  return std::visit(
      [t](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, exp_pareto_params>)
          return pareto_tail_integral(t, lp.beta, lp.xm);
        else if constexpr (std::is_same_v<T, pareto_pareto_params>)
          return pareto_tail_integral(t, lp.beta, lp.xm);
        else {
          if (!(lp.scale == 0.0))
            throw std::domain_error(
                "eta tail is not analytic under a nonzero common shock");
          return lp.base->eta_tail_integral(t);
        }
      },
      params_);
}

std::string pair_law::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&os](const auto& lp) {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, exp_pareto_params>)
          os << "exp_pareto(rate=" << lp.rate << ", beta=" << lp.beta
             << ", xm=" << lp.xm << ")";
        else if constexpr (std::is_same_v<T, pareto_pareto_params>)
          os << "pareto_pareto(alpha=" << lp.alpha << ", beta=" << lp.beta
             << ", xm=" << lp.xm << ")";
        else
          os << "common_shock(" << lp.base->describe()
             << ", scale=" << lp.scale << ")";
      },
      params_);
  return os.str();
}

}  // namespace sievelab
