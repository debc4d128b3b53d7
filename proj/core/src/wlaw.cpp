#include "sievelab/wlaw.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "sievelab/quad.hpp"

namespace sievelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pareto_tail(double x, double index, double xm) {
  return x <= xm ? 1.0 : std::pow(x / xm, -index);
}

// P{X < y} for X ~ Pareto(index, xm); continuous, so < and <= agree.
double pareto_cdf(double y, double index, double xm) {
  if (y <= xm) return 0.0;
  if (std::isinf(y)) return 1.0;
  return -std::expm1(-index * std::log(y / xm));
}

double clamp_open01(double w) {
  if (w >= 1.0) return std::nextafter(1.0, 0.0);
  if (w <= 0.0) return std::numeric_limits<double>::min();
  return w;
}

// E[g(X)] for X ~ Pareto(index, xm) by quadrature over the density.
double pareto_expectation(double index, double xm,
                          const std::function<double(double)>& g,
                          const std::vector<double>& breaks = {}) {
  auto f = [&](double y) {
    return g(y) * index * std::pow(xm, index) * std::pow(y, -index - 1.0);
  };
  return integrate_to_inf(f, xm, 1e-12, breaks);
}

// E[q(eta)^k] for eta ~ Pareto(index, xm); q = log_complement decays like
// e^{-y}, so the integrand dies fast.
double pareto_log_complement_moment(double index, double xm, int k) {
  return pareto_expectation(index, xm, [k](double y) {
    return std::pow(log_complement(y), k);
  });
}

// Moments of |log W| for the log-log-tail family, via E X^k = k int x^{k-1} tail.
double loglog_left_moment(const right_log_log_tail_params& lp, int k);

// int_0^t min(1, (y/xm)^{-index}) dy; valid for any positive index.
double pareto_tail_integral_gen(double t, double index, double xm) {
  if (t <= xm) return t;
  if (index == 1.0) return xm + xm * std::log(t / xm);
  return xm + std::pow(xm, index) *
                  (std::pow(t, 1.0 - index) - std::pow(xm, 1.0 - index)) /
                  (1.0 - index);
}

// E[min(q(X), x)] where q = log_complement and X has density `dens` on
// (lo, inf). Equals int_0^x P{q(X) > y} dy because q is a decreasing
// involution; this side is smooth where the y-side has a log singularity.
double expected_min_log_complement(const std::function<double(double)>& dens,
                                   double lo, double x) {
  if (x <= 0.0) return 0.0;
  std::vector<double> breaks{lo + 1.0, lo + 10.0, lo + 100.0};
  const double kink = log_complement(x);  // q(u) = x here
  if (kink > lo) breaks.push_back(kink);
  auto f = [&dens, x](double u) {
    return std::min(log_complement(u), x) * dens(u);
  };
  return integrate_to_inf(f, lo, 1e-11, breaks);
}

double pareto_density_fn(double u, double index, double xm) {
  return index * std::pow(xm, index) * std::pow(u, -index - 1.0);
}

}  // namespace

w_law w_law::uniform01() { return w_law(uniform01_params{}); }

w_law w_law::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("beta: shape parameters must be positive");
  return w_law(beta_params{a, b});
}

w_law w_law::point_mass(double x) {
  if (!(x > 0.0) || !(x < 1.0))
    throw std::invalid_argument("point_mass: x must lie in (0,1)");
  return w_law(point_mass_params{x});
}

w_law w_law::right_log_pareto(double beta, double xm) {
  // index 0 would not be a probability tail; the log-log-tail family covers
  // the slowly varying end.
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("right_log_pareto: beta must lie in (0,1)");
  if (!(xm > 0.0))
    throw std::invalid_argument("right_log_pareto: xm must be positive");
  return w_law(right_log_pareto_params{beta, xm});
}

w_law w_law::right_log_log_tail(double c0) {
  // c0 < 1 would put an atom at eta = 0, i.e. at W = 0.
  if (!(c0 >= 1.0))
    throw std::invalid_argument("right_log_log_tail: c0 must be >= 1");
  return w_law(right_log_log_tail_params{c0});
}

w_law w_law::two_sided_log_pareto(double p, double theta0, double theta1,
                                  double xm) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("two_sided_log_pareto: p must lie in (0,1)");
  if (!(theta0 > 0.0) || !(theta1 > 0.0))
    throw std::invalid_argument("two_sided_log_pareto: indices must be > 0");
  if (!(xm > 0.0))
    throw std::invalid_argument("two_sided_log_pareto: xm must be positive");
  return w_law(two_sided_log_pareto_params{p, theta0, theta1, xm});
}

w_draw w_law::draw(philox4x32& rng) const {
  return std::visit(
      [&rng](const auto& lp) -> w_draw {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          const double u = uniform_open01(rng);
          return {u, 1.0 - u, -std::log(u)};
        } else if constexpr (std::is_same_v<T, beta_params>) {
          std::gamma_distribution<double> ga(lp.a, 1.0), gb(lp.b, 1.0);
          for (;;) {
            const double x = ga(rng), y = gb(rng);
            const double s = x + y;
            if (!(s > 0.0)) continue;
            const double w = x / s, omw = y / s;
            if (w > 0.0 && w < 1.0 && omw > 0.0)
              return {w, omw, -std::log(w)};
          }
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return {lp.x, 1.0 - lp.x, -std::log(lp.x)};
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          const double eta = pareto(rng, lp.beta, lp.xm);
          return {clamp_open01(-std::expm1(-eta)), std::exp(-eta),
                  log_complement(eta)};
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          const double u = uniform_open01(rng);
          const double r = lp.c0 / u;
          const double eta = r > 700.0 ? kInf : std::exp(r) - std::exp(1.0);
          return {clamp_open01(-std::expm1(-eta)), std::exp(-eta),
                  log_complement(eta)};
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          if (uniform_open01(rng) < lp.p) {
            const double xi = pareto(rng, lp.theta0, lp.xm);
            return {clamp_open01(std::exp(-xi)), -std::expm1(-xi), xi};
          }
          const double eta = pareto(rng, lp.theta1, lp.xm);
          return {clamp_open01(-std::expm1(-eta)), std::exp(-eta),
                  log_complement(eta)};
        }
      },
      params_);
}

double w_law::log_tail_left(double x) const {
  if (x < 0.0) throw std::invalid_argument("log_tail_left: x must be >= 0");
  return std::visit(
      [x](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return std::exp(-x);
        } else if constexpr (std::is_same_v<T, beta_params>) {
          return boost::math::ibeta(lp.a, lp.b, std::exp(-x));
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return x < -std::log(lp.x) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          return pareto_cdf(log_complement(x), lp.beta, lp.xm);
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          const double q = log_complement(x);
          return 1.0 - std::min(1.0, lp.c0 / std::log(std::exp(1.0) + q));
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          return lp.p * pareto_tail(x, lp.theta0, lp.xm) +
                 (1.0 - lp.p) *
                     pareto_cdf(log_complement(x), lp.theta1, lp.xm);
        }
      },
      params_);
}

double w_law::log_tail_right(double x) const {
  if (x < 0.0) throw std::invalid_argument("log_tail_right: x must be >= 0");
  return std::visit(
      [x](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return std::exp(-x);
        } else if constexpr (std::is_same_v<T, beta_params>) {
          return boost::math::ibeta(lp.b, lp.a, std::exp(-x));
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return x < -std::log1p(-lp.x) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          return pareto_tail(x, lp.beta, lp.xm);
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          return std::min(1.0, lp.c0 / std::log(std::exp(1.0) + x));
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          return (1.0 - lp.p) * pareto_tail(x, lp.theta1, lp.xm) +
                 lp.p * pareto_cdf(log_complement(x), lp.theta0, lp.xm);
        }
      },
      params_);
}

double w_law::integrated_log_tail_left(double x) const {
  if (x < 0.0)
    throw std::invalid_argument("integrated_log_tail_left: x must be >= 0");
  if (x == 0.0) return 0.0;
  return std::visit(
      [x](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return -std::expm1(-x);
        } else if constexpr (std::is_same_v<T, beta_params>) {
          const auto prm = lp;
          return integrate(
              [prm](double y) {
                return boost::math::ibeta(prm.a, prm.b, std::exp(-y));
              },
              0.0, x, 1e-10, {1.0, 5.0, 20.0});
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return std::min(x, -std::log(lp.x));
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          const auto prm = lp;
          return expected_min_log_complement(
              [prm](double u) {
                return pareto_density_fn(u, prm.beta, prm.xm);
              },
              prm.xm, x);
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          const double c0 = lp.c0;
          const double x0 = std::max(0.0, std::exp(c0) - std::exp(1.0));
          return expected_min_log_complement(
              [c0](double u) {
                const double l = std::log(std::exp(1.0) + u);
                return c0 / ((std::exp(1.0) + u) * l * l);
              },
              x0, x);
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          const auto prm = lp;
          return prm.p * pareto_tail_integral_gen(x, prm.theta0, prm.xm) +
                 (1.0 - prm.p) *
                     expected_min_log_complement(
                         [prm](double u) {
                           return pareto_density_fn(u, prm.theta1, prm.xm);
                         },
                         prm.xm, x);
        }
      },
      params_);
}

namespace {

// E[q(eta)^k] integrated on the eta side, where eta has tail
// min(1, c0/ln(e+x)) with density c0/((e+x) ln^2(e+x)) above
// x0 = max(0, e^{c0} - e). The |log W|-side tail has a corner where it
// hits zero; this side is smooth.
double loglog_left_moment(const right_log_log_tail_params& lp, int k) {
  const double c0 = lp.c0;
  const double x0 = std::max(0.0, std::exp(c0) - std::exp(1.0));
  auto f = [c0, k](double u) {
    const double l = std::log(std::exp(1.0) + u);
    const double dens = c0 / ((std::exp(1.0) + u) * l * l);
    return std::pow(log_complement(u), k) * dens;
  };
  return integrate_to_inf(f, x0, 1e-11, {x0 + 1.0, x0 + 10.0, x0 + 100.0});
}

}  // namespace

double w_law::mu() const {
  return std::visit(
      [](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, beta_params>) {
          return boost::math::digamma(lp.a + lp.b) - boost::math::digamma(lp.a);
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return -std::log(lp.x);
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          return pareto_log_complement_moment(lp.beta, lp.xm, 1);
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          return loglog_left_moment(lp, 1);
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          if (lp.theta0 <= 1.0) return kInf;
          return lp.p * lp.theta0 * lp.xm / (lp.theta0 - 1.0) +
                 (1.0 - lp.p) *
                     pareto_log_complement_moment(lp.theta1, lp.xm, 1);
        }
      },
      params_);
}

double w_law::nu() const {
  return std::visit(
      [](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, beta_params>) {
          return boost::math::digamma(lp.a + lp.b) - boost::math::digamma(lp.b);
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return -std::log1p(-lp.x);
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          return kInf;  // Pareto index < 1
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          return kInf;  // 1/log tail is not integrable
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          if (lp.theta1 <= 1.0) return kInf;
          return (1.0 - lp.p) * lp.theta1 * lp.xm / (lp.theta1 - 1.0) +
                 lp.p * pareto_log_complement_moment(lp.theta0, lp.xm, 1);
        }
      },
      params_);
}

double w_law::sigma2() const {
  return std::visit(
      [this](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, beta_params>) {
          return boost::math::trigamma(lp.a) -
                 boost::math::trigamma(lp.a + lp.b);
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          const double m1 = pareto_log_complement_moment(lp.beta, lp.xm, 1);
          const double m2 = pareto_log_complement_moment(lp.beta, lp.xm, 2);
          return m2 - m1 * m1;
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          const double m1 = loglog_left_moment(lp, 1);
          const double m2 = loglog_left_moment(lp, 2);
          return m2 - m1 * m1;
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          if (lp.theta0 <= 2.0) return kInf;
          const double m = mu();
          const double exi2 =
              lp.theta0 * lp.xm * lp.xm / (lp.theta0 - 2.0);
          const double eq2 =
              pareto_log_complement_moment(lp.theta1, lp.xm, 2);
          return lp.p * exi2 + (1.0 - lp.p) * eq2 - m * m;
        }
      },
      params_);
}

bool w_law::is_lattice() const {
  return std::holds_alternative<point_mass_params>(params_);
}

bool w_law::has_closed_form_kernel() const {
  return std::holds_alternative<uniform01_params>(params_) ||
         std::holds_alternative<beta_params>(params_) ||
         std::holds_alternative<point_mass_params>(params_);
}

std::string w_law::name() const {
  return std::visit(
      [](const auto& lp) -> std::string {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>)
          return "uniform01";
        else if constexpr (std::is_same_v<T, beta_params>)
          return "beta";
        else if constexpr (std::is_same_v<T, point_mass_params>)
          return "point_mass";
        else if constexpr (std::is_same_v<T, right_log_pareto_params>)
          return "right_log_pareto";
        else if constexpr (std::is_same_v<T, right_log_log_tail_params>)
          return "right_log_log_tail";
        else
          return "two_sided_log_pareto";
      },
      params_);
}

std::string w_law::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&os](const auto& lp) {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>)
          os << "uniform01";
        else if constexpr (std::is_same_v<T, beta_params>)
          os << "beta(a=" << lp.a << ", b=" << lp.b << ")";
        else if constexpr (std::is_same_v<T, point_mass_params>)
          os << "point_mass(x=" << lp.x << ")";
        else if constexpr (std::is_same_v<T, right_log_pareto_params>)
          os << "right_log_pareto(beta=" << lp.beta << ", xm=" << lp.xm << ")";
        else if constexpr (std::is_same_v<T, right_log_log_tail_params>)
          os << "right_log_log_tail(c0=" << lp.c0 << ")";
        else
          os << "two_sided_log_pareto(p=" << lp.p << ", theta0=" << lp.theta0
             << ", theta1=" << lp.theta1 << ", xm=" << lp.xm << ")";
      },
      params_);
  return os.str();
}

}  // namespace sievelab
