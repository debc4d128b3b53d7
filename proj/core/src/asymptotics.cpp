#include "sievelab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sievelab/quad.hpp"

namespace sievelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pareto_density(double y, double index, double xm) {
  return index * std::pow(xm, index) * std::pow(y, -index - 1.0);
}

double pareto_tail(double x, double index, double xm) {
  return x <= xm ? 1.0 : std::pow(x / xm, -index);
}

// int_0^t min(1,(y/xm)^{-index}) dy; valid for any positive index
double pareto_tail_integral(double t, double index, double xm) {
  if (t <= xm) return t;
  if (index == 1.0) return xm + xm * std::log(t / xm);
  return xm + std::pow(xm, index) *
                  (std::pow(t, 1.0 - index) - std::pow(xm, 1.0 - index)) /
                  (1.0 - index);
}

// int_0^x P{xi < q(y)} dy = E[min(q(xi), x)] for xi ~ Pareto(index, xm);
// the expectation side is smooth where the y-side derivative has a log
// singularity at 0.
double integrated_light_branch(double x, double index, double xm) {
  if (x <= 0.0) return 0.0;
  std::vector<double> breaks{xm + 1.0, xm + 10.0, xm + 100.0};
  const double kink = log_complement(x);
  if (kink > xm) breaks.push_back(kink);
  auto f = [=](double u) {
    return std::min(log_complement(u), x) * pareto_density(u, index, xm);
  };
  return integrate_to_inf(f, xm, 1e-11, breaks);
}

std::vector<double> sigmoid_breaks(double y, double lo, double hi) {
  std::vector<double> b;
  for (double d : {-40.0, -5.0, 0.0, 5.0, 40.0}) {
    const double x = y + d;
    if (x > lo && x < hi) b.push_back(x);
  }
  return b;
}

// E exp(-e^{y-eta}) for eta ~ Pareto(index, xm): the mark-survival transform
// shared by the right-log-pareto family and the heavy branch of the
// two-sided family. Beyond y+45 the integrand is 1 to within 1e-19, so the
// exact tail is added analytically.
double phi_pareto_mark(double y, double index, double xm) {
  const double cut = std::max(xm, y + 45.0);
  auto f = [=](double u) {
    const double e = y - u;
    const double damp = e > 700.0 ? kInf : std::exp(e);
    return std::exp(-damp) * pareto_density(u, index, xm);
  };
  return integrate(f, xm, cut, 1e-11, sigmoid_breaks(y, xm, cut)) +
         pareto_tail(cut, index, xm);
}

// E exp(-e^y (1 - e^{-xi})) for xi ~ Pareto(index, xm): the light branch of
// the two-sided family; decays like exp(-const e^y).
double phi_pareto_near_zero(double y, double index, double xm) {
  const double d0 = -std::expm1(-xm);  // min of 1 - e^{-xi}
  if (y > std::log(745.0 / d0)) return 0.0;
  const double scale = y > 700.0 ? kInf : std::exp(y);
  const double cut = std::max(xm, y + 45.0);
  auto f = [=](double u) {
    return std::exp(scale * std::expm1(-u) /*= -scale(1-e^{-u})*/) *
           pareto_density(u, index, xm);
  };
  const double tail = std::exp(-scale) * pareto_tail(cut, index, xm);
  return integrate(f, xm, cut, 1e-11, sigmoid_breaks(y, xm, cut)) + tail;
}

// density of eta with tail min(1, c0/ln(e+x)), supported on (x0, inf)
double loglog_density(double u, double c0) {
  const double l = std::log(std::exp(1.0) + u);
  return c0 / ((std::exp(1.0) + u) * l * l);
}

double loglog_support_start(double c0) {
  return std::max(0.0, std::exp(c0) - std::exp(1.0));
}

double phi_loglog(double y, double c0) {
  const double x0 = loglog_support_start(c0);
  const double cut = std::max(x0, y + 45.0) + 1.0;
  auto f = [=](double u) {
    const double e = y - u;
    const double damp = e > 700.0 ? kInf : std::exp(e);
    return std::exp(-damp) * loglog_density(u, c0);
  };
  return integrate(f, x0, cut, 1e-11, sigmoid_breaks(y, x0, cut)) +
         std::min(1.0, c0 / std::log(std::exp(1.0) + cut));
}

}  // namespace

double phi(const w_law& law, double y) {
  if (std::isinf(y) && y < 0.0) return 1.0;
  return std::visit(
      [y](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          if (y > 36.0) return std::exp(-y);
          const double s = std::exp(y);
          return s == 0.0 ? 1.0 : -std::expm1(-s) / s;
        } else if constexpr (std::is_same_v<T, beta_params>) {
          // E e^{-s(1-W)} over the beta density, s = e^y
          if (y > 700.0) {
            // dominated by W near 1; integrand negligible at double scale
            // only when s(1-w) > 745 for all representable 1-w >= eps
            // fall through to the substituted form below
          }
          const double s = std::exp(std::min(y, 700.0));
          const double lb = std::lgamma(lp.a) + std::lgamma(lp.b) -
                            std::lgamma(lp.a + lp.b);
          auto f = [&](double u) {
            return std::exp(-s * u + (lp.b - 1.0) * std::log(u) +
                            (lp.a - 1.0) * std::log1p(-u) - lb);
          };
          std::vector<double> br;
          for (double m : {1.0, 10.0, 100.0, 1000.0})
            if (m / s < 1.0) br.push_back(m / s);
          return integrate(f, 0.0, 1.0, 1e-11, br);
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          const double e = y + std::log1p(-lp.x);
          return e > 700.0 ? 0.0 : std::exp(-std::exp(e));
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          return phi_pareto_mark(y, lp.beta, lp.xm);
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          return phi_loglog(y, lp.c0);
        } else {
          static_assert(std::is_same_v<T, two_sided_log_pareto_params>);
          return lp.p * phi_pareto_near_zero(y, lp.theta0, lp.xm) +
                 (1.0 - lp.p) * phi_pareto_mark(y, lp.theta1, lp.xm);
        }
      },
      law.params());
}

double psi(const w_law& law, double s) {
  if (s < 0.0) throw std::invalid_argument("psi: s must be >= 0");
  if (s == 0.0) return 1.0;
  return phi(law, std::log(s));
}

double k_of(const w_law& law, double t) {
  if (t < 0.0) throw std::invalid_argument("k_of: t must be >= 0");
  if (t == 0.0) return 0.0;
  auto f = [&law](double y) { return phi(law, y); };
  return integrate(f, 0.0, t, 1e-9, {1.0, 10.0, 100.0, 1000.0});
}

double m_of(const w_law& law, double x) {
  if (x < 0.0) throw std::invalid_argument("m_of: x must be >= 0");
  if (x == 0.0) return 0.0;
  return std::visit(
      [x, &law](const auto& lp) -> double {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params>) {
          return -std::expm1(-x);
        } else if constexpr (std::is_same_v<T, point_mass_params>) {
          return std::min(x, -std::log1p(-lp.x));
        } else if constexpr (std::is_same_v<T, right_log_pareto_params>) {
          return pareto_tail_integral(x, lp.beta, lp.xm);
        } else if constexpr (std::is_same_v<T, right_log_log_tail_params>) {
          const double x0 = loglog_support_start(lp.c0);
          if (x <= x0) return x;
          const double c0 = lp.c0;
          return x0 + integrate(
                          [c0](double u) {
                            return c0 / std::log(std::exp(1.0) + u);
                          },
                          x0, x, 1e-10, {x0 + 1.0, x0 + 100.0});
        } else if constexpr (std::is_same_v<T, two_sided_log_pareto_params>) {
          // heavy branch in closed form, light branch on its smooth side
          const double hi = std::min(x, log_complement(lp.xm));
          return (1.0 - lp.p) * pareto_tail_integral(x, lp.theta1, lp.xm) +
                 lp.p * integrated_light_branch(hi, lp.theta0, lp.xm);
        } else {
          // beta: integrate the analytic right tail
          return integrate(
              [&law](double yv) { return law.log_tail_right(yv); }, 0.0, x,
              1e-10, {1.0, 5.0, 20.0});
        }
      },
      law.params());
}

double centering_b(const w_law& law, double log_n) {
  const double m = law.mu();
  if (!std::isfinite(m))
    throw std::domain_error("centering_b: requires E|log W| < inf");
  if (log_n < 0.0)
    throw std::invalid_argument("centering_b: requires n >= 1");
  return k_of(law, log_n) / m;
}

double centering_b_prime(const w_law& law, double log_n) {
  const double m = law.mu();
  if (!std::isfinite(m))
    throw std::domain_error("centering_b_prime: requires E|log W| < inf");
  if (log_n < 0.0)
    throw std::invalid_argument("centering_b_prime: requires n >= 1");
  return m_of(law, log_n) / m;
}

const char* regime_name(regime_kind k) {
  switch (k) {
    case regime_kind::finite_finite: return "FiniteFinite";
    case regime_kind::mu_inf_nu_fin: return "MuInfNuFin";
    case regime_kind::case_a: return "CaseA";
    case regime_kind::case_b1: return "CaseB1";
    case regime_kind::case_b2: return "CaseB2";
    case regime_kind::case_c1: return "CaseC1";
    case regime_kind::case_c2: return "CaseC2";
    case regime_kind::case_b3_open: return "CaseB3Open";
    case regime_kind::case_c3_open: return "CaseC3Open";
    case regime_kind::comparable: return "Comparable";
    case regime_kind::asym_inf_zero: return "AsymInfZero";
    case regime_kind::lattice: return "Lattice";
  }
  return "unknown";
}

regime_case classify_regime(const w_law& law) {
  // Lattice |log W| overrides everything: the non-lattice hypothesis of the
  // normal/stable regimes fails.
  if (law.is_lattice()) return {regime_kind::lattice};

  return std::visit(
      [&law](const auto& lp) -> regime_case {
        using T = std::decay_t<decltype(lp)>;
        if constexpr (std::is_same_v<T, uniform01_params> ||
                      std::is_same_v<T, beta_params>) {
          return {regime_kind::finite_finite};
        } else if constexpr (std::is_same_v<T, right_log_pareto_params> ||
                             std::is_same_v<T, right_log_log_tail_params>) {
          // |log W| has exponential-or-better tail: sigma^2 < inf, nu = inf
          return {regime_kind::case_a};
        } else if constexpr (std::is_same_v<T, two_sided_log_pareto_params>) {
          const double t0 = lp.theta0, t1 = lp.theta1;
          if (t0 <= 1.0) {          // mu = inf
            if (t1 > 1.0) return {regime_kind::mu_inf_nu_fin};
            if (t0 == t1) {
              regime_case rc{regime_kind::comparable};
              rc.comparable_c = (1.0 - lp.p) / lp.p;
              return rc;
            }
            return {regime_kind::asym_inf_zero};
          }
          // mu < inf from here on
          if (t1 > 1.0) return {regime_kind::finite_finite};
          if (t0 > 2.0) return {regime_kind::case_a};
          if (t0 == 2.0) {
            // truncated second moment ~ 2 p xm^2 ln(x/xm): case (b);
            // a Pareto right tail always satisfies the negligibility
            // condition, so (b2)/(b3) are unreachable here.
            regime_case rc{regime_kind::case_b1};
            rc.alpha = 2.0;
            return rc;
          }
          // alpha = theta0 in (1,2): case (c), split on the boundary
          // exponent 2/alpha - 1 with strict comparisons; parameters on
          // the exact boundary (up to rounding of 2/alpha - 1) are the
          // unresolved case.
          const double boundary = 2.0 / t0 - 1.0;
          regime_case rc{};
          rc.alpha = t0;
          if (std::abs(t1 - boundary) <= 1e-12 * std::max(1.0, boundary)) {
            rc.kind = regime_kind::case_c3_open;
          } else if (t1 > boundary) {
            rc.kind = regime_kind::case_c1;
          } else {
            rc.kind = regime_kind::case_c2;
            rc.beta = t1;
          }
          return rc;
        } else {
          return {regime_kind::finite_finite};
        }
      },
      law.params());
}

double norming_c(const w_law& law, double x) {
  if (x < 0.0) throw std::invalid_argument("norming_c: x must be >= 0");
  const auto* ts = std::get_if<two_sided_log_pareto_params>(&law.params());
  if (ts == nullptr)
    throw std::domain_error(
        "norming_c: law is not in case (b) or (c) (no regularly varying "
        "|log W| tail)");
  if (x == 0.0) return 0.0;
  if (ts->theta0 > 1.0 && ts->theta0 < 2.0) {
    // constant slowly varying factor lt = p xm^alpha
    const double lt = ts->p * std::pow(ts->xm, ts->theta0);
    return std::pow(lt * x, 1.0 / ts->theta0);
  }
  if (ts->theta0 == 2.0) {
    // lt(v) = 2 p xm^2 ln(v/xm); solve x lt(c)/c^2 = 1 on the decreasing
    // branch c >= xm sqrt(e)
    const double p = ts->p, xm = ts->xm;
    auto val = [p, xm, x](double c) {
      return x * 2.0 * p * xm * xm * std::log(c / xm) / (c * c);
    };
    double lo = xm * std::exp(0.5);
    if (val(lo) < 1.0)
      throw std::domain_error("norming_c: x too small for the case-(b) "
                              "normalizer to be defined");
    double hi = lo;
    while (val(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (val(mid) >= 1.0 ? lo : hi) = mid;
      if (hi - lo <= 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
  }
  throw std::domain_error(
      "norming_c: |log W| tail index outside (1,2] (law not in case (b)/(c))");
}

double scaling_a(const w_law& law, double log_n, const regime_case& rc) {
  switch (rc.kind) {
    case regime_kind::case_a:
    case regime_kind::case_b1:
    case regime_kind::case_c1:
      return std::sqrt(centering_b(law, log_n));
    case regime_kind::case_b2:
    case regime_kind::case_c2: {
      const double m = law.mu();
      const double alpha = rc.kind == regime_kind::case_b2 ? 2.0 : rc.alpha;
      return std::pow(m, -1.0 - 1.0 / alpha) * norming_c(law, log_n) *
             phi(law, log_n);
    }
    case regime_kind::case_b3_open:
    case regime_kind::case_c3_open:
      throw std::domain_error(
          "scaling_a: boundary cases (b3)/(c3) have no established "
          "normalization; the limit is unresolved");
    default:
      throw std::domain_error(
          "scaling_a: no normal/stable normalization in this regime");
  }
}

phi_table::phi_table(const w_law& law, double y_max, double step)
    : y_max_(y_max), step_(step) {
  if (!(y_max > 0.0) || !(step > 0.0))
    throw std::invalid_argument("phi_table: bad grid");
  const std::size_t n = static_cast<std::size_t>(y_max / step) + 2;
  value_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    value_[i] = phi(law, static_cast<double>(i) * step);

  // Fritsch-Carlson monotone cubic slopes
  slope_.assign(n + 1, 0.0);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = (value_[i + 1] - value_[i]) / step;
  slope_[0] = d[0];
  slope_[n] = d[n - 1];
  for (std::size_t i = 1; i < n; ++i)
    slope_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0.0) {
      slope_[i] = slope_[i + 1] = 0.0;
      continue;
    }
    const double a = slope_[i] / d[i], b = slope_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      slope_[i] = tau * a * d[i];
      slope_[i + 1] = tau * b * d[i];
    }
  }
}

double phi_table::operator()(double y) const {
  if (y < 0.0) {
    if (y > -1e-9) y = 0.0;  // fp dust from t - S_k
    else throw std::invalid_argument("phi_table: y below range");
  }
  const double pos = y / step_;
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= value_.size())
    throw std::invalid_argument("phi_table: y above tabulated range");
  const double u = pos - static_cast<double>(i);
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  return h00 * value_[i] + h10 * step_ * slope_[i] + h01 * value_[i + 1] +
         h11 * step_ * slope_[i + 1];
}

}  // namespace sievelab
