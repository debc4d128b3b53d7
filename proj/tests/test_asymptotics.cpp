#include <doctest.h>

#include <cmath>
#include <vector>

#include "sievelab/asymptotics.hpp"
#include "sievelab/stats.hpp"
#include "test_util.hpp"

using namespace sievelab;

namespace {

const w_law kC2Law = w_law::two_sided_log_pareto(0.5, 1.5, 0.2, 1.0);
const w_law kCompLaw = w_law::two_sided_log_pareto(1.0 / 3, 0.5, 0.5, 1.0);
const w_law kRlp = w_law::right_log_pareto(0.5, 1.0);

double trapezoid(const std::function<double(double)>& f, double a, double b,
                 int cells) {
  double acc = 0.5 * (f(a) + f(b));
  for (int i = 1; i < cells; ++i)
    acc += f(a + (b - a) * i / cells);
  return acc * (b - a) / cells;
}

}  // namespace

TEST_CASE("psi basics") {
  const std::vector<w_law> laws = {w_law::uniform01(),
                                   w_law::beta(2.0, 3.0),
                                   w_law::point_mass(0.3),
                                   kRlp,
                                   w_law::right_log_log_tail(1.0),
                                   kCompLaw,
                                   kC2Law};
  for (const auto& law : laws) {
    CAPTURE(law.describe());
    CHECK(psi(law, 0.0) == 1.0);
    double prev = 1.0;
    for (double s : {1e-6, 0.01, 0.5, 1.0, 10.0, 1e3, 1e5, 1e8}) {
      const double v = psi(law, s);
      // e^{-s(1-W)} underflows the double range for a lattice law at huge s
      if (s <= 100.0)
        CHECK(v > 0.0);
      else
        CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
    CHECK(psi(law, 1e8) < psi(law, 100.0));
  }
}

TEST_CASE("uniform psi closed form") {
  CHECK(psi(w_law::uniform01(), 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(psi(w_law::uniform01(), 1.0) ==
        doctest::Approx(0.6321205588).epsilon(1e-9));
}

TEST_CASE("psi matches Monte Carlo for every family") {
  const std::vector<w_law> laws = {w_law::beta(2.0, 3.0), kRlp,
                                   w_law::right_log_log_tail(1.0), kCompLaw};
  const int n = 400000;
  for (const auto& law : laws) {
    CAPTURE(law.describe());
    for (double s : {0.5, 3.0, 40.0}) {
      CAPTURE(s);
      auto g = testutil::rng(100);
      std::vector<double> v(n);
      for (int i = 0; i < n; ++i) {
        const w_draw d = law.draw(g);
        v[i] = std::exp(-s * d.one_minus_w);
      }
      CHECK(std::abs(testutil::mean(v) - psi(law, s)) <
            4.0 * testutil::sem(v));
    }
  }
}

TEST_CASE("phi is psi in log scale and survives huge horizons") {
  CHECK(phi(w_law::uniform01(), std::log(7.0)) ==
        doctest::Approx(psi(w_law::uniform01(), 7.0)).epsilon(1e-12));
  // no overflow at renewal horizons
  const double v = phi(kRlp, 2000.0);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  // for the pareto-mark family phi(y) ~ P{eta > y} = y^{-1/2}
  CHECK(v == doctest::Approx(std::pow(2000.0, -0.5)).epsilon(0.02));
  CHECK(phi(kRlp, -std::numeric_limits<double>::infinity()) == 1.0);
}

TEST_CASE("k_of and m_of against trapezoid oracles") {
  for (const auto& law : {w_law::uniform01(), kRlp, kC2Law}) {
    CAPTURE(law.describe());
    for (double t : {1.0, 5.0, 30.0}) {
      const double k = k_of(law, t);
      const double oracle = trapezoid(
          [&law](double y) { return phi(law, y); }, 0.0, t, 20000);
      CHECK(std::abs(k / oracle - 1.0) < 1e-6);
      const double m = m_of(law, t);
      const double moracle = trapezoid(
          [&law](double y) { return law.log_tail_right(y); }, 0.0, t, 20000);
      CHECK(std::abs(m / moracle - 1.0) < 2e-5);
    }
    CHECK(k_of(law, 0.0) == 0.0);
    CHECK(m_of(law, 0.0) == 0.0);
  }
}

TEST_CASE("right-log-pareto m_of closed form") {
  // x below xm integrates the unit tail; above it the pareto piece
  CHECK(m_of(kRlp, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  const double x = 25.0;
  const double expected = 1.0 + (std::pow(x, 0.5) - 1.0) / 0.5;
  CHECK(m_of(kRlp, x) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(m_of(kRlp, 25.0) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("|m - k| is bounded and stabilizes") {
  for (const auto& law : {kRlp, kC2Law}) {
    CAPTURE(law.describe());
    double max_lo = 0.0, d30 = 0.0, d50 = 0.0;
    for (double x = 1.0; x <= 50.0; x += 1.0) {
      const double d = std::abs(m_of(law, x) - k_of(law, x));
      if (x <= 25.0) max_lo = std::max(max_lo, d);
      if (x == 30.0) d30 = d;
      if (x == 50.0) d50 = d;
    }
    CHECK(std::abs(d50 - d30) < 0.1 * std::max(1.0, d30));
    CHECK(d50 < 2.0 * std::max(max_lo, 0.5));
  }
}

TEST_CASE("centerings") {
  CHECK(centering_b(w_law::uniform01(), 0.0) == 0.0);  // n = 1
  // b'_{e^25} = m(25)/mu = 9/mu for the right-log-pareto family
  const double mu = kRlp.mu();
  CHECK(centering_b_prime(kRlp, 25.0) ==
        doctest::Approx(9.0 / mu).epsilon(1e-9));
  // nondecreasing in n and |b - b'| bounded on a geometric grid
  double prev_b = 0.0, prev_bp = 0.0, dmax = 0.0, dmid = 0.0;
  for (double ln = 5.0; ln <= 30.0; ln += 2.5) {
    const double b = centering_b(kRlp, ln);
    const double bp = centering_b_prime(kRlp, ln);
    CHECK(b >= prev_b);
    CHECK(bp >= prev_bp);
    prev_b = b;
    prev_bp = bp;
    dmax = std::max(dmax, std::abs(b - bp));
    if (ln == 15.0) dmid = std::abs(b - bp);
  }
  CHECK(dmax <= 2.0 * dmid);
  // mu = inf rejected
  CHECK_THROWS_AS((void)centering_b(kCompLaw, 10.0), std::domain_error);
}

TEST_CASE("norming function c(x)") {
  // constant slowly varying factor: c(x) = (p xm^alpha x)^{1/alpha}
  for (double x : {1.0, 10.0, 30.0}) {
    CHECK(norming_c(kC2Law, x) ==
          doctest::Approx(std::pow(0.5 * x, 2.0 / 3)).epsilon(1e-12));
  }
  CHECK(norming_c(kC2Law, 0.0) == 0.0);
  // self-consistency residual x lt(c)/c^alpha = 1
  for (double x : {2.0, 7.0, 25.0, 100.0}) {
    const double c = norming_c(kC2Law, x);
    const double resid = x * 0.5 / std::pow(c, 1.5);
    CHECK(std::abs(resid - 1.0) < 1e-9);
  }
  // case (b): theta0 = 2, lt(v) = 2 p xm^2 ln(v/xm)
  const w_law b_law = w_law::two_sided_log_pareto(0.5, 2.0, 0.5, 1.0);
  for (double x : {20.0, 100.0, 1000.0}) {
    const double c = norming_c(b_law, x);
    const double resid = x * 2.0 * 0.5 * std::log(c) / (c * c);
    CHECK(std::abs(resid - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS((void)norming_c(w_law::uniform01(), 5.0),
                  std::domain_error);
}

TEST_CASE("scaling_a") {
  const regime_case rc_a = classify_regime(kRlp);
  const double ln = 20.0;
  CHECK(scaling_a(kRlp, ln, rc_a) ==
        doctest::Approx(std::sqrt(centering_b(kRlp, ln))).epsilon(1e-12));
  CHECK(scaling_a(kRlp, ln, rc_a) > 0.0);

  // c2 growth exponent 1/alpha - beta = 2/3 - 0.2
  const regime_case rc_c2 = classify_regime(kC2Law);
  std::vector<double> xs, ys;
  for (double l = 10.0; l <= 30.0; l += 2.0) {
    xs.push_back(std::log(l));
    ys.push_back(std::log(scaling_a(kC2Law, l, rc_c2)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
  }
  const double nn = double(xs.size());
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  CHECK(slope == doctest::Approx(2.0 / 3 - 0.2).epsilon(0.08));

  // open cases refuse
  const w_law open_law = w_law::two_sided_log_pareto(0.5, 1.5, 1.0 / 3, 1.0);
  const regime_case rc_open = classify_regime(open_law);
  CHECK(rc_open.kind == regime_kind::case_c3_open);
  CHECK_THROWS_WITH_AS((void)scaling_a(open_law, 20.0, rc_open),
                       doctest::Contains("unresolved"), std::domain_error);
}

TEST_CASE("regime classification table") {
  auto kind_of = [](const w_law& l) { return classify_regime(l).kind; };
  CHECK(kind_of(w_law::uniform01()) == regime_kind::finite_finite);
  CHECK(kind_of(w_law::beta(2.0, 3.0)) == regime_kind::finite_finite);
  CHECK(kind_of(w_law::point_mass(0.5)) == regime_kind::lattice);
  CHECK(kind_of(kRlp) == regime_kind::case_a);
  CHECK(kind_of(w_law::right_log_log_tail(1.0)) == regime_kind::case_a);

  const regime_case comp = classify_regime(kCompLaw);
  CHECK(comp.kind == regime_kind::comparable);
  CHECK(comp.comparable_c == doctest::Approx(2.0));

  const regime_case c2 = classify_regime(kC2Law);
  CHECK(c2.kind == regime_kind::case_c2);
  CHECK(c2.alpha == doctest::Approx(1.5));
  CHECK(c2.beta == doctest::Approx(0.2));

  auto ts = [](double t0, double t1) {
    return w_law::two_sided_log_pareto(0.5, t0, t1, 1.0);
  };
  CHECK(kind_of(ts(1.5, 0.5)) == regime_kind::case_c1);   // 0.5 > 1/3
  CHECK(kind_of(ts(1.5, 1.0 / 3)) == regime_kind::case_c3_open);
  CHECK(kind_of(ts(2.0, 0.5)) == regime_kind::case_b1);
  CHECK(kind_of(ts(2.5, 0.5)) == regime_kind::case_a);
  CHECK(kind_of(ts(0.5, 1.5)) == regime_kind::mu_inf_nu_fin);
  CHECK(kind_of(ts(0.5, 0.7)) == regime_kind::asym_inf_zero);
  CHECK(kind_of(ts(1.5, 1.5)) == regime_kind::finite_finite);

  // the scale parameter never changes the case
  for (double xm : {0.5, 1.0, 2.0}) {
    CHECK(classify_regime(w_law::two_sided_log_pareto(0.5, 1.5, 0.2, xm))
              .kind == regime_kind::case_c2);
    CHECK(classify_regime(w_law::right_log_pareto(0.5, xm)).kind ==
          regime_kind::case_a);
  }
}

TEST_CASE("phi_table interpolates phi accurately") {
  const phi_table table(kRlp, 50.0);
  auto g = testutil::rng(101);
  for (int i = 0; i < 200; ++i) {
    const double y = uniform_open01(g) * 50.0;
    CHECK(std::abs(table(y) - phi(kRlp, y)) < 1e-6);
  }
  CHECK_THROWS_AS((void)table(60.0), std::invalid_argument);
}
