#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sievelab/asymptotics.hpp"
#include "sievelab/binomial.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/stats.hpp"
#include "test_util.hpp"

using namespace sievelab;

TEST_CASE("outcome identities hold on every trial") {
  const std::vector<w_law> laws = {
      w_law::uniform01(), w_law::beta(2.0, 3.0), w_law::point_mass(0.5),
      w_law::two_sided_log_pareto(1.0 / 3, 0.5, 0.5, 1.0)};
  for (const auto& law : laws) {
    CAPTURE(law.describe());
    auto g = testutil::rng(60);
    for (std::uint64_t n : {1ull, 7ull, 100ull, 5000ull}) {
      for (int rep = 0; rep < 200; ++rep) {
        const sieve_outcome o = simulate_sieve_thinning(law, n, g);
        REQUIRE(o.l_empty == o.m_range - o.k_occupied);
        REQUIRE(o.k_occupied <= o.m_range);
        REQUIRE(o.k_occupied >= 1);
      }
    }
  }
}

TEST_CASE("zero balls gives the all-zero outcome") {
  auto g = testutil::rng(61);
  const sieve_outcome o = simulate_sieve_thinning(w_law::uniform01(), 0, g);
  CHECK(o.k_occupied == 0);
  CHECK(o.m_range == 0);
  CHECK(o.l_empty == 0);
}

TEST_CASE("one ball: the first box is hit with probability E(1-W)") {
  // box 1 has frequency 1 - W_1
  auto g = testutil::rng(62);
  const int n = 200000;
  int uni_hits = 0, beta_hits = 0;
  for (int i = 0; i < n; ++i) {
    if (simulate_sieve_thinning(w_law::uniform01(), 1, g).l_empty == 0)
      ++uni_hits;
    if (simulate_sieve_thinning(w_law::beta(2.0, 3.0), 1, g).l_empty == 0)
      ++beta_hits;
  }
  CHECK(std::abs(uni_hits / double(n) - 0.5) < testutil::prop_bar(0.5, n));
  CHECK(std::abs(beta_hits / double(n) - 0.6) < testutil::prop_bar(0.6, n));
}

TEST_CASE("near-degenerate law rarely leaves empty boxes") {
  // survival probability 0.999: an empty round needs all balls to survive,
  // then some to drop later; zero-decrement probability 0.999^i per round
  auto g = testutil::rng(63);
  int with_empty = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const sieve_outcome o =
        simulate_sieve_thinning(w_law::point_mass(0.001), 10, g);
    if (o.l_empty > 0) ++with_empty;
  }
  CHECK(with_empty < trials / 100);
}

TEST_CASE("direct simulator: M_1 is geometric for a point mass") {
  auto g = testutil::rng(64);
  const int n = 100000;
  std::vector<std::uint64_t> m(n);
  for (int i = 0; i < n; ++i)
    m[i] = simulate_sieve_direct(w_law::point_mass(0.5), 1, g).m_range - 1;
  const double p = testutil::chisq_vs_pmf(m, [](std::uint64_t k) {
    return std::pow(0.5, double(k) + 1.0);
  });
  CHECK(p > 1e-4);
}

TEST_CASE("direct and thinning agree in law") {
  auto g = testutil::rng(65);
  const int trials = 5000;
  const w_law law = w_law::beta(2.0, 3.0);
  std::vector<double> l_direct(trials), l_thin(trials);
  for (int i = 0; i < trials; ++i) {
    l_direct[i] = double(simulate_sieve_direct(law, 1000, g).l_empty);
    l_thin[i] = double(simulate_sieve_thinning(law, 1000, g).l_empty);
  }
  CHECK(ks_two_sample(l_direct, l_thin, 1e-3).pass);
}

TEST_CASE("direct simulator caps n") {
  auto g = testutil::rng(66);
  CHECK_THROWS_AS(
      (void)simulate_sieve_direct(w_law::uniform01(), 2000000, g),
      std::invalid_argument);
}

TEST_CASE("shared-stream coupling: M_n nondecreasing in n") {
  auto g = testutil::rng(67);
  const w_law law = w_law::uniform01();
  for (int rep = 0; rep < 50; ++rep) {
    const int nmax = 200;
    std::vector<double> e(nmax);
    for (auto& x : e) x = -std::log(uniform_open01(g));
    const double emax = *std::max_element(e.begin(), e.end());
    std::vector<double> sums;
    double s = 0.0;
    while (s <= emax) {
      s += law.draw(g).abs_log_w;
      sums.push_back(s);
    }
    std::uint64_t prev_m = 0;
    for (int n = 1; n <= nmax; ++n) {
      std::vector<double> prefix(e.begin(), e.begin() + n);
      std::sort(prefix.begin(), prefix.end());
      const sieve_outcome o = sieve_count_direct(prefix, sums);
      REQUIRE(o.m_range >= prev_m);
      prev_m = o.m_range;
    }
  }
}

TEST_CASE("poissonized sieve") {
  auto g = testutil::rng(68);
  SUBCASE("tiny horizon is almost surely empty") {
    const double t = 0.01;
    int zero = 0;
    const int trials = 40000;
    for (int i = 0; i < trials; ++i) {
      const sieve_outcome o =
          simulate_poissonized(w_law::uniform01(), t, g);
      if (o.m_range == 0) ++zero;
    }
    const double p = std::exp(-t);
    CHECK(std::abs(zero / double(trials) - p) <
          testutil::prop_bar(p, trials));
  }
  SUBCASE("poissonized at t=100 is close to fixed n=100") {
    const int trials = 5000;
    std::vector<double> lp(trials), lf(trials);
    for (int i = 0; i < trials; ++i) {
      lp[i] = double(simulate_poissonized(w_law::uniform01(), 100.0, g)
                         .l_empty);
      lf[i] = double(
          simulate_sieve_thinning(w_law::uniform01(), 100, g).l_empty);
    }
    CHECK(ks_two_sample(lp, lf, 1e-3).pass);
  }
}

TEST_CASE("poissonized mean range matches the renewal series") {
  // E M(t) = E sum_k (1 - exp(-t e^{-S_k}))
  auto g = testutil::rng(69);
  const w_law law = w_law::uniform01();
  const double t = 50.0;
  const int trials = 20000;
  std::vector<double> ms(trials), series(trials);
  for (int i = 0; i < trials; ++i)
    ms[i] = double(simulate_poissonized(law, t, g).m_range);
  const double s_cut = std::log(t) + 30.0;
  for (int i = 0; i < trials; ++i) {
    double s = 0.0, acc = 0.0;
    while (s <= s_cut) {
      acc += -std::expm1(-t * std::exp(-s));
      s += law.draw(g).abs_log_w;
    }
    series[i] = acc;
  }
  const double diff = testutil::mean(ms) - testutil::mean(series);
  const double bar = 4.0 * std::hypot(testutil::sem(ms),
                                      testutil::sem(series));
  CHECK(std::abs(diff) < bar);
}

TEST_CASE("huge n round-1 thinning has the exact mean") {
  auto g = testutil::rng(70);
  const std::uint64_t n = 1000000000000ull;
  const double x = 0.5;  // survival probability
  const int trials = 20000;
  std::vector<double> dropped(trials);
  for (int i = 0; i < trials; ++i) {
    const w_draw d = w_law::point_mass(x).draw(g);
    dropped[i] =
        double(n - binomial_keep(n, d.w, d.one_minus_w, g));
  }
  const double target = double(n) * (1.0 - x);
  CHECK(std::abs(testutil::mean(dropped) - target) <
        5.0 * testutil::sem(dropped));
}
