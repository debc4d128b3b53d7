#include <doctest.h>

#include <cmath>
#include <vector>

#include "sievelab/kernel.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/stats.hpp"
#include "test_util.hpp"

using namespace sievelab;

namespace {

std::vector<double> zero_dec_sample(const kernel_spec& k, std::uint64_t n,
                                    int trials, std::uint64_t stream,
                                    bool geomrep) {
  auto g = testutil::rng(stream);
  std::vector<double> out(trials);
  for (auto& v : out)
    v = double(geomrep ? simulate_zero_decrements_geomrep(k, n, g)
                       : simulate_zero_decrements(k, n, g));
  return out;
}

}  // namespace

TEST_CASE("kernel without delays never produces zero decrements") {
  // uniform over {0,...,i-1}: diagonal is empty
  const auto k = kernel_spec::from_rows([](std::uint64_t i) {
    std::vector<double> row(i + 1, 0.0);
    for (std::uint64_t j = 0; j < i; ++j) row[j] = 1.0 / double(i);
    return row;
  });
  auto g = testutil::rng(80);
  for (int rep = 0; rep < 2000; ++rep) {
    CHECK(simulate_zero_decrements(k, 50, g) == 0);
    CHECK(simulate_zero_decrements_geomrep(k, 50, g) == 0);
  }
}

TEST_CASE("delay-or-absorb kernel gives an exact geometric law") {
  // pi_{i,i} = 1/2, pi_{i,0} = 1/2: only the start state is ever visited
  const auto k = kernel_spec::from_rows([](std::uint64_t i) {
    std::vector<double> row(i + 1, 0.0);
    row[0] = 0.5;
    row[i] = 0.5;
    return row;
  });
  for (bool geomrep : {false, true}) {
    CAPTURE(geomrep);
    auto sample = zero_dec_sample(k, 37, 100000, 81, geomrep);
    std::vector<std::uint64_t> zs(sample.begin(), sample.end());
    const auto h = histogram(zs);
    CHECK(chisq_geometric(h, 0.5, 1e-3).pass);
  }
}

TEST_CASE("absorbing start yields zero") {
  const auto k = kernel_spec::from_sieve_law(w_law::uniform01(), 3);
  auto g = testutil::rng(82);
  CHECK(simulate_zero_decrements(k, 3, g) == 0);
  CHECK(simulate_zero_decrements_geomrep(k, 3, g) == 0);
  CHECK_THROWS_AS((void)simulate_zero_decrements(k, 2, g),
                  std::invalid_argument);
}

TEST_CASE("closed-form kernels expose the right delay probabilities") {
  const auto ku = kernel_spec::from_sieve_law(w_law::uniform01());
  for (std::uint64_t i : {1ull, 2ull, 10ull, 100ull})
    CHECK(ku.delay_prob(i) == doctest::Approx(1.0 / double(i + 1)));

  // E W^i for beta(2,3) against Monte Carlo
  const w_law beta = w_law::beta(2.0, 3.0);
  const auto kb = kernel_spec::from_sieve_law(beta);
  auto g = testutil::rng(83);
  const int n = 400000;
  for (std::uint64_t i : {1ull, 5ull}) {
    std::vector<double> wi(n);
    for (int r = 0; r < n; ++r)
      wi[r] = std::pow(beta.draw(g).w, double(i));
    CHECK(std::abs(testutil::mean(wi) - kb.delay_prob(i)) <
          4.0 * testutil::sem(wi));
  }

  const auto kp = kernel_spec::from_sieve_law(w_law::point_mass(0.5));
  CHECK(kp.delay_prob(10) == doctest::Approx(std::pow(0.5, 10.0)));
  CHECK(kp.absorb_prob(10) == doctest::Approx(std::pow(0.5, 10.0)));
}

TEST_CASE("closed-form next-state sampling matches the analytic row") {
  auto g = testutil::rng(84);
  const int n = 200000;
  SUBCASE("uniform row") {
    const auto k = kernel_spec::from_sieve_law(w_law::uniform01());
    std::vector<std::uint64_t> xs(n);
    for (auto& x : xs) x = k.sample_next(5, g);
    CHECK(testutil::chisq_vs_pmf(xs, [](std::uint64_t j) {
            return j <= 5 ? 1.0 / 6.0 : 0.0;
          }) > 1e-4);
  }
  SUBCASE("point-mass row is binomial") {
    const auto k = kernel_spec::from_sieve_law(w_law::point_mass(0.4));
    std::vector<std::uint64_t> xs(n);
    for (auto& x : xs) x = k.sample_next(12, g);
    CHECK(testutil::chisq_vs_pmf(xs, [](std::uint64_t j) {
            if (j > 12) return 0.0;
            const double lb = std::lgamma(13.0) - std::lgamma(double(j) + 1) -
                              std::lgamma(13.0 - double(j));
            return std::exp(lb + double(j) * std::log(0.4) +
                            (12.0 - double(j)) * std::log(0.6));
          }) > 1e-4);
  }
  SUBCASE("jump chain excludes the diagonal") {
    const auto k = kernel_spec::from_sieve_law(w_law::beta(2.0, 3.0));
    for (int r = 0; r < 20000; ++r) {
      const auto j = k.sample_next_strict(7, g);
      REQUIRE(j < 7);
    }
  }
}

TEST_CASE("thinning-kernel zero decrements reproduce the empty-box law") {
  const int trials = 20000;
  auto g = testutil::rng(85);
  for (const auto& law :
       {w_law::uniform01(), w_law::beta(2.0, 3.0), w_law::point_mass(0.5)}) {
    CAPTURE(law.describe());
    const auto kernel = kernel_spec::from_sieve_law(law);
    std::vector<double> l_thin(trials);
    for (auto& v : l_thin)
      v = double(simulate_sieve_thinning(law, 100, g).l_empty);
    const auto z_chain = zero_dec_sample(kernel, 100, trials, 86, false);
    const auto z_rep = zero_dec_sample(kernel, 100, trials, 87, true);
    CHECK(ks_two_sample(l_thin, z_chain, 1e-3).pass);
    CHECK(ks_two_sample(l_thin, z_rep, 1e-3).pass);
    CHECK(ks_two_sample(z_chain, z_rep, 1e-3).pass);
  }
}

TEST_CASE("general absorption level") {
  const auto k = kernel_spec::from_sieve_law(w_law::uniform01(), 5);
  auto g = testutil::rng(88);
  // the chain never goes below the absorption level, both simulators agree
  const auto a = zero_dec_sample(k, 80, 8000, 89, false);
  const auto b = zero_dec_sample(k, 80, 8000, 90, true);
  CHECK(ks_two_sample(a, b, 1e-3).pass);
}

TEST_CASE("invalid kernels are rejected") {
  auto g = testutil::rng(91);
  // row does not sum to one
  const auto bad_sum = kernel_spec::from_rows([](std::uint64_t i) {
    return std::vector<double>(i + 1, 0.0);
  });
  CHECK_THROWS_AS((void)simulate_zero_decrements(bad_sum, 5, g),
                  std::invalid_argument);
  // negative mass
  const auto bad_neg = kernel_spec::from_rows([](std::uint64_t i) {
    std::vector<double> row(i + 1, 0.0);
    row[0] = 1.5;
    if (i >= 1) row[i] = -0.5;
    return row;
  });
  CHECK_THROWS_AS((void)simulate_zero_decrements(bad_neg, 5, g),
                  std::invalid_argument);
  // a transient state that cannot escape
  const auto stuck = kernel_spec::from_rows([](std::uint64_t i) {
    std::vector<double> row(i + 1, 0.0);
    row[i] = 1.0;
    return row;
  });
  CHECK_THROWS_AS((void)simulate_zero_decrements(stuck, 5, g),
                  std::invalid_argument);
  // no closed-form kernel for the heavy families
  CHECK_THROWS_AS(
      (void)kernel_spec::from_sieve_law(w_law::right_log_pareto(0.5, 1.0)),
      std::invalid_argument);
}

TEST_CASE("sampler-backed kernel with rejection jump chain") {
  // point-mass thinning expressed through a sampler
  const w_law law = w_law::point_mass(0.5);
  auto next = [](std::uint64_t i, philox4x32& rng) {
    std::uint64_t kept = 0;
    for (std::uint64_t b = 0; b < i; ++b)
      if (uniform_open01(rng) < 0.5) ++kept;
    return kept;
  };
  auto delay = [](std::uint64_t i) { return std::pow(0.5, double(i)); };
  auto absorb = [](std::uint64_t i) { return std::pow(0.5, double(i)); };
  const auto ks = kernel_spec::from_sampler(next, delay, absorb);
  const auto kc = kernel_spec::from_sieve_law(law);
  const auto a = zero_dec_sample(ks, 60, 8000, 92, false);
  const auto b = zero_dec_sample(kc, 60, 8000, 93, false);
  const auto c = zero_dec_sample(ks, 60, 8000, 94, true);
  CHECK(ks_two_sample(a, b, 1e-3).pass);
  CHECK(ks_two_sample(a, c, 1e-3).pass);
}
