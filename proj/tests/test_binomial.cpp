#include <doctest.h>

#include <cmath>
#include <vector>

#include "sievelab/binomial.hpp"
#include "test_util.hpp"

using namespace sievelab;

namespace {

double log_binom_pmf(std::uint64_t n, double p, std::uint64_t k) {
  const double nd = double(n), kd = double(k);
  return std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1) +
         kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

void check_against_pmf(std::uint64_t n, double p, int draws,
                       std::uint64_t stream) {
  auto g = testutil::rng(stream);
  std::vector<std::uint64_t> xs(draws);
  for (auto& x : xs) x = binomial_draw(n, p, g);
  const double pval = testutil::chisq_vs_pmf(
      xs, [n, p](std::uint64_t k) {
        return k > n ? 0.0 : std::exp(log_binom_pmf(n, p, k));
      });
  CAPTURE(n);
  CAPTURE(p);
  CHECK(pval > 1e-4);
}

}  // namespace

TEST_CASE("edge cases") {
  auto g = testutil::rng(20);
  CHECK(binomial_draw(0, 0.5, g) == 0);
  CHECK(binomial_draw(100, 0.0, g) == 0);
  CHECK(binomial_draw(100, 1.0, g) == 100);
  for (int i = 0; i < 1000; ++i) {
    const auto v = binomial_draw(10, 0.5, g);
    CHECK(v <= 10);
  }
}

TEST_CASE("exact law on the waiting-time path") {
  check_against_pmf(50, 0.1, 200000, 21);   // np = 5
  check_against_pmf(30, 0.45, 200000, 22);  // small n, p near 1/2
  check_against_pmf(40, 0.9, 200000, 23);   // complement flip
}

TEST_CASE("exact law on the BTRD path") {
  check_against_pmf(200, 0.3, 300000, 24);    // np = 60
  check_against_pmf(1000, 0.013, 300000, 25); // np = 13, near the switch
  check_against_pmf(5000, 0.5, 300000, 26);   // symmetric, large npq
  check_against_pmf(300, 0.97, 300000, 27);   // flip into BTRD
}

TEST_CASE("huge n: mean and variance scale exactly") {
  auto g = testutil::rng(28);
  const std::uint64_t n = 1000000000000ull;  // 1e12
  const double p = 0.5;
  const int trials = 20000;
  std::vector<double> xs(trials);
  for (auto& x : xs) x = double(binomial_draw(n, p, g));
  const double mean = testutil::mean(xs);
  const double npd = double(n) * p;
  CHECK(std::abs(mean - npd) < 5.0 * testutil::sem(xs));
  const double var = testutil::variance(xs);
  const double npq = npd * (1.0 - p);
  CHECK(var / npq > 0.9);
  CHECK(var / npq < 1.1);
}

TEST_CASE("huge n with tiny p stays in the cheap path") {
  auto g = testutil::rng(29);
  const std::uint64_t n = 1000000000000000ull;  // 1e15
  const double p = 3e-15;                       // np = 3
  const int trials = 200000;
  std::vector<std::uint64_t> xs(trials);
  for (auto& x : xs) x = binomial_draw(n, p, g);
  // Poisson(3) limit is exact to ~1e-15 relative here; chi-square against it
  const double pval = testutil::chisq_vs_pmf(xs, [](std::uint64_t k) {
    return std::exp(-3.0 + double(k) * std::log(3.0) -
                    std::lgamma(double(k) + 1));
  });
  CHECK(pval > 1e-4);
}

TEST_CASE("binomial_keep uses the exact complement") {
  auto g = testutil::rng(30);
  // survival probability within one ulp of 1: expected drop count n*q
  const double q = 1e-12;
  const double w = 1.0 - q;
  const std::uint64_t n = 1000000000000ull;  // n*q = 1
  const int trials = 100000;
  double dropped = 0.0;
  for (int i = 0; i < trials; ++i)
    dropped += double(n - binomial_keep(n, w, q, g));
  const double mean = dropped / trials;
  CHECK(std::abs(mean - 1.0) < 0.02);
  // degenerate ends
  CHECK(binomial_keep(1000, 1.0, 0.0, g) == 1000);
  CHECK(binomial_keep(1000, 0.0, 1.0, g) == 0);
}
