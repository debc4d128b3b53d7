#include <doctest.h>

#include <vector>

#include "sievelab/rng.hpp"
#include "test_util.hpp"

using namespace sievelab;

TEST_CASE("philox streams are deterministic and distinct") {
  philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool all_equal_c = true, all_equal_d = true;
  for (int i = 0; i < 256; ++i) {
    const auto va = a();
    CHECK(va == b());
    all_equal_c = all_equal_c && (va == c());
    all_equal_d = all_equal_d && (va == d());
  }
  CHECK_FALSE(all_equal_c);
  CHECK_FALSE(all_equal_d);
}

TEST_CASE("philox output is uniform in the coarse sense") {
  philox4x32 g(1, 0);
  const int n = 200000;
  std::vector<double> u(n);
  for (auto& x : u) x = uniform_open01(g);
  const double m = testutil::mean(u);
  CHECK(std::abs(m - 0.5) < 4.0 * std::sqrt(1.0 / 12 / n));
  const double v = testutil::variance(u);
  CHECK(std::abs(v - 1.0 / 12) < 0.002);
  // serial correlation at lag 1
  double corr = 0.0;
  for (int i = 0; i + 1 < n; ++i)
    corr += (u[i] - 0.5) * (u[i + 1] - 0.5);
  corr /= (n - 1) * (1.0 / 12);
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("uniform_open01 stays strictly inside (0,1)") {
  philox4x32 g(9, 9);
  for (int i = 0; i < 1000000; ++i) {
    const double u = uniform_open01(g);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("exponential and pareto helpers match their tails") {
  philox4x32 g(3, 1);
  const int n = 400000;
  int exp_gt1 = 0, par_gt2 = 0;
  for (int i = 0; i < n; ++i) {
    if (exponential(g) > 1.0) ++exp_gt1;
    if (pareto(g, 0.5, 1.0) > 2.0) ++par_gt2;
  }
  const double p1 = std::exp(-1.0);
  CHECK(std::abs(exp_gt1 / double(n) - p1) < testutil::prop_bar(p1, n));
  const double p2 = std::pow(2.0, -0.5);
  CHECK(std::abs(par_gt2 / double(n) - p2) < testutil::prop_bar(p2, n));
}

TEST_CASE("geometric_count mean and edge cases") {
  philox4x32 g(5, 2);
  const double p = 0.3;
  const int n = 200000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += static_cast<double>(geometric_count(g, p));
  const double target = (1.0 - p) / p;
  CHECK(std::abs(s / n - target) < 0.03);
  CHECK(geometric_count(g, 1.0) == 0);
}
