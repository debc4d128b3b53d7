#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sievelab {

/// Outcome of one goodness-of-fit test. `pass` is exactly
/// p_value > threshold; p-values come from the documented asymptotic null
/// (Kolmogorov distribution, chi-square upper tail).
struct test_report {
  std::string name;
  double statistic = 0.0;
  double n1 = 0.0;  // first sample size, or degrees of freedom
  double n2 = 0.0;  // second sample size (0 when unused)
  double p_value = 1.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Asymptotic Kolmogorov survival function Q(z) = 2 sum (-1)^{j-1} e^{-2 j^2 z^2}.
double kolmogorov_q(double z);

/// Two-sample Kolmogorov-Smirnov with the effective-size factor
/// sqrt(mn/(m+n)).
test_report ks_two_sample(std::span<const double> xs,
                          std::span<const double> ys, double threshold);

/// One-sample KS against the standard normal CDF (erfc-based).
test_report ks_one_sample_normal(std::span<const double> xs,
                                 double threshold);

/// Pearson chi-square of an integer histogram against geom(a) on
/// {0,1,2,...}, with tail bins pooled so every expected count is >= 5.
/// counts[v] holds the number of observations equal to v.
test_report chisq_geometric(std::span<const std::uint64_t> counts, double a,
                            double threshold);

/// Histogram of small nonnegative integers.
std::vector<std::uint64_t> histogram(std::span<const std::uint64_t> values);

/// Mean of e^{iux} over the sample.
std::complex<double> empirical_cf(std::span<const double> xs, double u);

struct summary_stats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;  // moment estimator
  double mean_lo = 0.0, mean_hi = 0.0;  // bootstrap percentile 95% CI
};

/// Moment summary with a seeded 1000-resample bootstrap interval for the
/// mean.
summary_stats summarize(std::span<const double> xs,
                        std::uint64_t bootstrap_seed = 0x5eed);

}  // namespace sievelab
