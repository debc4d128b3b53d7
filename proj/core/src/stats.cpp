#include "sievelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "sievelab/rng.hpp"

namespace sievelab {

namespace {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace

double kolmogorov_q(double z) {
  if (z <= 0.0) return 1.0;
  if (z < 0.2) return 1.0;  // Q(0.2) differs from 1 by < 1e-21
  if (z > 7.0) return 0.0;
  if (z < 0.755) {
    // theta-function form, accurate for small z
    const double v = 1.0 / (z * z);
    const double w = 2.50662827463;  // sqrt(2 pi)
    return 1.0 - (w / z) * (std::exp(-std::numbers::pi * std::numbers::pi *
                                     v / 8.0) +
                            std::exp(-9.0 * std::numbers::pi *
                                     std::numbers::pi * v / 8.0) +
                            std::exp(-25.0 * std::numbers::pi *
                                     std::numbers::pi * v / 8.0));
  }
  double q = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * z * z);
    q += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::max(0.0, q);
}

test_report ks_two_sample(std::span<const double> xs,
                          std::span<const double> ys, double threshold) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  const double z = std::sqrt(na * nb / (na + nb)) * d;
  test_report r;
  r.name = "ks_two_sample";
  r.statistic = d;
  r.n1 = na;
  r.n2 = nb;
  r.p_value = kolmogorov_q(z);
  r.threshold = threshold;
  r.pass = r.p_value > threshold;
  return r;
}

test_report ks_one_sample_normal(std::span<const double> xs,
                                 double threshold) {
  if (xs.empty())
    throw std::invalid_argument("ks_one_sample_normal: empty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = normal_cdf(a[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  test_report r;
  r.name = "ks_one_sample_normal";
  r.statistic = d;
  r.n1 = n;
  r.p_value = kolmogorov_q(std::sqrt(n) * d);
  r.threshold = threshold;
  r.pass = r.p_value > threshold;
  return r;
}

std::vector<std::uint64_t> histogram(std::span<const std::uint64_t> values) {
  std::uint64_t maxv = 0;
  for (auto v : values) maxv = std::max(maxv, v);
  if (maxv > 100'000'000)
    throw std::invalid_argument("histogram: values too large to bin");
  std::vector<std::uint64_t> h(maxv + 1, 0);
  for (auto v : values) ++h[v];
  return h;
}

test_report chisq_geometric(std::span<const std::uint64_t> counts, double a,
                            double threshold) {
  if (!(a > 0.0) || !(a < 1.0))
    throw std::invalid_argument("chisq_geometric: a must lie in (0,1)");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total < 100)
    throw std::invalid_argument(
        "chisq_geometric: needs at least 100 observations");
  const double n = static_cast<double>(total);

  // individual bins while both the bin and the remaining tail keep
  // expected counts >= 5; everything after is one pooled tail bin
  std::vector<double> expected;
  std::vector<double> observed;
  double tail_mass = 1.0;  // P{X >= j}
  std::size_t j = 0;
  for (;; ++j) {
    const double pj = a * std::pow(1.0 - a, static_cast<double>(j));
    const double rest = tail_mass - pj;
    if (n * pj < 5.0 || n * rest < 5.0) break;
    expected.push_back(n * pj);
    observed.push_back(
        j < counts.size() ? static_cast<double>(counts[j]) : 0.0);
    tail_mass = rest;
  }
  double tail_obs = 0.0;
  for (std::size_t v = j; v < counts.size(); ++v)
    tail_obs += static_cast<double>(counts[v]);
  expected.push_back(n * tail_mass);
  observed.push_back(tail_obs);

  if (expected.size() < 2)
    throw std::invalid_argument(
        "chisq_geometric: too few observations for any binning");

  double stat = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const double dof = static_cast<double>(expected.size() - 1);
  test_report r;
  r.name = "chisq_geometric";
  r.statistic = stat;
  r.n1 = dof;
  r.n2 = n;
  r.p_value = boost::math::gamma_q(dof / 2.0, stat / 2.0);
  r.threshold = threshold;
  r.pass = r.p_value > threshold;
  return r;
}

std::complex<double> empirical_cf(std::span<const double> xs, double u) {
  if (xs.empty()) throw std::invalid_argument("empirical_cf: empty sample");
  double re = 0.0, im = 0.0;
  for (double x : xs) {
    re += std::cos(u * x);
    im += std::sin(u * x);
  }
  const double n = static_cast<double>(xs.size());
  return {re / n, im / n};
}

summary_stats summarize(std::span<const double> xs,
                        std::uint64_t bootstrap_seed) {
  if (xs.empty()) throw std::invalid_argument("summarize: empty sample");
  summary_stats s;
  s.n = xs.size();
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  s.mean = mean;
  s.variance = xs.size() > 1 ? m2 / (n - 1.0) : 0.0;
  const double sd2 = m2 / n;
  s.skewness = sd2 > 0.0 ? (m3 / n) / std::pow(sd2, 1.5) : 0.0;

  // percentile bootstrap for the mean, 1000 seeded resamples
  const int resamples = 1000;
  std::vector<double> means(resamples);
  philox4x32 rng(bootstrap_seed, 0xb007);
  for (int r = 0; r < resamples; ++r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::uint64_t idx = rng() % xs.size();
      acc += xs[idx];
    }
    means[r] = acc / n;
  }
  std::sort(means.begin(), means.end());
  s.mean_lo = means[static_cast<std::size_t>(0.025 * resamples)];
  s.mean_hi = means[static_cast<std::size_t>(0.975 * resamples) - 1];
  return s;
}

}  // namespace sievelab
