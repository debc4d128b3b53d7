#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "sievelab/rng.hpp"

namespace testutil {

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double variance(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

/// 4-sigma binomial-proportion error bar.
inline double prop_bar(double p, double n) {
  return 4.0 * std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
}

/// Standard error of the sample mean.
inline double sem(std::span<const double> xs) {
  return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

/// Pearson chi-square p-value of integer draws against an arbitrary pmf,
/// pooling the tail so expected counts stay >= 5. pmf(v) must sum to 1 over
/// v = 0,1,2,...
inline double chisq_vs_pmf(std::span<const std::uint64_t> draws,
                           const std::function<double(std::uint64_t)>& pmf) {
  const double n = static_cast<double>(draws.size());
  std::uint64_t maxv = 0;
  for (auto d : draws) maxv = std::max(maxv, d);
  std::vector<double> obs(maxv + 2, 0.0);
  for (auto d : draws) obs[d] += 1.0;

  double stat = 0.0;
  int bins = 0;
  double tail_mass = 1.0;
  double tail_obs = n;
  std::uint64_t v = 0;
  for (; v <= maxv; ++v) {
    const double pv = pmf(v);
    if (n * pv < 5.0 || n * (tail_mass - pv) < 5.0) break;
    const double diff = obs[v] - n * pv;
    stat += diff * diff / (n * pv);
    ++bins;
    tail_mass -= pv;
    tail_obs -= obs[v];
  }
  const double diff = tail_obs - n * tail_mass;
  if (n * tail_mass > 0.0) {
    stat += diff * diff / (n * tail_mass);
    ++bins;
  }
  const double dof = bins - 1;
  if (dof < 1) return 1.0;
  return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

inline sievelab::philox4x32 rng(std::uint64_t stream = 0) {
  return sievelab::philox4x32(0x7e57, stream);
}

}  // namespace testutil
