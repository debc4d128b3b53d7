#include "sievelab/binomial.hpp"

#include <cmath>
#include <stdexcept>

namespace sievelab {

namespace {

// Stirling correction delta(k+1) where k! = sqrt(2 pi) k^{k+1/2} e^{-k+delta}.
double stirling_fc(std::uint64_t k) {
  static const double table[10] = {
      0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
      0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
      0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
      0.008330563433362871};
  if (k < 10) return table[k];
  const double r = 1.0 / static_cast<double>(k + 1);
  const double r2 = r * r;
  return (1.0 / 12 - (1.0 / 360 - (1.0 / 1260) * r2) * r2) * r;
}

// Successes in n Bernoulli(p) trials by summing geometric waiting times;
// expected cost O(np + 1).
std::uint64_t binomial_waiting(std::uint64_t n, double p, philox4x32& rng) {
  std::uint64_t sum = 0, x = 0;
  for (;;) {
    const std::uint64_t gap = geometric_count(rng, p) + 1;
    if (gap > n - sum) break;  // overflow-safe form of sum + gap > n
    sum += gap;
    ++x;
  }
  return x;
}

// BTRD (Hoermann's transformed rejection with decomposition), exact for
// p <= 1/2 and np >= 10.
std::uint64_t binomial_btrd(std::uint64_t n_u, double p, philox4x32& rng) {
  const double n = static_cast<double>(n_u);
  const double q = 1.0 - p;
  const double np = n * p;
  const double r = p / q;
  const double nr = (n + 1.0) * r;
  const double npq = np * q;
  const double sq = std::sqrt(npq);
  const double b = 1.15 + 2.53 * sq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = np + 0.5;
  const double alpha = (2.83 + 5.1 / b) * sq;
  const double vr = 0.92 - 4.2 / b;
  const double urvr = 0.86 * vr;
  const std::uint64_t m = static_cast<std::uint64_t>((n + 1.0) * p);

  for (;;) {
    double v = uniform_open01(rng);
    double u;
    if (v <= urvr) {
      u = v / vr - 0.43;
      return static_cast<std::uint64_t>(
          std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u + c));
    }
    if (v >= vr) {
      u = uniform_open01(rng) - 0.5;
    } else {
      u = v / vr - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = vr * uniform_open01(rng);
    }
    const double us = 0.5 - std::abs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + c);
    if (kd < 0.0 || kd > n) continue;
    const std::uint64_t k = static_cast<std::uint64_t>(kd);
    v = v * alpha / (a / (us * us) + b);
    const std::uint64_t km = k > m ? k - m : m - k;

    if (km <= 15) {
      // evaluate the pmf ratio directly
      double f = 1.0;
      if (m < k) {
        for (std::uint64_t i = m + 1; i <= k; ++i)
          f *= nr / static_cast<double>(i) - r;
      } else if (m > k) {
        for (std::uint64_t i = k + 1; i <= m; ++i)
          v *= nr / static_cast<double>(i) - r;
      }
      if (v <= f) return k;
      continue;
    }

    // squeeze tests on log scale, then the full Stirling comparison
    v = std::log(v);
    const double kmd = static_cast<double>(km);
    const double rho =
        (kmd / npq) * (((kmd / 3.0 + 0.625) * kmd + 1.0 / 6.0) / npq + 0.5);
    const double t = -kmd * kmd / (2.0 * npq);
    if (v < t - rho) return k;
    if (v > t + rho) continue;

    const double md = static_cast<double>(m);
    const double nm = n - md + 1.0;
    const double h = (md + 0.5) * std::log((md + 1.0) / (r * nm)) +
                     stirling_fc(m) + stirling_fc(n_u - m);
    const double kdd = static_cast<double>(k);
    const double nk = n - kdd + 1.0;
    const double bound = h + (n + 1.0) * std::log(nm / nk) +
                         (kdd + 0.5) * std::log(nk * r / (kdd + 1.0)) -
                         stirling_fc(k) - stirling_fc(n_u - k);
    if (v <= bound) return k;
  }
}

}  // namespace

std::uint64_t binomial_draw(std::uint64_t n, double p, philox4x32& rng) {
  if (n > 9000000000000000ull)
    throw std::invalid_argument("binomial_draw: n exceeds exact-count range");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("binomial_draw: p must lie in [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial_draw(n, 1.0 - p, rng);
  const double np = static_cast<double>(n) * p;
  if (np < 10.0 || n < 100) return binomial_waiting(n, p, rng);
  return binomial_btrd(n, p, rng);
}

std::uint64_t binomial_keep(std::uint64_t n, double p_keep, double q_drop,
                            philox4x32& rng) {
  if (q_drop <= 0.5) return n - binomial_draw(n, q_drop, rng);
  return binomial_draw(n, p_keep, rng);
}

}  // namespace sievelab
