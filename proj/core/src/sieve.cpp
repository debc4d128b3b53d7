#include "sievelab/sieve.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "sievelab/binomial.hpp"

namespace sievelab {

sieve_outcome simulate_sieve_thinning(const w_law& law, std::uint64_t n,
                                      philox4x32& rng) {
  sieve_outcome out;
  if (n == 0) return out;
  std::uint64_t remaining = n;
  std::uint64_t round = 0;
  while (remaining > 0) {
    if (++round > kSieveRoundCap)
      throw std::runtime_error("sieve trial exceeded the round cap");
    const w_draw w = law.draw(rng);
    const std::uint64_t kept = binomial_keep(remaining, w.w, w.one_minus_w, rng);
    const std::uint64_t dropped = remaining - kept;
    if (dropped == 0) {
      ++out.l_empty;
    } else {
      ++out.k_occupied;
    }
    remaining = kept;
    if (remaining == 0) out.m_range = round;
  }
  return out;
}

sieve_outcome sieve_count_direct(std::span<const double> sorted_exp,
                                 std::span<const double> walk_sums) {
  sieve_outcome out;
  if (sorted_exp.empty()) return out;
  std::size_t i = 0;
  double prev = 0.0;
  for (std::size_t k = 0; k < walk_sums.size() && i < sorted_exp.size(); ++k) {
    const double s = walk_sums[k];
    std::uint64_t count = 0;
    while (i < sorted_exp.size() && sorted_exp[i] >= prev &&
           sorted_exp[i] < s) {
      ++count;
      ++i;
    }
    if (count > 0) {
      ++out.k_occupied;
      out.m_range = k + 1;
    }
    prev = s;
  }
  if (i < sorted_exp.size())
    throw std::runtime_error("sieve walk does not cover all balls");
  out.l_empty = out.m_range - out.k_occupied;
  return out;
}

sieve_outcome simulate_sieve_direct(const w_law& law, std::uint64_t n,
                                    philox4x32& rng) {
  if (n > 1'000'000)
    throw std::invalid_argument(
        "simulate_sieve_direct: n is capped at 1e6 (materializes n uniforms)");
  sieve_outcome out;
  if (n == 0) return out;
  std::vector<double> e(n);
  for (auto& v : e) v = -std::log(uniform_open01(rng));
  std::sort(e.begin(), e.end());
  const double emax = e.back();
  std::vector<double> sums;
  double s = 0.0;
  std::uint64_t round = 0;
  do {
    if (++round > kSieveRoundCap)
      throw std::runtime_error("sieve trial exceeded the round cap");
    s += law.draw(rng).abs_log_w;
    sums.push_back(s);
  } while (s <= emax);
  return sieve_count_direct(e, sums);
}

sieve_outcome simulate_poissonized(const w_law& law, double t,
                                   philox4x32& rng) {
  if (!(t > 0.0))
    throw std::invalid_argument("simulate_poissonized: t must be positive");
  std::poisson_distribution<std::uint64_t> pois(t);
  const std::uint64_t n = pois(rng);
  if (n == 0) return sieve_outcome{};
  return simulate_sieve_thinning(law, n, rng);
}

}  // namespace sievelab
