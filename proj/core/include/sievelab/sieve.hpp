#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sievelab/rng.hpp"
#include "sievelab/wlaw.hpp"

namespace sievelab {

/// Result of one occupancy trial: K_n occupied boxes, M_n index of the last
/// occupied box, L_n = M_n - K_n empty boxes within the occupancy range.
struct sieve_outcome {
  std::uint64_t k_occupied = 0;
  std::uint64_t m_range = 0;
  std::uint64_t l_empty = 0;
};

/// Trials abort after this many rounds; unreachable for valid laws.
inline constexpr std::uint64_t kSieveRoundCap = 10'000'000;

/// Round-by-round thinning simulation: each ball still in play after round
/// k-1 stays in play through round k with probability W_k and falls into
/// box k otherwise (box k has frequency W_1...W_{k-1}(1-W_k)). Handles n up
/// to ~9e15 via exact binomial thinning.
sieve_outcome simulate_sieve_thinning(const w_law& law, std::uint64_t n,
                                      philox4x32& rng);

/// Direct allocation: materializes the n uniforms and the stick-breaking
/// walk and counts box occupancies. Cross-validation oracle; n <= 1e6.
sieve_outcome simulate_sieve_direct(const w_law& law, std::uint64_t n,
                                    philox4x32& rng);

/// Poissonized scheme: throws Poisson(t) balls.
sieve_outcome simulate_poissonized(const w_law& law, double t,
                                   philox4x32& rng);

/// Counting core of the direct simulator, exposed for coupling tests:
/// `sorted_exp` holds the values |log U_i| in increasing order, `walk_sums`
/// the partial sums S_1 < S_2 < ... covering max(sorted_exp). Ball i lands
/// in box k iff S_{k-1} <= |log U_i| < S_k.
sieve_outcome sieve_count_direct(std::span<const double> sorted_exp,
                                 std::span<const double> walk_sums);

}  // namespace sievelab
