#pragma once

#include <cstdint>

#include "sievelab/rng.hpp"

namespace sievelab {

/// Exact Binomial(n, p) draw for n up to ~9e15 (counts stay below 2^53).
///
/// Small-mean cases use geometric waiting times; the rest uses the BTRD
/// transformed-rejection sampler. No normal approximation anywhere: the
/// sieve statistics count exact zero-decrement rounds, which a continuous
/// approximation would corrupt.
std::uint64_t binomial_draw(std::uint64_t n, double p, philox4x32& rng);

/// Survivors of a thinning round: Bin(n, p_keep) where q_drop is the exact
/// complement of p_keep (both fields of a w_draw). Uses whichever side is
/// below 1/2 so extreme probabilities keep full precision.
std::uint64_t binomial_keep(std::uint64_t n, double p_keep, double q_drop,
                            philox4x32& rng);

}  // namespace sievelab
