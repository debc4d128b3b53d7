#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace sievelab {

/// Philox4x32-10 counter-based generator.
///
/// A stream is addressed by (key, stream_id): `key` is the experiment's
/// master seed and `stream_id` the trial index, so trial i sees the same
/// numbers no matter how trials are batched over threads. Satisfies
/// UniformRandomBitGenerator (64-bit output, two outputs per block).
class philox4x32 {
 public:
  using result_type = std::uint64_t;

  explicit philox4x32(std::uint64_t key = 0, std::uint64_t stream_id = 0)
      : key0_(static_cast<std::uint32_t>(key)),
        key1_(static_cast<std::uint32_t>(key >> 32)),
        stream_(stream_id) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (have_ == 0) refill();
    const int i = 2 - have_;
    --have_;
    return out_[i];
  }

  std::uint64_t stream_id() const { return stream_; }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(block_);
    std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    out_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
    out_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
    ++block_;
    have_ = 2;
  }

  std::uint32_t key0_, key1_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> out_{};
  int have_ = 0;
};

/// Stream for trial `trial` of an experiment seeded with `seed`.
inline philox4x32 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return philox4x32(seed, trial);
}

/// Uniform draw on the open interval (0,1); endpoints never returned.
template <class Rng>
double uniform_open01(Rng& rng) {
  for (;;) {
    const std::uint64_t bits = rng() >> 11;  // 53 random bits
    if (bits != 0) return static_cast<double>(bits) * 0x1.0p-53;
  }
}

/// Standard exponential divided by `rate`.
template <class Rng>
double exponential(Rng& rng, double rate = 1.0) {
  return -std::log(uniform_open01(rng)) / rate;
}

/// Pareto with tail P{X > x} = (x/xm)^(-index) for x >= xm.
template <class Rng>
double pareto(Rng& rng, double index, double xm) {
  return xm * std::pow(uniform_open01(rng), -1.0 / index);
}

/// Failures before the first success, success probability `p` in (0,1].
template <class Rng>
std::uint64_t geometric_count(Rng& rng, double p) {
  if (p >= 1.0) return 0;
  const double g = std::log(uniform_open01(rng)) / std::log1p(-p);
  // g >= 0; guard against pathological p values blowing up the cast
  if (g >= 9.0e18) return static_cast<std::uint64_t>(9.0e18);
  return static_cast<std::uint64_t>(g);
}

}  // namespace sievelab
