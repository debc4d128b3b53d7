#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "sievelab/rng.hpp"
#include "sievelab/wlaw.hpp"

namespace sievelab {

/// Transition description of a nonincreasing Markov chain on {M, M+1, ...}
/// with absorbing state M. Three backings:
///   - the closed-form thinning kernel pi_{i,j} = C(i,j) E W^j (1-W)^{i-j}
///     of a sieve law (uniform01 / beta / point mass);
///   - explicit finite rows;
///   - a next-state sampler plus a delay-probability accessor.
/// Mass on states below M is collapsed onto M.
class kernel_spec {
 public:
  /// Rows must be nonnegative, sum to 1, and put no mass above i; every
  /// transient state needs escape probability (pi_{i,i} < 1) so absorption
  /// is certain.
  static kernel_spec from_sieve_law(const w_law& law,
                                    std::uint64_t absorb_level = 0);
  static kernel_spec from_rows(
      std::function<std::vector<double>(std::uint64_t)> rows,
      std::uint64_t absorb_level = 0);
  static kernel_spec from_sampler(
      std::function<std::uint64_t(std::uint64_t, philox4x32&)> next,
      std::function<double(std::uint64_t)> delay_prob,
      std::function<double(std::uint64_t)> absorb_prob,
      std::uint64_t absorb_level = 0);

  std::uint64_t absorb_level() const { return level_; }

  /// pi_{i,i}
  double delay_prob(std::uint64_t i) const;
  /// pi_{i,M} (with sub-M mass collapsed)
  double absorb_prob(std::uint64_t i) const;

  /// Next state from pi_{i,.} (may equal i).
  std::uint64_t sample_next(std::uint64_t i, philox4x32& rng) const;
  /// Next state from the jump chain pi_{i,j}/(1 - pi_{i,i}), j < i.
  std::uint64_t sample_next_strict(std::uint64_t i, philox4x32& rng) const;

 private:
  struct closed_form {
    w_law law;
  };
  struct explicit_rows {
    std::function<std::vector<double>(std::uint64_t)> rows;
  };
  struct sampler {
    std::function<std::uint64_t(std::uint64_t, philox4x32&)> next;
    std::function<double(std::uint64_t)> delay;
    std::function<double(std::uint64_t)> absorb;
  };

  kernel_spec(std::uint64_t level,
              std::variant<closed_form, explicit_rows, sampler> impl)
      : level_(level), impl_(std::move(impl)) {}

  std::vector<double> validated_row(std::uint64_t i) const;

  std::uint64_t level_;
  std::variant<closed_form, explicit_rows, sampler> impl_;
};

/// Number of zero decrements of the chain started at n before absorption,
/// by direct simulation of the full chain.
std::uint64_t simulate_zero_decrements(const kernel_spec& kernel,
                                       std::uint64_t n, philox4x32& rng);

/// Same law via the jump-chain representation: run the strictly decreasing
/// chain and add an independent geometric dwell count at every transient
/// state visited.
std::uint64_t simulate_zero_decrements_geomrep(const kernel_spec& kernel,
                                               std::uint64_t n,
                                               philox4x32& rng);

}  // namespace sievelab
