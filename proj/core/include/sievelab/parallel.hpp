#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "sievelab/rng.hpp"

namespace sievelab {

/// Runs `fn(rng, trial)` for trial = 0..trials-1 over a worker pool.
/// Trial i always sees the stream (seed, i), so results are identical for
/// any thread count; they are written into slot i of the returned vector.
template <class T, class Fn>
std::vector<T> run_trials(std::uint64_t seed, std::uint64_t trials,
                          unsigned threads, Fn fn) {
  std::vector<T> results(trials);
  if (trials == 0) return results;
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < trials; ++i) {
      philox4x32 rng = trial_rng(seed, i);
      results[i] = fn(rng, i);
    }
    return results;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= trials) return;
        philox4x32 rng = trial_rng(seed, i);
        results[i] = fn(rng, i);
      }
    } catch (...) {
      std::scoped_lock lk(error_mu);
      if (!error) error = std::current_exception();
      next.store(trials);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace sievelab
