#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sievelab/asymptotics.hpp"
#include "sievelab/pair_law.hpp"
#include "sievelab/rng.hpp"
#include "sievelab/wlaw.hpp"

namespace sievelab {

/// A renewal path truncated at its horizon: sums[k] <= horizon for
/// k < count, and sums[count] is the first overshoot (always stored).
/// Non-stationary paths start at S_0 = 0; stationary ones at the delayed
/// first epoch.
struct walk_path {
  std::vector<double> sums;
  double horizon = 0.0;
  std::size_t count = 0;  // N(horizon)
};

/// Inverse-CDF sampler of the integrated-tail (stationary delay) law
///   P{S0 <= x} = mu^{-1} int_0^x P{|log W| > y} dy.
/// Closed form for the exponential and constant cases; otherwise bisection
/// on a cached cumulative-quadrature grid, refined to 1e-10.
class stationary_delay_sampler {
 public:
  explicit stationary_delay_sampler(const w_law& law);

  double operator()(philox4x32& rng) const;
  double cdf(double x) const;
  double mu() const { return mu_; }

 private:
  enum class mode { exponential, uniform, grid };
  mode mode_;
  w_law law_;
  double mu_ = 0.0;
  double width_ = 0.0;            // uniform mode
  std::vector<double> xs_, cum_;  // grid mode

  double invert(double target) const;
};

/// Random walk with increments |log W|; `stationary` delays the first epoch.
walk_path simulate_walk(const w_law& law, double t, philox4x32& rng,
                        bool stationary = false,
                        const stationary_delay_sampler* delay = nullptr);

/// Random walk with increments xi from the pair law.
walk_path simulate_walk(const pair_law& pair, double t, philox4x32& rng);

/// Shot-noise sum C(t) = sum phi(t - S_k) over S_k <= t (or its stationary
/// twin). phi is tabulated once at construction; sampling and path
/// evaluation are then read-only and thread-safe.
class shot_noise_c_sampler {
 public:
  shot_noise_c_sampler(const w_law& law, double t, bool stationary);

  double operator()(philox4x32& rng) const;
  double eval_on_path(const walk_path& path) const;  // deterministic
  walk_path draw_path(philox4x32& rng) const;

  double t() const { return t_; }
  double k_t() const { return k_t_; }
  double mu() const { return mu_; }

 private:
  w_law law_;
  double t_;
  bool stationary_;
  phi_table table_;
  double k_t_, mu_;
  std::optional<stationary_delay_sampler> delay_;
};

/// One trial of the mark-coverage count V(t) with its random centering
/// R = sum G(t - S_{k-1}) over epochs <= t. r_center is absent when the
/// pair law has no analytic mark tail.
struct shot_noise_sample {
  std::uint64_t v_count = 0;
  std::optional<double> r_center;
  std::uint64_t n_renewals = 0;
  double t = 0.0;
};

shot_noise_sample shot_noise_v(const pair_law& pair, double t,
                               philox4x32& rng);

}  // namespace sievelab
