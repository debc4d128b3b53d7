#include "sievelab/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sievelab/quad.hpp"

namespace sievelab {

namespace {
// Walks abort past this many epochs; guards degenerate increment laws.
constexpr std::size_t kWalkCap = 200'000'000;
}  // namespace

stationary_delay_sampler::stationary_delay_sampler(const w_law& law)
    : mode_(mode::grid), law_(law) {
  mu_ = law.mu();
  if (!std::isfinite(mu_))
    throw std::domain_error(
        "stationary delay: E|log W| = inf, no stationary version exists");

  if (std::holds_alternative<uniform01_params>(law.params())) {
    // integrated tail of Exp(1) is Exp(1)
    mode_ = mode::exponential;
    return;
  }
  if (const auto* pm = std::get_if<point_mass_params>(&law.params())) {
    // integrated tail of a point mass at c is uniform(0, c)
    mode_ = mode::uniform;
    width_ = -std::log(pm->x);
    return;
  }

  // bracketing grid with roughly equal integrated-tail mass per cell; the
  // sharp inverse comes from bisection on the analytic integrated tail
  const double cell_mass = mu_ / 512.0;
  xs_.push_back(0.0);
  cum_.push_back(0.0);
  double x = 0.0;
  while (true) {
    const double tail = law.log_tail_left(x);
    if (tail <= 1e-18) break;
    const double next = x + cell_mass / tail;
    xs_.push_back(next);
    cum_.push_back(law.integrated_log_tail_left(next));
    x = next;
    if (xs_.size() > 100'000)
      throw std::domain_error(
          "stationary delay: integrated-tail grid would be unbounded "
          "(tail decays too slowly)");
  }
  // total mass must match mu (both are int_0^inf of the tail); heavy tails
  // lose a sliver past the 1e-18 cutoff
  if (cum_.back() > mu_ * (1.0 + 1e-9) || cum_.back() < mu_ * (1.0 - 1e-4))
    throw std::runtime_error(
        "stationary delay: integrated tail does not reach mu");
  mu_ = cum_.back();  // grid-consistent total for exact inversion
}

double stationary_delay_sampler::invert(double target) const {
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
  std::size_t k = static_cast<std::size_t>(it - cum_.begin());
  if (k == 0) return xs_.front();
  if (k >= cum_.size()) return xs_.back();
  double lo = xs_[k - 1], hi = xs_[k];
  // bisection on the analytic integrated tail, absolute tolerance 1e-10
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (law_.integrated_log_tail_left(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double stationary_delay_sampler::operator()(philox4x32& rng) const {
  const double u = uniform_open01(rng);
  switch (mode_) {
    case mode::exponential:
      return -std::log(u);
    case mode::uniform:
      return u * width_;
    case mode::grid:
      return invert(u * mu_);
  }
  return 0.0;
}

double stationary_delay_sampler::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  switch (mode_) {
    case mode::exponential:
      return -std::expm1(-x);
    case mode::uniform:
      return std::min(1.0, x / width_);
    case mode::grid: {
      if (x >= xs_.back()) return 1.0;
      return std::min(1.0, law_.integrated_log_tail_left(x) / mu_);
    }
  }
  return 0.0;
}

namespace {

template <class Increment>
walk_path run_walk(double t, double start, Increment inc) {
  if (t < 0.0) throw std::invalid_argument("simulate_walk: horizon t < 0");
  walk_path path;
  path.horizon = t;
  double s = start;
  path.sums.push_back(s);
  while (s <= t) {
    if (path.sums.size() > kWalkCap)
      throw std::runtime_error("walk exceeded the epoch cap");
    s += inc();
    path.sums.push_back(s);
  }
  path.count = path.sums.size() - 1;
  return path;
}

}  // namespace

walk_path simulate_walk(const w_law& law, double t, philox4x32& rng,
                        bool stationary,
                        const stationary_delay_sampler* delay) {
  if (!stationary) {
    return run_walk(t, 0.0, [&]() { return law.draw(rng).abs_log_w; });
  }
  std::optional<stationary_delay_sampler> local;
  if (delay == nullptr) {
    local.emplace(law);
    delay = &*local;
  }
  return run_walk(t, (*delay)(rng),
                  [&]() { return law.draw(rng).abs_log_w; });
}

walk_path simulate_walk(const pair_law& pair, double t, philox4x32& rng) {
  return run_walk(t, 0.0, [&]() { return pair.sample(rng).xi; });
}

shot_noise_c_sampler::shot_noise_c_sampler(const w_law& law, double t,
                                           bool stationary)
    : law_(law),
      t_(t),
      stationary_(stationary),
      table_(law, t + 1.0),
      k_t_(k_of(law, t)),
      mu_(law.mu()) {
  if (!(t > 0.0))
    throw std::invalid_argument("shot_noise_c: t must be positive");
  if (stationary_) delay_.emplace(law_);
}

walk_path shot_noise_c_sampler::draw_path(philox4x32& rng) const {
  return simulate_walk(law_, t_, rng, stationary_,
                       delay_ ? &*delay_ : nullptr);
}

double shot_noise_c_sampler::eval_on_path(const walk_path& path) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < path.count; ++k)
    acc += table_(t_ - path.sums[k]);
  return acc;
}

double shot_noise_c_sampler::operator()(philox4x32& rng) const {
  return eval_on_path(draw_path(rng));
}

shot_noise_sample shot_noise_v(const pair_law& pair, double t,
                               philox4x32& rng) {
  if (!(t > 0.0))
    throw std::invalid_argument("shot_noise_v: t must be positive");
  shot_noise_sample out;
  out.t = t;
  const bool analytic = pair.has_analytic_eta_tail();
  double r = 0.0;
  double epoch = 0.0;
  while (epoch <= t) {
    if (out.n_renewals > kWalkCap)
      throw std::runtime_error("shot-noise walk exceeded the epoch cap");
    ++out.n_renewals;
    const pair_draw d = pair.sample(rng);
    if (epoch + d.eta > t) ++out.v_count;
    if (analytic) r += pair.eta_tail(t - epoch);
    epoch += d.xi;
  }
  if (analytic) out.r_center = r;
  return out;
}

}  // namespace sievelab
