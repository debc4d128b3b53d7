#include "sievelab/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace sievelab {

namespace {

constexpr std::uint64_t kStepCap = 10'000'000;

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// pmf ratio pi_{i,j+1}/pi_{i,j} for the closed-form thinning kernels
struct row_recurrence {
  double log_p0;                          // log pi_{i,0}
  std::function<double(std::uint64_t)> ratio;  // j -> p_{j+1}/p_j
};

row_recurrence make_recurrence(const w_law& law, std::uint64_t i) {
  const double id = static_cast<double>(i);
  if (std::holds_alternative<uniform01_params>(law.params())) {
    return {-std::log(id + 1.0), [](std::uint64_t) { return 1.0; }};
  }
  if (const auto* pm = std::get_if<point_mass_params>(&law.params())) {
    const double odds = pm->x / (1.0 - pm->x);
    return {id * std::log1p(-pm->x), [id, odds](std::uint64_t j) {
              const double jd = static_cast<double>(j);
              return (id - jd) / (jd + 1.0) * odds;
            }};
  }
  const auto& bp = std::get<beta_params>(law.params());
  const double a = bp.a, b = bp.b;
  return {log_beta(a, b + id) - log_beta(a, b),
          [id, a, b](std::uint64_t j) {
            const double jd = static_cast<double>(j);
            return (id - jd) / (jd + 1.0) * (a + jd) / (b + id - jd - 1.0);
          }};
}

// Inverse-CDF walk along a closed-form row. The prefix below the double
// range is tracked in log space; once representable the walk is linear.
// `skip_diag` excludes j == i (the jump chain), with `u` already scaled by
// the caller to the retained mass.
std::uint64_t walk_closed_row(const w_law& law, std::uint64_t i, double u,
                              bool skip_diag) {
  const row_recurrence rec = make_recurrence(law, i);
  double logp = rec.log_p0;
  double p = logp > -700.0 ? std::exp(logp) : 0.0;
  bool linear = p > 0.0;
  double cum = 0.0;
  std::uint64_t last = 0;
  for (std::uint64_t j = 0; j <= i; ++j) {
    if (!(skip_diag && j == i) && p > 0.0) {
      cum += p;
      last = j;
      if (cum >= u) return j;
    }
    if (j == i) break;
    const double r = rec.ratio(j);
    if (linear) {
      p *= r;
    } else {
      logp += std::log(r);
      if (logp > -700.0) {
        p = std::exp(logp);
        linear = true;
      }
    }
  }
  // numerical leakage at the far tail; return the last state with mass
  return last;
}

}  // namespace

kernel_spec kernel_spec::from_sieve_law(const w_law& law,
                                        std::uint64_t absorb_level) {
  if (!law.has_closed_form_kernel())
    throw std::invalid_argument(
        "kernel_spec: no closed-form thinning kernel for this family; "
        "use the thinning simulator directly");
  return kernel_spec(absorb_level, closed_form{law});
}

kernel_spec kernel_spec::from_rows(
    std::function<std::vector<double>(std::uint64_t)> rows,
    std::uint64_t absorb_level) {
  if (!rows) throw std::invalid_argument("kernel_spec: null row function");
  return kernel_spec(absorb_level, explicit_rows{std::move(rows)});
}

kernel_spec kernel_spec::from_sampler(
    std::function<std::uint64_t(std::uint64_t, philox4x32&)> next,
    std::function<double(std::uint64_t)> delay_prob,
    std::function<double(std::uint64_t)> absorb_prob,
    std::uint64_t absorb_level) {
  if (!next || !delay_prob)
    throw std::invalid_argument("kernel_spec: sampler pieces missing");
  return kernel_spec(absorb_level,
                     sampler{std::move(next), std::move(delay_prob),
                             std::move(absorb_prob)});
}

std::vector<double> kernel_spec::validated_row(std::uint64_t i) const {
  const auto& er = std::get<explicit_rows>(impl_);
  std::vector<double> row = er.rows(i);
  if (row.size() != i + 1)
    throw std::invalid_argument("kernel row must have entries 0..i");
  double sum = 0.0;
  for (double v : row) {
    if (!(v >= 0.0)) throw std::invalid_argument("kernel row entry < 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("kernel row does not sum to 1");
  if (i > level_ && !(row[i] < 1.0))
    throw std::invalid_argument(
        "kernel state above the absorption level cannot escape");
  return row;
}

double kernel_spec::delay_prob(std::uint64_t i) const {
  return std::visit(
      [&](const auto& impl) -> double {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, closed_form>) {
          // pi_{i,i} = E W^i
          const auto& law = impl.law;
          if (std::holds_alternative<uniform01_params>(law.params()))
            return 1.0 / (static_cast<double>(i) + 1.0);
          if (const auto* pm = std::get_if<point_mass_params>(&law.params()))
            return std::exp(static_cast<double>(i) * std::log(pm->x));
          const auto& bp = std::get<beta_params>(law.params());
          return std::exp(log_beta(bp.a + static_cast<double>(i), bp.b) -
                          log_beta(bp.a, bp.b));
        } else if constexpr (std::is_same_v<T, explicit_rows>) {
          return validated_row(i)[i];
        } else {
          return impl.delay(i);
        }
      },
      impl_);
}

double kernel_spec::absorb_prob(std::uint64_t i) const {
  return std::visit(
      [&](const auto& impl) -> double {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, closed_form>) {
          // sum of the row over j <= M
          const row_recurrence rec = make_recurrence(impl.law, i);
          double logp = rec.log_p0;
          double acc = 0.0;
          for (std::uint64_t j = 0;; ++j) {
            acc += logp > -700.0 ? std::exp(logp) : 0.0;
            if (j >= level_) break;
            logp += std::log(rec.ratio(j));
          }
          return acc;
        } else if constexpr (std::is_same_v<T, explicit_rows>) {
          const auto row = validated_row(i);
          double acc = 0.0;
          for (std::uint64_t j = 0; j <= level_ && j <= i; ++j) acc += row[j];
          return acc;
        } else {
          if (!impl.absorb)
            throw std::logic_error("kernel sampler lacks an absorb accessor");
          return impl.absorb(i);
        }
      },
      impl_);
}

std::uint64_t kernel_spec::sample_next(std::uint64_t i, philox4x32& rng) const {
  const std::uint64_t j = std::visit(
      [&](const auto& impl) -> std::uint64_t {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, closed_form>) {
          if (std::holds_alternative<uniform01_params>(impl.law.params())) {
            // uniform row: exact inverse CDF
            const double id = static_cast<double>(i);
            const double j = std::floor(uniform_open01(rng) * (id + 1.0));
            return std::min(i, static_cast<std::uint64_t>(j));
          }
          return walk_closed_row(impl.law, i, uniform_open01(rng), false);
        } else if constexpr (std::is_same_v<T, explicit_rows>) {
          const auto row = validated_row(i);
          double u = uniform_open01(rng);
          std::uint64_t last = 0;
          for (std::uint64_t j2 = 0; j2 <= i; ++j2) {
            if (row[j2] <= 0.0) continue;
            last = j2;
            u -= row[j2];
            if (u <= 0.0) return j2;
          }
          return last;
        } else {
          const std::uint64_t nxt = impl.next(i, rng);
          if (nxt > i)
            throw std::runtime_error("kernel sampler increased the state");
          return nxt;
        }
      },
      impl_);
  return j < level_ ? level_ : j;
}

std::uint64_t kernel_spec::sample_next_strict(std::uint64_t i,
                                              philox4x32& rng) const {
  if (i <= level_)
    throw std::invalid_argument("jump chain queried at the absorbing state");
  const std::uint64_t j = std::visit(
      [&](const auto& impl) -> std::uint64_t {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, closed_form>) {
          if (std::holds_alternative<uniform01_params>(impl.law.params())) {
            const double id = static_cast<double>(i);
            const double j = std::floor(uniform_open01(rng) * id);
            return std::min(i - 1, static_cast<std::uint64_t>(j));
          }
          const double keep = 1.0 - delay_prob(i);
          return walk_closed_row(impl.law, i, uniform_open01(rng) * keep,
                                 true);
        } else if constexpr (std::is_same_v<T, explicit_rows>) {
          const auto row = validated_row(i);
          double u = uniform_open01(rng) * (1.0 - row[i]);
          std::uint64_t last = 0;
          for (std::uint64_t j2 = 0; j2 < i; ++j2) {
            if (row[j2] <= 0.0) continue;
            last = j2;
            u -= row[j2];
            if (u <= 0.0) return j2;
          }
          return last;
        } else {
          // rejection on the raw sampler realizes the jump chain
          for (std::uint64_t tries = 0; tries < kStepCap; ++tries) {
            const std::uint64_t nxt = impl.next(i, rng);
            if (nxt > i)
              throw std::runtime_error("kernel sampler increased the state");
            if (nxt != i) return nxt;
          }
          throw std::runtime_error("jump-chain rejection loop stalled");
        }
      },
      impl_);
  return j < level_ ? level_ : j;
}

std::uint64_t simulate_zero_decrements(const kernel_spec& kernel,
                                       std::uint64_t n, philox4x32& rng) {
  if (n < kernel.absorb_level())
    throw std::invalid_argument("chain must start at or above the "
                                "absorption level");
  std::uint64_t state = n;
  std::uint64_t zeros = 0;
  std::uint64_t steps = 0;
  while (state > kernel.absorb_level()) {
    if (++steps > kStepCap)
      throw std::runtime_error("chain exceeded the step cap");
    const std::uint64_t next = kernel.sample_next(state, rng);
    if (next == state) ++zeros;
    state = next;
  }
  return zeros;
}

std::uint64_t simulate_zero_decrements_geomrep(const kernel_spec& kernel,
                                               std::uint64_t n,
                                               philox4x32& rng) {
  if (n < kernel.absorb_level())
    throw std::invalid_argument("chain must start at or above the "
                                "absorption level");
  std::uint64_t state = n;
  std::uint64_t zeros = 0;
  std::uint64_t steps = 0;
  while (state > kernel.absorb_level()) {
    if (++steps > kStepCap)
      throw std::runtime_error("chain exceeded the step cap");
    const double d = kernel.delay_prob(state);
    if (d > 0.0) zeros += geometric_count(rng, 1.0 - d);
    state = kernel.sample_next_strict(state, rng);
  }
  return zeros;
}

}  // namespace sievelab
