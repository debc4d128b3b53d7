#include "sievelab/moments.hpp"

#include <stdexcept>

namespace sievelab {

std::vector<double> geometric_moments(double a, int kmax) {
  if (!(a > 0.0) || !(a <= 1.0))
    throw std::invalid_argument(
        "geometric_moments: a must lie in (0,1]; a = 0 has no finite "
        "moments");
  if (kmax < 1 || kmax > 64)
    throw std::invalid_argument("geometric_moments: kmax must be in [1,64]");

  const long double b = (1.0L - static_cast<long double>(a)) / a;
  std::vector<long double> m(static_cast<std::size_t>(kmax) + 1, 0.0L);
  // Pascal row for C(j, i), grown in place
  std::vector<long double> choose{1.0L};
  for (int j = 1; j <= kmax; ++j) {
    choose.push_back(1.0L);
    for (int i = j - 1; i >= 1; --i) choose[i] += choose[i - 1];
    long double acc = 1.0L;
    for (int i = 1; i < j; ++i) acc += choose[i] * m[i];
    m[j] = b * acc;
  }
  std::vector<double> out;
  out.reserve(kmax);
  for (int j = 1; j <= kmax; ++j) out.push_back(static_cast<double>(m[j]));
  return out;
}

}  // namespace sievelab
