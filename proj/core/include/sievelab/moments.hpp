#pragma once

#include <vector>

namespace sievelab {

/// Moments m_k = E X^k, k = 1..kmax, for X ~ geom(a) on {0,1,2,...},
/// via the recurrence m_1 = b, m_j = b (1 + sum_{i<j} C(j,i) m_i) with
/// b = (1-a)/a. kmax is capped at 64; accumulation is in long double.
std::vector<double> geometric_moments(double a, int kmax);

}  // namespace sievelab
