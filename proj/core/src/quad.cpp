#include "sievelab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sievelab {

namespace {

using gk = boost::math::quadrature::gauss_kronrod<double, 15>;

struct piece_result {
  double value;
  double error;
};

piece_result integrate_piece(const std::function<double(double)>& f, double a,
                             double b) {
  piece_result r{};
  r.value = gk::integrate(f, a, b, 15, 1e-12, &r.error);
  return r;
}

// The error estimates are conservative; accept when the accumulated
// estimate meets the absolute tolerance, scaled by the magnitude of the
// result for large integrals.
void check_tolerance(double total, double err, double abs_tol) {
  if (err <= abs_tol * (1.0 + std::abs(total))) return;
  throw std::runtime_error("quadrature failed to reach tolerance");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, const std::vector<double>& breaks) {
  if (!(a <= b)) throw std::invalid_argument("integrate: a > b");
  if (a == b) return 0.0;
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const piece_result r = integrate_piece(f, pts[i], pts[i + 1]);
    total += r.value;
    err += r.error;
  }
  check_tolerance(total, err, abs_tol);
  return total;
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol, const std::vector<double>& breaks) {
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const piece_result r = integrate_piece(f, pts[i], pts[i + 1]);
    total += r.value;
    err += r.error;
  }
  double tail_err = 0.0;
  total += gk::integrate(f, pts.back(),
                         std::numeric_limits<double>::infinity(), 15, 1e-12,
                         &tail_err);
  err += tail_err;
  check_tolerance(total, err, abs_tol);
  return total;
}

}  // namespace sievelab
