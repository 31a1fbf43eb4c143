#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace qsc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// log(sum(exp(v))) with a fixed left-to-right accumulation order,
/// so results are bit-reproducible regardless of thread count.
inline double log_sum_exp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;  // empty or all -inf
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

inline double log_sum_exp(const std::vector<double>& v) {
  return log_sum_exp(std::span<const double>(v));
}

/// ln n! via lgamma.
inline double log_factorial(std::int64_t n) { return std::lgamma(double(n) + 1.0); }

/// Bisection for a continuous monotone-decreasing f on [lo, hi] with
/// f(lo) >= 0 >= f(hi). Returns the root to absolute tolerance tol in x.
template <class F>
double bisect_decreasing(F&& f, double lo, double hi, double tol = 1e-14,
                         int max_iter = 200) {
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Golden-section maximization of a unimodal f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsc
