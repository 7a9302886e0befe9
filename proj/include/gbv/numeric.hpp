#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gbv/error.hpp"

namespace gbv {

/// Closed interval [lo, hi] holding a quantity together with its certified error.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  static Enclosure exact(double v) { return {v, v}; }
  static Enclosure around(double mid, double radius) { return {mid - radius, mid + radius}; }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }

  Enclosure& operator+=(const Enclosure& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
  friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
  /// Scale by a nonnegative factor.
  Enclosure scaled(double c) const { return {lo * c, hi * c}; }
  /// Widen outward by a relative amount (rounding allowance).
  Enclosure padded(double rel) const {
    const double r = rel * std::max(std::abs(lo), std::abs(hi));
    return {lo - r, hi + r};
  }
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Σ_{k=a}^{b} k^t for 1 <= a <= b. Euler–Maclaurin for long ranges, direct otherwise.
Enclosure power_sum(Index a, Index b, double t);

/// Σ_{k>=a} k^t; empty when t >= -1 (divergent).
std::optional<Enclosure> power_sum_to_infinity(Index a, double t);

/// Riemann zeta on the real line, s != 1 (Euler–Maclaurin continuation; reflection for s < 0).
double zeta(double s);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of y on x. r2 is 1 for a perfectly flat response.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct Integral {
  double value = 0.0;
  double err = 0.0;
  std::size_t evaluations = 0;
};

/// Batch integrand: fills out[i] = f(xs[i]). Batching lets series evaluation share kernel passes.
using BatchIntegrand = std::function<void(std::span<const double> xs, std::span<double> out)>;

/// Adaptive Gauss–Kronrod (7/15) on [a, b].
Integral integrate_adaptive(const BatchIntegrand& f, double a, double b, double rel_tol,
                            double abs_tol, int max_depth = 30);

/// Integral over [a, b] with meshes graded geometrically toward the flagged endpoints.
/// Used for integrable endpoint singularities.
Integral integrate_graded(const BatchIntegrand& f, double a, double b, bool singular_left,
                          bool singular_right, double rel_tol, double abs_tol);

/// Integral over [a, b] (0 < a < b) in the variable u = log x, with panels no wider than a factor 2.
Integral integrate_log_graded(const BatchIntegrand& f, double a, double b, double rel_tol,
                              double abs_tol);

}  // namespace gbv
