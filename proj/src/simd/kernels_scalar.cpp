// Scalar reference kernels. The AVX2 variants must agree with these up to summation order.

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbv/simd.hpp"

namespace gbv::simd {

namespace detail {

void seed_angle(std::uint64_t n, double x, double& c, double& s) {
  const double nd = static_cast<double>(n);
  const double hi = nd * x;
  const double lo = std::fma(nd, x, -hi);
  const double ch = std::cos(hi), sh = std::sin(hi);
  const double cl = std::cos(lo), sl = std::sin(lo);
  c = ch * cl - sh * sl;
  s = sh * cl + ch * sl;
}

}  // namespace detail

namespace {

void trig_sums_scalar(const double* coeffs, std::size_t len, std::uint64_t first,
                      const double* xs, std::size_t nx, double* cos_acc, double* sin_acc) {
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double x = xs[ix];
    const double step_c = std::cos(x), step_s = std::sin(x);
    double acc_c = 0.0, acc_s = 0.0;
    for (std::size_t base = 0; base < len; base += kReseedStride) {
      double c, s;
      detail::seed_angle(first + base, x, c, s);
      const std::size_t end = std::min(len, base + kReseedStride);
      for (std::size_t j = base; j < end; ++j) {
        acc_c += coeffs[j] * c;
        acc_s += coeffs[j] * s;
        const double nc = c * step_c - s * step_s;
        s = s * step_c + c * step_s;
        c = nc;
      }
    }
    cos_acc[ix] += acc_c;
    sin_acc[ix] += acc_s;
  }
}

double abs_diff_sum_scalar(const double* v, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < len; ++i) acc += std::abs(v[i] - v[i + 1]);
  return acc;
}

double max_growth_scalar(const double* v, std::size_t len, std::uint64_t first,
                         bool index_scaled) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < len; ++i) {
    const double a = v[i], b = v[i + 1];
    double g;
    if (a > 0.0) {
      const double w = index_scaled ? static_cast<double>(first + i) : 1.0;
      g = w * ((b - a) / a);
    } else if (b > 0.0) {
      g = std::numeric_limits<double>::infinity();
    } else {
      continue;
    }
    best = std::max(best, g);
  }
  return best;
}

}  // namespace

const KernelTable detail::kScalarTable = {trig_sums_scalar, abs_diff_sum_scalar,
                                          max_growth_scalar};

}  // namespace gbv::simd
