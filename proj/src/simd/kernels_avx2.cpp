// AVX2/FMA variants. Compiled with -mavx2 -mfma and only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbv/simd.hpp"

namespace gbv::simd {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// Four x values per lane group; one coefficient broadcast per step.
void trig_sums_x4(const double* coeffs, std::size_t len, std::uint64_t first, const double* xs,
                  double* cos_acc, double* sin_acc) {
  alignas(32) double sc[4], ss[4], c0[4], s0[4];
  for (int l = 0; l < 4; ++l) {
    sc[l] = std::cos(xs[l]);
    ss[l] = std::sin(xs[l]);
  }
  const __m256d step_c = _mm256_load_pd(sc), step_s = _mm256_load_pd(ss);
  __m256d acc_c = _mm256_setzero_pd(), acc_s = _mm256_setzero_pd();
  for (std::size_t base = 0; base < len; base += kReseedStride) {
    for (int l = 0; l < 4; ++l) detail::seed_angle(first + base, xs[l], c0[l], s0[l]);
    __m256d c = _mm256_load_pd(c0), s = _mm256_load_pd(s0);
    const std::size_t end = std::min(len, base + kReseedStride);
    for (std::size_t j = base; j < end; ++j) {
      const __m256d a = _mm256_broadcast_sd(coeffs + j);
      acc_c = _mm256_fmadd_pd(a, c, acc_c);
      acc_s = _mm256_fmadd_pd(a, s, acc_s);
      const __m256d nc = _mm256_fmsub_pd(c, step_c, _mm256_mul_pd(s, step_s));
      s = _mm256_fmadd_pd(s, step_c, _mm256_mul_pd(c, step_s));
      c = nc;
    }
  }
  alignas(32) double oc[4], os[4];
  _mm256_store_pd(oc, acc_c);
  _mm256_store_pd(os, acc_s);
  for (int l = 0; l < 4; ++l) {
    cos_acc[l] += oc[l];
    sin_acc[l] += os[l];
  }
}

// One x; lanes hold four consecutive indices, stepping by 4x.
void trig_sums_n4(const double* coeffs, std::size_t len, std::uint64_t first, double x,
                  double* cos_acc, double* sin_acc) {
  const __m256d step_c = _mm256_set1_pd(std::cos(4.0 * x));
  const __m256d step_s = _mm256_set1_pd(std::sin(4.0 * x));
  __m256d acc_c = _mm256_setzero_pd(), acc_s = _mm256_setzero_pd();
  alignas(32) double c0[4], s0[4];
  const std::size_t quads = len / 4 * 4;
  for (std::size_t base = 0; base < quads; base += kReseedStride) {
    for (int l = 0; l < 4; ++l) detail::seed_angle(first + base + l, x, c0[l], s0[l]);
    __m256d c = _mm256_load_pd(c0), s = _mm256_load_pd(s0);
    const std::size_t end = std::min(quads, base + kReseedStride);
    for (std::size_t j = base; j < end; j += 4) {
      const __m256d a = _mm256_loadu_pd(coeffs + j);
      acc_c = _mm256_fmadd_pd(a, c, acc_c);
      acc_s = _mm256_fmadd_pd(a, s, acc_s);
      const __m256d nc = _mm256_fmsub_pd(c, step_c, _mm256_mul_pd(s, step_s));
      s = _mm256_fmadd_pd(s, step_c, _mm256_mul_pd(c, step_s));
      c = nc;
    }
  }
  double tc = hsum(acc_c), ts = hsum(acc_s);
  for (std::size_t j = quads; j < len; ++j) {
    double c, s;
    detail::seed_angle(first + j, x, c, s);
    tc += coeffs[j] * c;
    ts += coeffs[j] * s;
  }
  *cos_acc += tc;
  *sin_acc += ts;
}

void trig_sums_avx2(const double* coeffs, std::size_t len, std::uint64_t first, const double* xs,
                    std::size_t nx, double* cos_acc, double* sin_acc) {
  std::size_t ix = 0;
  for (; ix + 4 <= nx; ix += 4) {
    trig_sums_x4(coeffs, len, first, xs + ix, cos_acc + ix, sin_acc + ix);
  }
  for (; ix < nx; ++ix) trig_sums_n4(coeffs, len, first, xs[ix], cos_acc + ix, sin_acc + ix);
}

double abs_diff_sum_avx2(const double* v, std::size_t len) {
  if (len < 2) return 0.0;
  const std::size_t pairs = len - 1;
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= pairs; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(v + i + 1));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double total = hsum(acc);
  for (; i < pairs; ++i) total += std::abs(v[i] - v[i + 1]);
  return total;
}

double max_growth_avx2(const double* v, std::size_t len, std::uint64_t first,
                       bool index_scaled) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (len < 2) return neg_inf;
  const std::size_t pairs = len - 1;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d floor_v = _mm256_set1_pd(neg_inf);
  __m256d best = floor_v;
  std::size_t i = 0;
  for (; i + 4 <= pairs; i += 4) {
    const __m256d a = _mm256_loadu_pd(v + i);
    const __m256d b = _mm256_loadu_pd(v + i + 1);
    __m256d g = _mm256_div_pd(_mm256_sub_pd(b, a), a);
    if (index_scaled) {
      const __m256d w = _mm256_set_pd(
          static_cast<double>(first + i + 3), static_cast<double>(first + i + 2),
          static_cast<double>(first + i + 1), static_cast<double>(first + i));
      g = _mm256_mul_pd(w, g);
    }
    const __m256d skip = _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_EQ_OQ),
                                       _mm256_cmp_pd(b, zero, _CMP_EQ_OQ));
    g = _mm256_blendv_pd(g, floor_v, skip);
    best = _mm256_max_pd(best, g);
  }
  double out = hmax(best);
  for (; i < pairs; ++i) {
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
    out = std::max(out, g);
  }
  return out;
}

}  // namespace

const KernelTable detail::kAvx2Table = {trig_sums_avx2, abs_diff_sum_avx2, max_growth_avx2};

}  // namespace gbv::simd
