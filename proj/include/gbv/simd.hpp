#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gbv::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Best instruction set this binary and CPU support.
Isa detected_isa();

/// ISA used by the free functions below. Defaults to detected_isa(), overridable with the
/// GBV_SIMD environment variable ("scalar" or "avx2") or set_active_isa().
Isa active_isa();

/// Throws ParameterError if `isa` is not available on this machine.
void set_active_isa(Isa isa);

bool isa_available(Isa isa);

/// Accumulates cos_acc[i] += Σ_j coeffs[j] cos((first + j) x_i) and the sine analogue.
/// Angles are reseeded exactly every kReseedStride terms; between seeds a rotation recurrence runs.
inline constexpr std::size_t kReseedStride = 64;

struct KernelTable {
  void (*trig_sums)(const double* coeffs, std::size_t len, std::uint64_t first, const double* xs,
                    std::size_t nx, double* cos_acc, double* sin_acc);
  /// Σ_{i<len-1} |v[i] - v[i+1]|.
  double (*abs_diff_sum)(const double* v, std::size_t len);
  /// max_i w_i (v[i+1] - v[i]) / v[i] with w_i = first + i (index-scaled) or 1.
  /// v[i] == 0 < v[i+1] yields +inf; v[i] == v[i+1] == 0 is skipped. Returns -inf when empty.
  double (*max_growth)(const double* v, std::size_t len, std::uint64_t first, bool index_scaled);
};

const KernelTable& kernels(Isa isa);
inline const KernelTable& kernels() { return kernels(active_isa()); }

void trig_partial_sums(std::span<const double> coeffs, std::uint64_t first,
                       std::span<const double> xs, std::span<double> cos_acc,
                       std::span<double> sin_acc);
double abs_diff_sum(std::span<const double> v);
double max_growth(std::span<const double> v, std::uint64_t first, bool index_scaled);

namespace detail {
/// Exact-product seed: cos/sin of n * x with the rounding error of the product folded back in.
void seed_angle(std::uint64_t n, double x, double& c, double& s);
extern const KernelTable kScalarTable;
#ifdef GBV_HAVE_AVX2_KERNELS
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace gbv::simd
