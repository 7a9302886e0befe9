#include <atomic>
#include <cstdlib>
#include <string>

#include "gbv/error.hpp"
#include "gbv/simd.hpp"

namespace gbv::simd {

namespace {

bool probe_avx2() {
#if defined(GBV_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool cpu_has_avx2() {
  static const bool has = probe_avx2();
  return has;
}

Isa initial_isa() {
  Isa isa = detected_isa();
  if (const char* env = std::getenv("GBV_SIMD")) {
    const std::string v(env);
    if (v == "scalar") isa = Isa::kScalar;
    if (v == "avx2" && isa_available(Isa::kAvx2)) isa = Isa::kAvx2;
  }
  return isa;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::kScalar || cpu_has_avx2(); }

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw ParameterError("instruction set not available: " + std::string(isa_name(isa)));
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels(Isa isa) {
#ifdef GBV_HAVE_AVX2_KERNELS
  if (isa == Isa::kAvx2 && cpu_has_avx2()) return detail::kAvx2Table;
#endif
  (void)isa;
  return detail::kScalarTable;
}

void trig_partial_sums(std::span<const double> coeffs, std::uint64_t first,
                       std::span<const double> xs, std::span<double> cos_acc,
                       std::span<double> sin_acc) {
  if (cos_acc.size() < xs.size() || sin_acc.size() < xs.size()) {
    throw ParameterError("trig_partial_sums: output spans shorter than x batch");
  }
  kernels().trig_sums(coeffs.data(), coeffs.size(), first, xs.data(), xs.size(), cos_acc.data(),
                      sin_acc.data());
}

double abs_diff_sum(std::span<const double> v) { return kernels().abs_diff_sum(v.data(), v.size()); }

double max_growth(std::span<const double> v, std::uint64_t first, bool index_scaled) {
  return kernels().max_growth(v.data(), v.size(), first, index_scaled);
}

}  // namespace gbv::simd
