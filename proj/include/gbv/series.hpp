#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbv/sequence.hpp"

namespace gbv {

enum class Strategy { kDirect, kAccelerated };

enum class SeriesMethod {
  kZero,           // sine at 0 or π
  kFiniteSum,      // all nonzero terms summed
  kClosedForm,     // analytic expression supplied by the family
  kAbelIterated,   // repeated summation by parts, completely monotone coefficients
  kAbelBound,      // partial sum + (λ_{N+1} + Σ_{k>N} |Δλ_k|) π/x
  kPartialSum,     // direct(N), tail bound as available
};

std::string to_string(SeriesMethod m);

/// f(x) = b_0 + Σ λ_n cos nx  or  g(x) = Σ λ_n sin nx.
struct SeriesSpec {
  Parity parity = Parity::kCosine;
  CoefficientSequence coefficients;
  double constant_term = 0.0;
  Strategy strategy = Strategy::kAccelerated;
  /// Terms summed by the direct strategy.
  Index direct_terms = 1024;
  double tolerance = 1e-10;
  /// GBV constant M, used for a dyadic tail bound when the variation tail is not known otherwise.
  std::optional<double> gbv_constant;
  bool use_closed_form = true;
  /// Accept err <= tol * max(1, |value|) instead of err <= tol (for integrands with singularities).
  bool relative_tolerance = false;
  /// Largest partial sum the accelerated strategy may form.
  Index max_terms = Index{1} << 24;

  explicit SeriesSpec(CoefficientSequence seq, Parity par = Parity::kCosine)
      : parity(par), coefficients(std::move(seq)) {}
};

struct SeriesValue {
  double value = 0.0;
  /// Certified bound on |value − φ(x)|; +inf when no tail bound is available (direct strategy).
  double err = 0.0;
  Index terms = 0;
  SeriesMethod method = SeriesMethod::kPartialSum;
};

/// D_k(x) = 1/2 + Σ_{j=1}^k cos jx.
double dirichlet_kernel(Index k, double x);

/// Pointwise value with error bound. x must lie in (−2π, 2π].
/// Throws NumericalFailure when the accelerated strategy cannot reach `tol`.
SeriesValue eval_series(const SeriesSpec& spec, double x, double tol);
inline SeriesValue eval_series(const SeriesSpec& spec, double x) {
  return eval_series(spec, x, spec.tolerance);
}

/// Same as eval_series at every point; partial sums are shared across points.
std::vector<SeriesValue> eval_series_batch(const SeriesSpec& spec, std::span<const double> xs,
                                           double tol);

/// Upper bound for Σ_{k>=n} |Δλ_k|: exact runs where possible, else M Σ_j λ_{2^j n}.
std::optional<double> variation_tail_bound(const CoefficientSequence& seq, Index n,
                                           std::optional<double> gbv_constant);

}  // namespace gbv
