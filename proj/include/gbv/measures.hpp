#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbv/sequence.hpp"
#include "gbv/series.hpp"

namespace gbv {

/// p in (1, ∞), 1/p − 1 < gamma < 1/p.
struct MeasureParams {
  double p = 2.0;
  double gamma = 0.0;
  double quad_tol = 1e-8;
  double x_min = 1e-4;

  /// Throws ParameterError when the parameters leave the admissible range.
  void validate() const;
  static MeasureParams make(double p, double gamma);
};

enum class CriterionVariant { kEq3, kEq4, kEq5, kEq6 };
enum class CriterionVerdict { kConverges, kDiverges, kInconclusive };

std::string to_string(CriterionVariant v);
std::string to_string(CriterionVerdict v);
CriterionVariant parse_criterion_variant(const std::string& text);

struct CriterionResult {
  CriterionVariant variant = CriterionVariant::kEq5;
  Index horizon = 0;
  /// Contribution of [2^j, 2^{j+1}) ∩ [1, horizon].
  std::vector<double> block_sums;
  double total_through = 0.0;
  std::optional<Enclosure> tail_bound;
  /// Inner sums (eq3/eq4) computed only up to a cap without a certified remainder.
  bool inner_truncated = false;
  double block_slope = 0.0;
  CriterionVerdict verdict = CriterionVerdict::kInconclusive;
};

/// Σ n^{p+pγ−2} λ_n^p (eq5), with the inner sums Σ_{k≥n}|Δλ_k| (eq3) or Σ_{k≥n} λ_k/k (eq4)
/// in place of λ_n. eq6 is eq5 with γ = 0.
CriterionResult criterion_sum(const CoefficientSequence& seq, const MeasureParams& params,
                              CriterionVariant variant, Index N);

struct NormResult {
  double norm = 0.0;
  double err = 0.0;
  double x_min = 0.0;
  std::size_t evaluations = 0;
};

/// (∫_{x_min}^{π} |x^{−γ} φ(x)|^p dx)^{1/p}.
NormResult weighted_lp_norm(const SeriesSpec& spec, const MeasureParams& params);

/// ∫_{a}^{b} x^{−γp} |φ(x)|^p dx, the piece used by cutoff ladders.
Integral weighted_lp_integral(const SeriesSpec& spec, double p, double gamma, double a, double b,
                              double rel_tol, double* series_err_max = nullptr);

struct ModulusResult {
  double omega = 0.0;
  double h_at_max = 0.0;
  double err = 0.0;
  std::vector<double> hs;
  std::vector<double> values;
};

/// (∫_0^{2π} |f(x+h) − f(x)|^p dx)^{1/p} for one shift h.
double shifted_difference_norm(const SeriesSpec& spec, double p, double h, double rel_tol,
                               double* err = nullptr);

/// Max over h = t 2^{−i/2}, i < grid, of the shifted difference norm.
ModulusResult modulus_lp(const SeriesSpec& spec, double p, double t, int grid);

struct Rhs7Result {
  double value = 0.0;
  double head = 0.0;
  double tail = 0.0;
  /// False when no certified tail exists; tail is then a partial sum to the horizon.
  bool tail_certified = true;
};

/// n^{−1}(Σ_{k<n} k^{2p−2}λ_k^p)^{1/p} + (Σ_{k≥n} k^{p−2}λ_k^p)^{1/p}.
Rhs7Result rhs_eq7(const CoefficientSequence& seq, double p, Index n);

/// Σ_{k=a}^{b} k^s λ_k^q from the family's closed form, or summed term by term.
Enclosure weighted_sum(const CoefficientSequence& seq, Index a, Index b, double s, double q);

nlohmann::json to_json(const MeasureParams& params);
nlohmann::json to_json(const CriterionResult& result);
nlohmann::json to_json(const NormResult& result);
nlohmann::json to_json(const ModulusResult& result);
nlohmann::json to_json(const Rhs7Result& result);

}  // namespace gbv
