#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "gbv/error.hpp"
#include "gbv/numeric.hpp"

namespace gbv {

enum class SequenceKind { kExplicit, kRuleBased };

enum class Parity { kCosine, kSine };

/// Power-law majorants valid for every k >= the index passed to SequenceModel::envelope():
///   λ_k <= lam_coef k^{-theta},  Σ_{j>=k} |Δλ_j| <= var_coef k^{-theta},
///   Σ_{j>=k} λ_j / j <= tail_coef k^{-theta}   (tail_coef = +inf when unknown).
struct DecayEnvelope {
  double theta = 0.0;
  double lam_coef = 0.0;
  double var_coef = 0.0;
  double tail_coef = 0.0;
};

struct ClosedFormValue {
  double value = 0.0;
  double err = 0.0;
};

/// Immutable description of a nonnegative coefficient sequence λ_1, λ_2, ...
///
/// Only horizon() and value() are mandatory. The optional hooks expose structure that lets the
/// analysis avoid touching every index: monotone runs, closed-form weighted sums, a decay
/// envelope beyond any index, and closed-form trigonometric sums.
class SequenceModel {
 public:
  virtual ~SequenceModel() = default;

  virtual SequenceKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual nlohmann::json describe() const = 0;
  virtual Index horizon() const = 0;
  /// λ_n for 1 <= n <= horizon(). Callers check the range.
  virtual double value(Index n) const = 0;

  /// Largest e <= horizon() such that λ is monotone (either direction) on [n, e].
  virtual Index run_end(Index n) const;
  /// Contiguous storage of λ_1..λ_horizon when the sequence is materialized.
  virtual std::span<const double> dense() const { return {}; }
  /// λ_n = 0 for every n > horizon().
  virtual bool finitely_supported() const { return false; }
  /// All iterated differences Δ^j λ are nonnegative (and tend to zero).
  virtual bool completely_monotone() const { return false; }
  /// The family is declared to tend to zero.
  virtual bool declared_null() const { return true; }

  /// Σ_{k=a}^{b} k^s λ_k^q in closed form, 1 <= a <= b <= horizon().
  virtual std::optional<Enclosure> range_sum(Index a, Index b, double s, double q) const;
  /// Σ_{k>=m} k^s λ_k^q over the whole (conceptually infinite) sequence.
  virtual std::optional<Enclosure> tail_sum(Index m, double s, double q) const;
  /// Σ_{k>=horizon()} |λ_k - λ_{k+1}| including whatever lies past the horizon.
  virtual std::optional<Enclosure> variation_beyond_horizon() const;
  virtual std::optional<DecayEnvelope> envelope(Index from) const;
  /// Σ λ_n cos(nx) or Σ λ_n sin(nx) for 0 < x <= π, when a closed form is known.
  virtual std::optional<ClosedFormValue> series_closed_form(Parity parity, double x) const;
};

/// Value-semantic handle on a shared immutable SequenceModel.
class CoefficientSequence {
 public:
  explicit CoefficientSequence(std::shared_ptr<const SequenceModel> model);

  SequenceKind kind() const { return model_->kind(); }
  std::string name() const { return model_->name(); }
  Index horizon() const { return model_->horizon(); }
  nlohmann::json describe() const { return model_->describe(); }
  const SequenceModel& model() const { return *model_; }

  /// λ_n; throws OutOfRangeError outside [1, horizon].
  double value_at(Index n) const;

  /// Writes λ_first .. λ_{first+out.size()-1}.
  void fill(Index first, std::span<double> out) const;

  /// Σ_{n=a}^{b-1} |λ_n - λ_{n+1}| for 1 <= a <= b <= horizon.
  double variation(Index a, Index b) const;

  /// Σ_{k>=n} |Δλ_k| over the whole sequence; empty when nothing certifies the part past the
  /// horizon.
  std::optional<Enclosure> variation_to_infinity(Index n) const;

 private:
  std::shared_ptr<const SequenceModel> model_;
};

}  // namespace gbv
