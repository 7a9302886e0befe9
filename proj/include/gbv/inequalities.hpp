#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gbv/measures.hpp"
#include "gbv/seqclass.hpp"
#include "gbv/sequence.hpp"

namespace gbv {

enum class InequalityId { kEq8, kEq9, kLemma3, kLemma4, kEq7Ratio };
enum class CheckStatus { kPass, kFail, kInconclusive };

std::string to_string(InequalityId id);
std::string to_string(CheckStatus s);
InequalityId parse_inequality_id(const std::string& text);

struct InequalityReport {
  InequalityId inequality_id = InequalityId::kEq8;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Factor applied to rhs.
  double constant = 1.0;
  /// constant · rhs − lhs.
  double margin = 0.0;
  bool pass = false;
  CheckStatus status = CheckStatus::kFail;
  std::vector<std::string> truncation;
  /// lhs / rhs where the constant is unknown.
  std::optional<double> ratio;
};

/// Positive weights μ_n with closed-form tails.
struct MuFamily {
  enum class Kind { kGeometric, kPower } kind = Kind::kGeometric;
  /// r in (0, 1) for r^n, s > 1 for n^{-s}.
  double param = 0.5;

  double value(Index n) const;
  /// Σ_{k>=n} μ_k.
  Enclosure tail(Index n) const;
  /// Σ_{k=1}^{n} μ_k.
  double head(Index n) const;
  void validate() const;
};

struct WeightedPair {
  MuFamily mu;
  /// α_1, α_2, ...; zero past the end.
  std::vector<double> alpha;
  double p = 1.0;
};

/// Relative slack for the pass decision: pass ⇔ margin ≥ −tol · max(lhs, rhs).
inline constexpr double kInequalityTolerance = 1e-12;

/// eq8: Σ μ_n (Σ_{k≤n} α_k)^p ≤ p^p Σ μ_n^{1−p}(Σ_{k≥n} μ_k)^p α_n^p, eq9 with head and
/// tail swapped.
InequalityReport verify_hardy_littlewood(const WeightedPair& pair, InequalityId direction);

/// Σ_{j≥1} λ_{2^j n} ≤ 4M Σ_{k≥n} λ_k / k.
InequalityReport verify_lemma3(const CoefficientSequence& seq, Index n, double M);

/// n^{1−1/p} Σ_{k>[n/2]} λ_k/k against n^{−1}(Σ_{k<n} k^{2p−2}λ_k^p)^{1/p} +
/// (Σ_{k≥n} k^{p−2}λ_k^p)^{1/p}; passes when the ratio stays below ratio_cap. Throws PreconditionError when Σ n^{p−2} λ_n^p is not certified finite.
InequalityReport verify_lemma4(const CoefficientSequence& seq, double p, Index n,
                               double ratio_cap = 64.0);

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  /// Largest |lhs − rhs| / max(lhs, rhs) among p = 1 instances of eq8.
  double max_p1_relative_gap = 0.0;
  std::size_t p1_instances = 0;
  std::vector<nlohmann::json> failures;
};

/// Random WeightedPair instances: μ geometric or power, sparse α, p in [1, 4] (every 8th p = 1).
WeightedPair random_weighted_pair(std::uint64_t seed, std::size_t index);
SuiteReport run_hardy_littlewood_suite(InequalityId direction, std::size_t count,
                                       std::uint64_t seed);

/// Random generated sequences (monotone, n^a μ_n quasimonotone, rest bounded variation) checked for
/// the inclusions monotone ⇒ rbv ⇒ gbv and quasimonotone ⇒ gbv.
SuiteReport run_inclusion_suite(std::size_t count, std::uint64_t seed);
CoefficientSequence random_class_sequence(std::uint64_t seed, std::size_t index,
                                          std::string* family = nullptr);

enum class HarnessVerdict { kAgree, kDisagree, kInconclusive };
std::string to_string(HarnessVerdict v);

struct NormLadder {
  std::vector<double> x_min;
  /// ∫ over [x_min[i], x_min[i−1]] (first rung: [x_min[0], π]).
  std::vector<double> increments;
  std::vector<double> cumulative;
  double slope = 0.0;
  /// bounded (member) or growing.
  std::optional<bool> bounded;
  std::string note;
};

/// Cutoff ladder x_min = 10^{-4k}, k = 1..rungs, for x^{−γp}|φ|^p on (0, π].
NormLadder norm_ladder(const SeriesSpec& spec, const MeasureParams& params, int rungs = 10);

struct Theorem13Report {
  MeasureParams params;
  CriterionResult criterion;
  NormLadder ladder;
  HarnessVerdict verdict = HarnessVerdict::kInconclusive;
};

/// Criterion eq5 against the growth of the weighted norm as the cutoff shrinks.
Theorem13Report harness_theorem13(const CoefficientSequence& family, const MeasureParams& params,
                                  Parity parity = Parity::kCosine);

struct Theorem23Report {
  double p = 2.0;
  std::vector<Index> ns;
  std::vector<double> omega;
  std::vector<double> rhs;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double slope = 0.0;
  double ratio_cap = 50.0;
  bool pass = false;
};

/// ω(f, 1/n)_p / rhs_eq7(λ, p, n) over n_set.
Theorem23Report harness_theorem23(const CoefficientSequence& seq, double p,
                                  const std::vector<Index>& n_set, double ratio_cap = 50.0,
                                  int modulus_grid = 8);

struct Theorem3Report {
  int levels = 4;
  Index classify_horizon = 0;
  InclusionReport inclusion;
  /// (v_k, rbv ratio at v_k) for the block starts inside the horizon.
  std::vector<std::pair<Index, double>> rbv_at_blocks;
  bool rbv_strictly_increasing = false;
  double quasimonotone_alpha = 0.0;
  std::vector<std::pair<double, double>> grid;
  std::vector<CriterionResult> criteria;
  CheckStatus status = CheckStatus::kFail;
  std::vector<std::string> failures;
};

/// The counterexample sequence: gbv and quasimonotone member, rbv violated, eq5 convergent on grid.
Theorem3Report harness_theorem3(int levels, const std::vector<std::pair<double, double>>& grid);

nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const SuiteReport& r);
nlohmann::json to_json(const NormLadder& r);
nlohmann::json to_json(const Theorem13Report& r);
nlohmann::json to_json(const Theorem23Report& r);
nlohmann::json to_json(const Theorem3Report& r);

}  // namespace gbv
