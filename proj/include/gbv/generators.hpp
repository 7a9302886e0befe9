#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gbv/sequence.hpp"

namespace gbv {

/// Largest sequence that may be held densely in memory or written to CSV.
inline constexpr Index kMaxDenseLength = 1'000'000;

/// λ_n = scale · n^{-beta}.
CoefficientSequence gen_power(double beta, double scale = 1.0);

/// λ_n = 0 for every n.
CoefficientSequence gen_zero();

/// Materialized sequence λ_1..λ_N; values must be finite and nonnegative.
CoefficientSequence make_explicit(std::vector<double> values, std::string name = "explicit");

/// Exact value numerator / (factor · 2^pow2).
struct DyadicRational {
  Index numerator = 0;
  Index factor = 1;
  int pow2 = 0;
  double to_double() const;
};

/// Block parameters of the counterexample sequence with v_m = 2^(2^m).
struct LeindlerParams {
  int levels = 4;

  /// v_m as an exact integer; m in [1, 5].
  static Index v(int m);
  /// log2 v_m = 2^m, valid for every m >= 1.
  static int log2_v(int m) { return 1 << m; }
  /// Block containing n >= 4: the m with v_m <= n < v_{m+1}.
  static int block_of(Index n);
  /// λ_n as an exact dyadic rational.
  static DyadicRational value(Index n);
  /// Assigned to n = 1, 2, 3 (below v_1): λ_4 = 1/16.
  static double head_value() { return 1.0 / 16.0; }
  /// v_{levels+1}, or 2^64 - 1 when that does not fit.
  Index horizon() const;
};

/// The two-sided monotone counterexample: λ_{v_m} = 1/(m² v_{m+1}), λ_n = n/(m² v_m v_{m+1}) up to
/// n = m v_m, then constant 1/(m v_{m+1}) until v_{m+1} - 1. levels in [1, 5].
CoefficientSequence gen_leindler(int levels);

/// Reads the `n,value` CSV format. Throws LoadError naming the offending line.
CoefficientSequence load_sequence(const std::filesystem::path& path);
CoefficientSequence parse_sequence_csv(std::istream& in, const std::string& name);

/// Writes λ_1..λ_max_n in the `n,value` format. max_n is capped at kMaxDenseLength.
void write_sequence_csv(const CoefficientSequence& seq, Index max_n, std::ostream& out);

}  // namespace gbv
