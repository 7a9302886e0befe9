#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbv/sequence.hpp"

namespace gbv {

enum class ClassId { kMonotone, kQuasimonotone, kRbv, kGbv };
enum class Verdict { kMember, kViolated };
enum class Trend { kBounded, kGrowing, kIndeterminate };

inline constexpr std::array<ClassId, 4> kAllClasses = {ClassId::kMonotone, ClassId::kQuasimonotone,
                                                       ClassId::kRbv, ClassId::kGbv};

std::string to_string(ClassId id);
std::string to_string(Verdict v);
std::string to_string(Trend t);
/// Parses "monotone", "quasimonotone", "rbv", "gbv".
ClassId parse_class_id(const std::string& text);

struct Violation {
  Index m = 0;
  double ratio = 0.0;
};

struct LadderPoint {
  Index m = 0;
  double ratio = 0.0;
};

struct ClassCertificate {
  ClassId class_id = ClassId::kGbv;
  Index horizon = 0;
  double sup_ratio = 0.0;
  Index witness_m = 1;
  Verdict verdict = Verdict::kMember;
  Trend trend = Trend::kBounded;
  double slope = 0.0;
  double r2 = 0.0;
  std::vector<Violation> violations;
  /// Per-m ratios behind the verdict (not part of the certificate document).
  std::vector<LadderPoint> ladder;
  std::vector<std::string> warnings;
};

enum class NonNullPolicy { kWarn, kReject };

struct ClassifyOptions {
  /// Ladder points per octave.
  int density = 2;
  /// Last index used by tail_variation; defaults to the sequence horizon.
  std::optional<Index> rbv_cap;
  NonNullPolicy non_null = NonNullPolicy::kWarn;
};

/// λ_n − λ_{n+1}.
double forward_difference(const CoefficientSequence& seq, Index n);

/// Σ_{n=m}^{2m} |Δλ_n|.
double block_variation(const CoefficientSequence& seq, Index m);

struct TailVariation {
  double value = 0.0;
  /// cap < horizon: value is only a lower bound for the infinite tail.
  bool truncated = false;
};

/// Σ_{n=m}^{min(cap, horizon-1)} |Δλ_n|.
TailVariation tail_variation(const CoefficientSequence& seq, Index m, Index cap);

/// m = floor(2^j (1 + i/density)), deduplicated, 1 <= m <= horizon.
std::vector<Index> geometric_ladder(Index horizon, int density);

/// Whether λ decays along n = 2^j (regression slope of log λ clearly negative), or is finitely
/// supported.
bool looks_null(const CoefficientSequence& seq);

ClassCertificate classify(const CoefficientSequence& seq, ClassId class_id, Index horizon,
                          const ClassifyOptions& options = {});

struct InclusionReport {
  std::vector<ClassCertificate> certificates;  // in kAllClasses order
  bool consistent = true;
  std::vector<std::string> inconsistencies;

  const ClassCertificate& get(ClassId id) const;
};

/// Certificates for every class plus the check monotone ⇒ rbv ⇒ gbv, quasimonotone ⇒ gbv.
InclusionReport inclusion_report(const CoefficientSequence& seq, Index horizon,
                                 const ClassifyOptions& options = {});

nlohmann::json to_json(const ClassCertificate& cert);
nlohmann::json to_json(const InclusionReport& report);

}  // namespace gbv
