#include "gbv/seqclass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbv/simd.hpp"

namespace gbv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kChunk = 4096;
constexpr std::size_t kMaxRecordedViolations = 64;

// Trend thresholds on the running-supremum envelope of the ladder ratios.
constexpr double kSlopeThreshold = 0.1;
constexpr double kR2Threshold = 0.8;
constexpr std::size_t kMinRegressionPoints = 8;
constexpr double kRecordFactor = 1.25;
constexpr int kMinRecords = 2;
// Links of the record chain start once sqrt(m) >= 4, past the irregular first ladder points.
constexpr double kFirstLink = 16.0;
constexpr double kRecordStep = 1.0;
// Monotone sequences have every ratio <= 1; growth is asserted only above that level.
constexpr double kGrowthLevel = 1.0 + 1e-9;

void require_defined(const CoefficientSequence& seq, Index last, const char* what) {
  if (last > seq.horizon()) {
    throw OutOfRangeError(std::string(what) + " needs λ_" + std::to_string(last) +
                          " but the horizon is " + std::to_string(seq.horizon()));
  }
}

// max over n in [a, e] of w_n (λ_{n+1} − λ_n)/λ_n, using monotone runs where the model has them.
// Nonincreasing runs contribute at most 0 and are not scanned.
double window_growth(const CoefficientSequence& seq, Index a, Index e, bool index_scaled) {
  const auto& model = seq.model();
  double best = -kInf;
  std::vector<double> buffer;
  Index pos = a;
  while (pos <= e) {
    const Index re = std::min(model.run_end(pos), e + 1);
    if (re > pos + 1) {
      const double lo = model.value(pos), hi = model.value(re);
      if (hi <= lo) {
        if (lo > 0.0) best = std::max(best, 0.0);
        pos = re;
        continue;
      }
    }
    const Index stop = std::min(e, pos + kChunk - 1);
    buffer.resize(stop - pos + 2);
    seq.fill(pos, buffer);
    best = std::max(best, simd::max_growth(buffer, pos, index_scaled));
    pos = stop + 1;
  }
  return best;
}

struct TrendFit {
  Trend trend = Trend::kBounded;
  double slope = 0.0;
  double r2 = 0.0;
};

// Growth is flagged by a power law fitted to the running supremum E(m) over m >= sqrt(horizon),
// or by a chain of records 16 <= m_1 < m_2 < ... with E(m_i) >= max(1.25 E(sqrt(m_i)),
// E(sqrt(m_i)) + 1), E(sqrt(m_i)) > 0 and m_{i+1} >= m_i^2: growth in log log m, too slow for a
// power-law fit. Either way the envelope must end above 1.
TrendFit assess_trend(const std::vector<LadderPoint>& ladder, Index horizon) {
  TrendFit out;
  std::vector<double> ms, env;
  std::vector<double> xs, ys;
  double envelope = 0.0;
  const double late = std::sqrt(static_cast<double>(horizon));
  for (const auto& pt : ladder) {
    if (std::isfinite(pt.ratio)) envelope = std::max(envelope, pt.ratio);
    ms.push_back(static_cast<double>(pt.m));
    env.push_back(envelope);
    if (envelope > 0.0 && static_cast<double>(pt.m) >= late) {
      xs.push_back(std::log(static_cast<double>(pt.m)));
      ys.push_back(std::log(envelope));
    }
  }
  if (!(envelope > 0.0)) return out;
  if (xs.size() >= 2) {
    const LinearFit fit = fit_line(xs, ys);
    out.slope = fit.slope;
    out.r2 = fit.r2;
  } else {
    out.r2 = 1.0;
  }

  int chain = 0;
  double last_link = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const double root = std::sqrt(ms[i]);
    std::size_t k = 0;
    while (k + 1 < ms.size() && ms[k + 1] <= root) ++k;
    if (ms[i] < kFirstLink) continue;
    if (ms[k] > root || !(env[k] > 0.0) || env[i] < kRecordFactor * env[k] ||
        env[i] - env[k] < kRecordStep) {
      continue;
    }
    if (chain > 0 && ms[i] < last_link * last_link) continue;
    ++chain;
    last_link = ms[i];
  }
  const bool regression_growth =
      out.slope > kSlopeThreshold && out.r2 > kR2Threshold && xs.size() >= kMinRegressionPoints;
  const bool record_growth =
      chain >= kMinRecords && last_link >= std::sqrt(static_cast<double>(horizon));
  if ((regression_growth || record_growth) && envelope > kGrowthLevel) {
    out.trend = Trend::kGrowing;
  } else if (out.slope <= kSlopeThreshold) {
    out.trend = Trend::kBounded;
  } else {
    out.trend = Trend::kIndeterminate;
  }
  return out;
}

double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 0.0;
}

}  // namespace

std::string to_string(ClassId id) {
  switch (id) {
    case ClassId::kMonotone: return "monotone";
    case ClassId::kQuasimonotone: return "quasimonotone";
    case ClassId::kRbv: return "rbv";
    case ClassId::kGbv: return "gbv";
  }
  return "?";
}

std::string to_string(Verdict v) {
  return v == Verdict::kMember ? "member_up_to_horizon" : "violated";
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::kBounded: return "bounded";
    case Trend::kGrowing: return "growing";
    case Trend::kIndeterminate: return "indeterminate";
  }
  return "?";
}

ClassId parse_class_id(const std::string& text) {
  for (ClassId id : kAllClasses) {
    if (to_string(id) == text) return id;
  }
  throw ParameterError("unknown class '" + text + "' (monotone, quasimonotone, rbv, gbv)");
}

double forward_difference(const CoefficientSequence& seq, Index n) {
  if (n < 1 || n >= seq.horizon()) {
    throw OutOfRangeError("forward_difference needs 1 <= n < horizon, got n = " +
                          std::to_string(n));
  }
  return seq.value_at(n) - seq.value_at(n + 1);
}

double block_variation(const CoefficientSequence& seq, Index m) {
  if (m < 1) throw OutOfRangeError("block_variation needs m >= 1");
  if (m > (kMaxIndex - 1) / 2) throw OutOfRangeError("block_variation: 2m + 1 overflows");
  require_defined(seq, 2 * m + 1, "block_variation");
  return seq.variation(m, 2 * m + 1);
}

TailVariation tail_variation(const CoefficientSequence& seq, Index m, Index cap) {
  if (m < 1 || m > cap) throw OutOfRangeError("tail_variation needs 1 <= m <= cap");
  require_defined(seq, cap, "tail_variation");
  TailVariation out;
  out.truncated = cap < seq.horizon();
  const Index last = std::min(cap, seq.horizon() - 1);
  out.value = m > last ? 0.0 : seq.variation(m, last + 1);
  return out;
}

std::vector<Index> geometric_ladder(Index horizon, int density) {
  if (density < 1) throw ParameterError("ladder density must be >= 1");
  std::vector<Index> out;
  for (int j = 0; j < 64; ++j) {
    const Index base = Index{1} << j;
    if (base > horizon) break;
    for (int i = 0; i < density; ++i) {
      const long double pt = static_cast<long double>(base) * (1.0L + static_cast<long double>(i) / density);
      if (pt > static_cast<long double>(horizon)) break;
      const Index m = static_cast<Index>(pt);
      if (out.empty() || m > out.back()) out.push_back(m);
    }
  }
  return out;
}

bool looks_null(const CoefficientSequence& seq) {
  const auto& model = seq.model();
  if (model.finitely_supported()) return true;
  if (!model.declared_null()) return false;
  std::vector<double> xs, ys;
  bool zero_tail = false;
  for (int j = 0; j < 64; ++j) {
    const Index n = Index{1} << j;
    if (n > seq.horizon()) break;
    const double v = model.value(n);
    zero_tail = v == 0.0;
    if (v > 0.0) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(v));
    }
  }
  if (zero_tail || xs.size() < 2) return true;
  return fit_line(xs, ys).slope < -1e-3;
}

ClassCertificate classify(const CoefficientSequence& seq, ClassId class_id, Index horizon,
                          const ClassifyOptions& options) {
  if (horizon < 8) throw ParameterError("classify needs horizon >= 8");
  ClassCertificate cert;
  cert.class_id = class_id;
  cert.horizon = horizon;

  if (!looks_null(seq)) {
    const std::string msg = "sequence '" + seq.name() + "' does not appear to tend to zero";
    if (options.non_null == NonNullPolicy::kReject) throw ParameterError(msg);
    cert.warnings.push_back(msg);
  }

  const Index cap = options.rbv_cap.value_or(seq.horizon());
  switch (class_id) {
    case ClassId::kGbv:
      if (horizon > (kMaxIndex - 1) / 2) throw OutOfRangeError("gbv horizon too large");
      require_defined(seq, 2 * horizon + 1, "gbv scan");
      break;
    case ClassId::kRbv:
      require_defined(seq, cap, "rbv scan");
      if (horizon > cap) throw OutOfRangeError("rbv horizon exceeds the variation cap");
      break;
    case ClassId::kMonotone:
    case ClassId::kQuasimonotone:
      require_defined(seq, std::min(horizon, seq.horizon() - 1) + 1, "scan");
      if (horizon > seq.horizon()) throw OutOfRangeError("horizon exceeds the sequence horizon");
      break;
  }

  const auto ladder = geometric_ladder(horizon, options.density);
  const auto& model = seq.model();
  const bool add_final_drop = model.finitely_supported() && cap >= seq.horizon();
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const Index m = ladder[i];
    double ratio = 0.0;
    switch (class_id) {
      case ClassId::kGbv:
        ratio = safe_ratio(block_variation(seq, m), model.value(m));
        break;
      case ClassId::kRbv: {
        double num = tail_variation(seq, m, cap).value;
        if (add_final_drop) num += model.value(seq.horizon());
        ratio = safe_ratio(num, model.value(m));
        break;
      }
      case ClassId::kMonotone:
      case ClassId::kQuasimonotone: {
        const Index last_n = seq.horizon() - 1;
        const Index e = std::min(i + 1 < ladder.size() ? ladder[i + 1] - 1 : m, last_n);
        if (m > e) break;
        const bool quasi = class_id == ClassId::kQuasimonotone;
        const double g = window_growth(seq, m, e, quasi);
        if (quasi) {
          ratio = std::max(0.0, g);
        } else if (g > 0.0) {
          // Monotone is a yes/no class: any increase is a violation of unbounded size.
          if (cert.violations.size() < kMaxRecordedViolations) cert.violations.push_back({m, g});
          ratio = kInf;
        }
        break;
      }
    }
    cert.ladder.push_back({m, ratio});
    if (std::isinf(ratio) && class_id != ClassId::kMonotone &&
        cert.violations.size() < kMaxRecordedViolations) {
      cert.violations.push_back({m, ratio});
    }
    if (ratio > cert.sup_ratio) {
      cert.sup_ratio = ratio;
      cert.witness_m = m;
    }
  }
  if (cert.sup_ratio == 0.0 && !ladder.empty()) cert.witness_m = ladder.front();

  const TrendFit trend = assess_trend(cert.ladder, horizon);
  cert.trend = trend.trend;
  cert.slope = trend.slope;
  cert.r2 = trend.r2;
  cert.verdict = (std::isinf(cert.sup_ratio) || cert.trend == Trend::kGrowing) ? Verdict::kViolated
                                                                               : Verdict::kMember;
  return cert;
}

const ClassCertificate& InclusionReport::get(ClassId id) const {
  for (const auto& c : certificates) {
    if (c.class_id == id) return c;
  }
  throw ParameterError("class not present in the report");
}

InclusionReport inclusion_report(const CoefficientSequence& seq, Index horizon,
                                 const ClassifyOptions& options) {
  InclusionReport report;
  for (ClassId id : kAllClasses) report.certificates.push_back(classify(seq, id, horizon, options));
  auto member = [&](ClassId id) { return report.get(id).verdict == Verdict::kMember; };
  auto check = [&](ClassId from, ClassId to) {
    if (member(from) && !member(to)) {
      report.consistent = false;
      report.inconsistencies.push_back(to_string(from) + " member but " + to_string(to) +
                                       " violated");
    }
  };
  check(ClassId::kMonotone, ClassId::kRbv);
  check(ClassId::kRbv, ClassId::kGbv);
  check(ClassId::kMonotone, ClassId::kGbv);
  check(ClassId::kQuasimonotone, ClassId::kGbv);
  return report;
}

}  // namespace gbv
