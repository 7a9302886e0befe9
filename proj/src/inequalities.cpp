#include "gbv/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gbv/generators.hpp"
#include "gbv/series.hpp"

namespace gbv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Rung-to-rung log-log slope of the norm increments above which the norm counts as growing.
constexpr double kLadderGrowthSlope = -0.01;
constexpr std::size_t kLadderFitRungs = 4;

CheckStatus decide(const Enclosure& lhs, const Enclosure& rhs, double constant) {
  const double scale = std::max(std::abs(lhs.hi), std::abs(constant * rhs.hi));
  const double slack = kInequalityTolerance * scale;
  if (constant * rhs.lo - lhs.hi >= -slack) return CheckStatus::kPass;
  if (constant * rhs.hi - lhs.lo < -slack) return CheckStatus::kFail;
  return CheckStatus::kInconclusive;
}

InequalityReport make_report(InequalityId id, const Enclosure& lhs, const Enclosure& rhs,
                             double constant) {
  InequalityReport r;
  r.inequality_id = id;
  r.lhs = lhs.mid();
  r.rhs = rhs.mid();
  r.constant = constant;
  r.margin = constant * r.rhs - r.lhs;
  r.status = decide(lhs, rhs, constant);
  r.pass = r.status == CheckStatus::kPass;
  return r;
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }
  /// Uniform on [0, 1) from the top 53 bits, identical on every platform.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::kEq8: return "eq8";
    case InequalityId::kEq9: return "eq9";
    case InequalityId::kLemma3: return "lemma3";
    case InequalityId::kLemma4: return "lemma4";
    case InequalityId::kEq7Ratio: return "eq7ratio";
  }
  return "?";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(HarnessVerdict v) {
  switch (v) {
    case HarnessVerdict::kAgree: return "agree";
    case HarnessVerdict::kDisagree: return "disagree";
    case HarnessVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

InequalityId parse_inequality_id(const std::string& text) {
  for (auto id : {InequalityId::kEq8, InequalityId::kEq9, InequalityId::kLemma3,
                  InequalityId::kLemma4, InequalityId::kEq7Ratio}) {
    if (to_string(id) == text) return id;
  }
  throw ParameterError("unknown inequality '" + text + "' (eq8, eq9, lemma3, lemma4)");
}

// ---------------------------------------------------------------------------------------------

void MuFamily::validate() const {
  if (kind == Kind::kGeometric && !(param > 0.0 && param < 1.0)) {
    throw ParameterError("geometric mu needs 0 < r < 1");
  }
  if (kind == Kind::kPower && !(param > 1.0 && std::isfinite(param))) {
    throw ParameterError("power mu needs s > 1");
  }
}

double MuFamily::value(Index n) const {
  if (kind == Kind::kGeometric) return std::pow(param, static_cast<double>(n));
  return std::pow(static_cast<double>(n), -param);
}

Enclosure MuFamily::tail(Index n) const {
  if (kind == Kind::kGeometric) {
    return Enclosure::exact(std::pow(param, static_cast<double>(n)) / (1.0 - param)).padded(4e-16);
  }
  return *power_sum_to_infinity(n, -param);
}

double MuFamily::head(Index n) const {
  CompensatedSum acc;
  for (Index k = 1; k <= n; ++k) acc += value(k);
  return acc.value();
}

InequalityReport verify_hardy_littlewood(const WeightedPair& pair, InequalityId direction) {
  if (direction != InequalityId::kEq8 && direction != InequalityId::kEq9) {
    throw ParameterError("Hardy–Littlewood direction must be eq8 or eq9");
  }
  pair.mu.validate();
  const double p = pair.p;
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must be >= 1");
  for (double a : pair.alpha) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ParameterError("alpha must be finite and >= 0");
  }
  std::size_t L = pair.alpha.size();
  while (L > 0 && pair.alpha[L - 1] == 0.0) --L;
  const double C = std::pow(p, p);
  if (L == 0) return make_report(direction, Enclosure::exact(0.0), Enclosure::exact(0.0), C);

  const auto& mu = pair.mu;
  CompensatedSum lhs_acc, rhs_lo, rhs_hi;
  Enclosure lhs_tail = Enclosure::exact(0.0);

  if (direction == InequalityId::kEq8) {
    double A = 0.0;
    for (std::size_t n = 1; n <= L; ++n) {
      A += pair.alpha[n - 1];
      const double m = mu.value(n);
      if (n < L) lhs_acc += m * std::pow(A, p);
      const double a = pair.alpha[n - 1];
      if (a == 0.0) continue;
      // μ^{1−p} T^p α^p = μ (T/μ)^p α^p, kept in this form to avoid overflow.
      const Enclosure T = mu.tail(n);
      rhs_lo += m * std::pow(T.lo / m, p) * std::pow(a, p);
      rhs_hi += m * std::pow(T.hi / m, p) * std::pow(a, p);
    }
    lhs_tail = mu.tail(L).scaled(std::pow(A, p));
  } else {
    std::vector<double> B(L + 1, 0.0);
    for (std::size_t n = L; n >= 1; --n) B[n - 1] = B[n] + pair.alpha[n - 1];
    double H = 0.0;
    CompensatedSum Hacc;
    for (std::size_t n = 1; n <= L; ++n) {
      const double m = mu.value(n);
      Hacc += m;
      H = Hacc.value();
      lhs_acc += m * std::pow(B[n - 1], p);
      const double a = pair.alpha[n - 1];
      if (a == 0.0) continue;
      const double log_term = std::log(m) + p * (std::log(H) - std::log(m)) + p * std::log(a);
      const double term = std::exp(log_term);
      rhs_lo += term;
      rhs_hi += term;
    }
  }
  Enclosure lhs = Enclosure::exact(lhs_acc.value()) + lhs_tail;
  lhs = lhs.padded(1e-15);
  const Enclosure rhs = Enclosure{rhs_lo.value(), rhs_hi.value()}.padded(1e-15);
  auto r = make_report(direction, lhs, rhs, C);
  if (lhs.width() > 0.0 && direction == InequalityId::kEq8) r.truncation.push_back("mu tail enclosure");
  return r;
}

// ---------------------------------------------------------------------------------------------

InequalityReport verify_lemma3(const CoefficientSequence& seq, Index n, double M) {
  if (n < 1) throw ParameterError("lemma3 needs n >= 1");
  if (!(M >= 0.0) || !std::isfinite(M)) throw ParameterError("lemma3 needs a finite M >= 0");
  const auto& model = seq.model();
  const Index H = seq.horizon();
  std::vector<std::string> truncation;

  // Σ_{j>=1} λ_{2^j n} over the defined indices; `next` is the first dyadic point left out.
  CompensatedSum acc;
  double next = 0.0;
  for (Index k = n;;) {
    if (k > kMaxIndex / 2) {
      next = 2.0 * static_cast<double>(k);
      break;
    }
    k *= 2;
    if (k > H) {
      next = static_cast<double>(k);
      break;
    }
    acc += model.value(k);
  }
  Enclosure lhs = Enclosure::exact(acc.value()).padded(1e-15);
  if (!model.finitely_supported()) {
    const auto env = model.envelope(H);
    if (env && env->theta > 0.0) {
      lhs += Enclosure{0.0, env->lam_coef * std::pow(next, -env->theta) /
                                (1.0 - std::exp2(-env->theta))};
    } else {
      lhs.hi = kInf;
      truncation.push_back("dyadic sum past the horizon");
    }
  }

  Enclosure rhs;
  if (const auto t = model.tail_sum(n, -1.0, 1.0); t && t->finite()) {
    rhs = *t;
  } else {
    rhs = weighted_sum(seq, n, H, -1.0, 1.0);
    rhs.hi = kInf;
    truncation.push_back("harmonic tail past the horizon");
  }
  auto r = make_report(InequalityId::kLemma3, lhs, rhs, 4.0 * M);
  if (!std::isfinite(lhs.hi)) r.lhs = lhs.lo;
  if (!std::isfinite(rhs.hi)) r.rhs = rhs.lo;
  r.margin = r.constant * r.rhs - r.lhs;
  r.truncation = truncation;
  return r;
}

InequalityReport verify_lemma4(const CoefficientSequence& seq, double p, Index n,
                               double ratio_cap) {
  if (n < 1) throw ParameterError("lemma4 needs n >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p must lie in (1, ∞)");
  const auto& model = seq.model();
  if (!model.finitely_supported()) {
    const Index N = std::min<Index>(seq.horizon(), Index{1} << 12);
    const auto crit = criterion_sum(seq, MeasureParams::make(p, 0.0), CriterionVariant::kEq6, N);
    if (crit.verdict != CriterionVerdict::kConverges) {
      throw PreconditionError("lemma4 hypothesis Σ n^{p-2} λ_n^p < ∞ not certified (criterion " +
                              to_string(crit.variant) + ": " + to_string(crit.verdict) + ")");
    }
  }
  InequalityReport r;
  r.inequality_id = InequalityId::kLemma4;
  const Index from = n / 2 + 1;
  double harmonic = 0.0;
  if (const auto t = model.tail_sum(from, -1.0, 1.0); t && t->finite()) {
    harmonic = t->mid();
  } else {
    harmonic = weighted_sum(seq, from, seq.horizon(), -1.0, 1.0).mid();
    r.truncation.push_back("harmonic tail past the horizon");
  }
  r.lhs = std::pow(static_cast<double>(n), 1.0 - 1.0 / p) * harmonic;
  if (n >= 2) {
    const auto rhs = rhs_eq7(seq, p, n);
    r.rhs = rhs.value;
    if (!rhs.tail_certified) r.truncation.push_back("rhs tail past the horizon");
  } else {
    const auto t = model.tail_sum(1, p - 2.0, p);
    r.rhs = t ? std::pow(t->mid(), 1.0 / p) : 0.0;
  }
  r.constant = ratio_cap;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs > 0.0 ? kInf : 0.0);
  r.margin = ratio_cap * r.rhs - r.lhs;
  r.pass = *r.ratio <= ratio_cap;
  r.status = r.pass ? CheckStatus::kPass : CheckStatus::kFail;
  return r;
}

// ---------------------------------------------------------------------------------------------

WeightedPair random_weighted_pair(std::uint64_t seed, std::size_t index) {
  Rng rng(seed, index);
  WeightedPair pair;
  if (rng.uniform() < 0.5) {
    pair.mu = {MuFamily::Kind::kGeometric, rng.uniform(0.3, 0.95)};
  } else {
    pair.mu = {MuFamily::Kind::kPower, rng.uniform(1.05, 4.0)};
  }
  pair.p = index % 8 == 0 ? 1.0 : rng.uniform(1.0, 4.0);
  const std::size_t L = 1 + rng.below(48);
  pair.alpha.assign(L, 0.0);
  for (auto& a : pair.alpha) {
    if (rng.uniform() < 0.5) a = rng.uniform(0.0, 1.0);
  }
  return pair;
}

SuiteReport run_hardy_littlewood_suite(InequalityId direction, std::size_t count,
                                       std::uint64_t seed) {
  SuiteReport rep;
  rep.name = "hardy-littlewood-" + to_string(direction);
  rep.seed = seed;
  for (std::size_t i = 0; i < count; ++i) {
    const auto pair = random_weighted_pair(seed, i);
    const auto r = verify_hardy_littlewood(pair, direction);
    ++rep.instances;
    switch (r.status) {
      case CheckStatus::kPass: ++rep.passed; break;
      case CheckStatus::kFail: ++rep.failed; break;
      case CheckStatus::kInconclusive: ++rep.inconclusive; break;
    }
    if (r.status != CheckStatus::kPass && rep.failures.size() < 16) {
      auto j = to_json(r);
      j["instance"] = i;
      j["p"] = pair.p;
      rep.failures.push_back(j);
    }
    if (pair.p == 1.0 && direction == InequalityId::kEq8) {
      ++rep.p1_instances;
      const double scale = std::max(r.lhs, r.rhs);
      if (scale > 0.0) {
        rep.max_p1_relative_gap = std::max(rep.max_p1_relative_gap, std::abs(r.lhs - r.rhs) / scale);
      }
    }
  }
  return rep;
}

CoefficientSequence random_class_sequence(std::uint64_t seed, std::size_t index,
                                          std::string* family) {
  Rng rng(seed, index);
  const std::size_t L = 1024 + rng.below(3072);
  const int kind = static_cast<int>(index % 3);
  std::vector<double> mu(L);
  // Nonincreasing base with random plateaus and decay rate up to ~ n^{-2}.
  const double rate = rng.uniform(0.1, 2.0);
  const double plateau = rng.uniform(0.0, 0.6);
  double v = 1.0;
  for (std::size_t n = 1; n <= L; ++n) {
    mu[n - 1] = v;
    if (rng.uniform() >= plateau) v *= std::exp(-rate * rng.uniform(0.0, 2.0) / static_cast<double>(n));
  }
  std::string name;
  if (kind == 0) {
    name = "monotone";
  } else if (kind == 1) {
    const double a = rng.uniform(0.0, 2.0);
    for (std::size_t n = 1; n <= L; ++n) mu[n - 1] *= std::pow(static_cast<double>(n), a);
    name = "quasimonotone";
  } else {
    // Single-index spikes at powers of two on top of the monotone base: rest bounded variation.
    const double height = rng.uniform(0.1, 2.0);
    for (std::size_t n = 2; n <= L; n *= 2) mu[n - 1] *= 1.0 + height;
    name = "rbv-spikes";
  }
  if (family) *family = name;
  return make_explicit(std::move(mu), name + "-" + std::to_string(index));
}

SuiteReport run_inclusion_suite(std::size_t count, std::uint64_t seed) {
  SuiteReport rep;
  rep.name = "class-inclusions";
  rep.seed = seed;
  for (std::size_t i = 0; i < count; ++i) {
    std::string family;
    const auto seq = random_class_sequence(seed, i, &family);
    const Index horizon = (seq.horizon() - 1) / 2;
    const auto report = inclusion_report(seq, horizon);
    ++rep.instances;
    if (report.consistent) {
      ++rep.passed;
    } else {
      ++rep.failed;
      if (rep.failures.size() < 16) {
        nlohmann::json j = to_json(report);
        j["instance"] = i;
        j["family"] = family;
        rep.failures.push_back(j);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

NormLadder norm_ladder(const SeriesSpec& spec, const MeasureParams& params, int rungs) {
  params.validate();
  if (rungs < static_cast<int>(kLadderFitRungs) + 1) {
    throw ParameterError("norm ladder needs at least 5 rungs");
  }
  NormLadder ladder;
  double upper = kPi;
  double total = 0.0;
  for (int k = 1; k <= rungs; ++k) {
    const double x = std::pow(10.0, -4.0 * k);
    Integral part;
    try {
      part = weighted_lp_integral(spec, params.p, params.gamma, x, upper, params.quad_tol);
    } catch (const NumericalFailure& e) {
      ladder.note = std::string("stopped at x_min = ") + std::to_string(x) + ": " + e.what();
      break;
    }
    total += part.value;
    ladder.x_min.push_back(x);
    ladder.increments.push_back(part.value);
    ladder.cumulative.push_back(total);
    upper = x;
  }
  const std::size_t usable = ladder.increments.size();
  if (usable < kLadderFitRungs + 1) {
    if (ladder.note.empty()) ladder.note = "too few rungs";
    return ladder;
  }
  bool all_zero = true;
  for (double v : ladder.increments) all_zero = all_zero && v == 0.0;
  if (all_zero) {
    ladder.bounded = true;
    ladder.slope = -kInf;
    return ladder;
  }
  std::vector<double> xs, ys;
  for (std::size_t i = usable - kLadderFitRungs; i < usable; ++i) {
    if (!(ladder.increments[i] > 0.0)) {
      ladder.note = "nonpositive increment";
      return ladder;
    }
    xs.push_back(-std::log(ladder.x_min[i]));
    ys.push_back(std::log(ladder.increments[i]));
  }
  ladder.slope = fit_line(xs, ys).slope;
  ladder.bounded = ladder.slope < kLadderGrowthSlope;
  return ladder;
}

Theorem13Report harness_theorem13(const CoefficientSequence& family, const MeasureParams& params,
                                  Parity parity) {
  params.validate();
  const Index H = family.horizon();
  if (H >= 17) {
    const Index h = std::min<Index>(Index{1} << 12, (H - 1) / 2);
    if (h >= 8) {
      const auto cert = classify(family, ClassId::kGbv, h);
      if (cert.verdict != Verdict::kMember) {
        throw PreconditionError("norm consistency harness needs a GBV sequence; gbv certificate is violated");
      }
    }
  }
  Theorem13Report rep;
  rep.params = params;
  const Index N = family.model().finitely_supported() ? std::max<Index>(64, H)
                                                      : std::min<Index>(H, Index{1} << 20);
  rep.criterion = criterion_sum(family, params, CriterionVariant::kEq5, N);
  SeriesSpec spec(family, parity);
  spec.tolerance = 1e-6;
  rep.ladder = norm_ladder(spec, params);
  const auto cv = rep.criterion.verdict;
  if (cv == CriterionVerdict::kInconclusive || !rep.ladder.bounded) {
    rep.verdict = HarnessVerdict::kInconclusive;
  } else {
    const bool converges = cv == CriterionVerdict::kConverges;
    rep.verdict = converges == *rep.ladder.bounded ? HarnessVerdict::kAgree : HarnessVerdict::kDisagree;
  }
  return rep;
}

Theorem23Report harness_theorem23(const CoefficientSequence& seq, double p,
                                  const std::vector<Index>& n_set, double ratio_cap,
                                  int modulus_grid) {
  if (n_set.empty()) throw ParameterError("n_set must not be empty");
  const auto& model = seq.model();
  if (!model.finitely_supported()) {
    const Index N = std::min<Index>(seq.horizon(), Index{1} << 12);
    const auto crit = criterion_sum(seq, MeasureParams::make(p, 0.0), CriterionVariant::kEq6, N);
    if (crit.verdict != CriterionVerdict::kConverges) {
      throw PreconditionError("modulus ratio scan needs Σ n^{p-2} λ_n^p < ∞");
    }
  }
  Theorem23Report rep;
  rep.p = p;
  rep.ratio_cap = ratio_cap;
  SeriesSpec spec(seq, Parity::kCosine);
  spec.tolerance = 1e-9;
  std::vector<double> xs, ys;
  for (Index n : n_set) {
    if (n < 2) throw ParameterError("modulus ratio scan needs n >= 2");
    const double t = 1.0 / static_cast<double>(n);
    const auto mod = modulus_lp(spec, p, t, modulus_grid);
    const auto rhs = rhs_eq7(seq, p, n);
    const double ratio = rhs.value > 0.0 ? mod.omega / rhs.value : (mod.omega > 0.0 ? kInf : 0.0);
    rep.ns.push_back(n);
    rep.omega.push_back(mod.omega);
    rep.rhs.push_back(rhs.value);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 0.0 && std::isfinite(ratio)) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(ratio));
    }
  }
  rep.slope = xs.size() >= 2 ? fit_line(xs, ys).slope : 0.0;
  rep.pass = std::abs(rep.slope) <= 0.1 && rep.max_ratio <= ratio_cap;
  return rep;
}

Theorem3Report harness_theorem3(int levels, const std::vector<std::pair<double, double>>& grid) {
  if (levels < 3 || levels > 5) throw ParameterError("counterexample harness needs levels in [3, 5]");
  Theorem3Report rep;
  rep.levels = levels;
  const auto seq = gen_leindler(levels);
  const Index H = seq.horizon();
  rep.classify_horizon = std::min<Index>(Index{1} << 18, (H - 1) / 2);
  rep.inclusion = inclusion_report(seq, rep.classify_horizon);

  const auto& gbv = rep.inclusion.get(ClassId::kGbv);
  const auto& rbv = rep.inclusion.get(ClassId::kRbv);
  const auto& quasi = rep.inclusion.get(ClassId::kQuasimonotone);
  rep.quasimonotone_alpha = quasi.sup_ratio;
  if (gbv.verdict != Verdict::kMember || gbv.trend != Trend::kBounded) {
    rep.failures.push_back("gbv is not a bounded member");
  }
  if (quasi.verdict != Verdict::kMember) rep.failures.push_back("quasimonotone is violated");
  if (rbv.verdict != Verdict::kViolated) rep.failures.push_back("rbv is not violated");

  for (int k = 2; k <= 5; ++k) {
    const Index v = LeindlerParams::v(k);
    if (v > rep.classify_horizon) break;
    for (const auto& pt : rbv.ladder) {
      if (pt.m == v) rep.rbv_at_blocks.emplace_back(v, pt.ratio);
    }
  }
  rep.rbv_strictly_increasing = rep.rbv_at_blocks.size() >= 2;
  for (std::size_t i = 1; i < rep.rbv_at_blocks.size(); ++i) {
    if (!(rep.rbv_at_blocks[i].second > rep.rbv_at_blocks[i - 1].second)) {
      rep.rbv_strictly_increasing = false;
    }
  }
  if (!rep.rbv_strictly_increasing) rep.failures.push_back("rbv ratios at v_k not increasing");

  bool inconclusive = false;
  const Index N = std::min<Index>(H, Index{1} << 20);
  for (const auto& [p, gamma] : grid) {
    const auto params = MeasureParams::make(p, gamma);
    rep.grid.emplace_back(p, gamma);
    rep.criteria.push_back(criterion_sum(seq, params, CriterionVariant::kEq5, N));
    const auto v = rep.criteria.back().verdict;
    if (v == CriterionVerdict::kInconclusive) inconclusive = true;
    if (v == CriterionVerdict::kDiverges) {
      rep.failures.push_back("eq5 diverges at p = " + std::to_string(p) +
                             ", gamma = " + std::to_string(gamma));
    }
  }
  if (!rep.failures.empty()) {
    rep.status = CheckStatus::kFail;
  } else if (inconclusive) {
    rep.status = CheckStatus::kInconclusive;
  } else {
    rep.status = CheckStatus::kPass;
  }
  return rep;
}

}  // namespace gbv
