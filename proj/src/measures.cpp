#include "gbv/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace gbv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Index kMaxInnerScan = Index{1} << 24;
constexpr std::size_t kSlopeBlocks = 4;
// Block contributions decaying slower than this log-log slope count as divergence.
constexpr double kDivergenceSlope = -0.01;

double block_slope(const std::vector<double>& blocks, std::size_t complete) {
  std::vector<double> xs, ys;
  for (std::size_t j = complete; j-- > 0 && xs.size() < kSlopeBlocks;) {
    if (!(blocks[j] > 0.0)) continue;
    xs.push_back(static_cast<double>(j) * std::numbers::ln2);
    ys.push_back(std::log(blocks[j]));
  }
  if (xs.size() < kSlopeBlocks) return std::numeric_limits<double>::quiet_NaN();
  return fit_line(xs, ys).slope;
}

}  // namespace

void MeasureParams::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p must lie in (1, ∞)");
  if (!(gamma > 1.0 / p - 1.0 && gamma < 1.0 / p)) {
    throw ParameterError("gamma must satisfy 1/p - 1 < gamma < 1/p");
  }
  if (!(quad_tol > 0.0)) throw ParameterError("quad_tol must be positive");
  if (!(x_min > 0.0 && x_min < kPi)) throw ParameterError("x_min must lie in (0, π)");
}

MeasureParams MeasureParams::make(double p, double gamma) {
  MeasureParams m;
  m.p = p;
  m.gamma = gamma;
  m.validate();
  return m;
}

std::string to_string(CriterionVariant v) {
  switch (v) {
    case CriterionVariant::kEq3: return "eq3";
    case CriterionVariant::kEq4: return "eq4";
    case CriterionVariant::kEq5: return "eq5";
    case CriterionVariant::kEq6: return "eq6";
  }
  return "?";
}

std::string to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::kConverges: return "converges";
    case CriterionVerdict::kDiverges: return "diverges";
    case CriterionVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

CriterionVariant parse_criterion_variant(const std::string& text) {
  for (auto v : {CriterionVariant::kEq3, CriterionVariant::kEq4, CriterionVariant::kEq5,
                 CriterionVariant::kEq6}) {
    if (to_string(v) == text) return v;
  }
  throw ParameterError("unknown criterion '" + text + "' (eq3, eq4, eq5, eq6)");
}

Enclosure weighted_sum(const CoefficientSequence& seq, Index a, Index b, double s, double q) {
  const auto& model = seq.model();
  if (model.finitely_supported()) b = std::min(b, seq.horizon());
  if (a < 1) a = 1;
  if (a > b) return Enclosure::exact(0.0);
  if (b > seq.horizon()) throw OutOfRangeError("weighted sum beyond the sequence horizon");
  if (const auto r = model.range_sum(a, b, s, q)) return *r;
  if (b - a > Index{1} << 27) throw ParameterError("weighted sum range too long for direct summation");
  CompensatedSum acc;
  for (Index k = a; k <= b; ++k) {
    const double v = model.value(k);
    if (v != 0.0) acc += std::pow(static_cast<double>(k), s) * std::pow(v, q);
  }
  return Enclosure::exact(acc.value()).padded(1e-14);
}

CriterionResult criterion_sum(const CoefficientSequence& seq, const MeasureParams& params,
                              CriterionVariant variant, Index N) {
  MeasureParams eff = params;
  if (variant == CriterionVariant::kEq6) eff.gamma = 0.0;
  eff.validate();
  if (N < 64) throw ParameterError("criterion scan needs N >= 64");
  const auto& model = seq.model();
  const bool finite = model.finitely_supported();
  if (finite) N = std::min(N, seq.horizon());
  if (N > seq.horizon()) throw OutOfRangeError("criterion horizon exceeds the sequence horizon");

  const double p = eff.p;
  const double e = p + p * eff.gamma - 2.0;
  CriterionResult res;
  res.variant = variant;
  res.horizon = N;

  std::size_t blocks = 0;
  while (blocks < 64 && (Index{1} << blocks) <= N) ++blocks;
  res.block_sums.assign(blocks, 0.0);
  const std::size_t complete = ((Index{1} << (blocks - 1)) * 2 - 1 <= N) ? blocks : blocks - 1;

  if (variant == CriterionVariant::kEq5 || variant == CriterionVariant::kEq6) {
    for (std::size_t j = 0; j < blocks; ++j) {
      const Index lo = Index{1} << j;
      const Index hi = std::min(N, (lo - 1) + lo);
      res.block_sums[j] = weighted_sum(seq, lo, hi, e, p).mid();
    }
    if (const auto t = model.tail_sum(N + 1, e, p); t && t->finite()) res.tail_bound = *t;
  } else {
    if (N > kMaxInnerScan) throw ParameterError("eq3/eq4 scans are limited to N <= 2^24");
    const bool eq3 = variant == CriterionVariant::kEq3;
    std::vector<double> lam(N);
    seq.fill(1, lam);
    const double next = N < seq.horizon() ? model.value(N + 1) : 0.0;
    // Inner sum at N + 1.
    double inner = 0.0;
    if (eq3) {
      if (const auto v = seq.variation_to_infinity(N + 1)) {
        inner = v->hi;
      } else {
        res.inner_truncated = true;
      }
    } else {
      if (const auto t = model.tail_sum(N + 1, -1.0, 1.0); t && t->finite()) {
        inner = t->hi;
      } else if (const auto env = model.envelope(N + 1); env && std::isfinite(env->tail_coef)) {
        inner = env->tail_coef * std::pow(static_cast<double>(N + 1), -env->theta);
      } else if (!finite || N < seq.horizon()) {
        res.inner_truncated = true;
      }
    }
    std::vector<CompensatedSum> acc(blocks);
    double prev = next;
    for (Index n = N; n >= 1; --n) {
      const double v = lam[n - 1];
      inner += eq3 ? std::abs(v - prev) : v / static_cast<double>(n);
      prev = v;
      if (inner > 0.0) {
        const std::size_t j = static_cast<std::size_t>(std::bit_width(n) - 1);
        acc[j] += std::pow(static_cast<double>(n), e) * std::pow(inner, p);
      }
    }
    for (std::size_t j = 0; j < blocks; ++j) res.block_sums[j] = acc[j].value();

    if (!res.inner_truncated) {
      if (finite && N >= seq.horizon()) {
        res.tail_bound = Enclosure::exact(0.0);
      } else if (const auto env = model.envelope(N + 1)) {
        const double coef = eq3 ? env->var_coef : env->tail_coef;
        if (coef == 0.0) {
          res.tail_bound = Enclosure::exact(0.0);
        } else if (std::isfinite(coef)) {
          if (const auto t = power_sum_to_infinity(N + 1, e - p * env->theta)) {
            res.tail_bound = Enclosure{0.0, std::pow(coef, p) * t->hi};
          }
        }
      }
    }
  }

  CompensatedSum total;
  for (double b : res.block_sums) total += b;
  res.total_through = total.value();
  res.block_slope = block_slope(res.block_sums, complete);
  if (res.tail_bound) {
    res.verdict = CriterionVerdict::kConverges;
  } else if (std::isfinite(res.block_slope) && res.block_slope >= kDivergenceSlope) {
    res.verdict = CriterionVerdict::kDiverges;
  } else {
    res.verdict = CriterionVerdict::kInconclusive;
  }
  return res;
}

Integral weighted_lp_integral(const SeriesSpec& input, double p, double gamma, double a, double b,
                              double rel_tol, double* series_err_max) {
  SeriesSpec spec = input;
  spec.relative_tolerance = true;
  double worst = 0.0;
  const double wexp = -gamma * p;
  const BatchIntegrand f = [&](std::span<const double> xs, std::span<double> out) {
    const auto vals = eval_series_batch(spec, xs, spec.tolerance);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      worst = std::max(worst, vals[i].err);
      out[i] = std::pow(xs[i], wexp) * std::pow(std::abs(vals[i].value), p);
    }
  };
  Integral r = integrate_log_graded(f, a, b, rel_tol, 0.0);
  if (series_err_max) *series_err_max = std::max(*series_err_max, worst);
  return r;
}

NormResult weighted_lp_norm(const SeriesSpec& spec, const MeasureParams& params) {
  params.validate();
  const double p = params.p, gp = params.gamma * p;
  double worst = 0.0;
  Integral I;
  try {
    I = weighted_lp_integral(spec, p, params.gamma, params.x_min, kPi, params.quad_tol, &worst);
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(std::string(e.what()) + " (norm cutoff x_min = " +
                               std::to_string(params.x_min) + ")",
                           e.achieved());
  }
  NormResult res;
  res.x_min = params.x_min;
  res.evaluations = I.evaluations;
  res.norm = std::pow(std::max(I.value, 0.0), 1.0 / p);
  const double quad = I.value > 0.0 ? I.err / (p * std::pow(I.value, 1.0 - 1.0 / p))
                                    : std::pow(I.err, 1.0 / p);
  // Minkowski: a pointwise error δ moves the norm by at most δ (∫ x^{−γp})^{1/p}.
  const double weight_mass = (std::pow(kPi, 1.0 - gp) - std::pow(params.x_min, 1.0 - gp)) / (1.0 - gp);
  res.err = quad + worst * std::pow(weight_mass, 1.0 / p);
  return res;
}

double shifted_difference_norm(const SeriesSpec& input, double p, double h, double rel_tol,
                               double* err) {
  SeriesSpec spec = input;
  spec.relative_tolerance = true;
  if (!(h > 0.0 && h <= kTwoPi)) throw ParameterError("shift must lie in (0, 2π]");
  double worst = 0.0;
  // f(x + h) − f(x) is singular where x ≡ 0 or x ≡ −h. The period splits into four half pieces,
  // each parametrized by the distance u to its singular end so that arguments near a singularity
  // keep full relative precision. shift_arg / base_arg give the arguments of f(x + h) and f(x).
  auto piece = [&](double sign_shift, double off_shift, double sign_base, double off_base) {
    return BatchIntegrand([&, sign_shift, off_shift, sign_base, off_base](
                              std::span<const double> us, std::span<double> out) {
      std::vector<double> pts(2 * us.size());
      for (std::size_t i = 0; i < us.size(); ++i) {
        pts[i] = sign_shift * us[i] + off_shift;
        pts[us.size() + i] = sign_base * us[i] + off_base;
      }
      const auto vals = eval_series_batch(spec, pts, spec.tolerance);
      for (std::size_t i = 0; i < us.size(); ++i) {
        const auto& a = vals[i];
        const auto& b = vals[us.size() + i];
        worst = std::max(worst, a.err + b.err);
        out[i] = std::pow(std::abs(a.value - b.value), p);
      }
    });
  };
  constexpr double kAbsFloor = 1e-15;
  Integral I;
  if (h < kTwoPi) {
    const double half_a = 0.5 * (kTwoPi - h);
    const double half_b = 0.5 * h;
    // x in (0, 2π − h): x = u near 0, x = 2π − h − u near the other end.
    const Integral a1 = integrate_graded(piece(1.0, h, 1.0, 0.0), 0.0, half_a, true, false, rel_tol, kAbsFloor);
    const Integral a2 = integrate_graded(piece(-1.0, 0.0, -1.0, -h), 0.0, half_a, true, false, rel_tol, kAbsFloor);
    // x in (−h, 0): x = −h + u, and x = −u.
    const Integral b1 = integrate_graded(piece(1.0, 0.0, 1.0, -h), 0.0, half_b, true, false, rel_tol, kAbsFloor);
    const Integral b2 = integrate_graded(piece(-1.0, h, -1.0, 0.0), 0.0, half_b, true, false, rel_tol, kAbsFloor);
    I.value = a1.value + a2.value + b1.value + b2.value;
    I.err = a1.err + a2.err + b1.err + b2.err;
  }
  const double norm = std::pow(std::max(I.value, 0.0), 1.0 / p);
  if (err) {
    const double quad = I.value > 0.0 ? I.err / (p * std::pow(I.value, 1.0 - 1.0 / p))
                                      : std::pow(I.err, 1.0 / p);
    *err = quad + worst * std::pow(kTwoPi, 1.0 / p);
  }
  return norm;
}

ModulusResult modulus_lp(const SeriesSpec& spec, double p, double t, int grid) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must be >= 1");
  if (!(t > 0.0 && t <= kPi)) throw ParameterError("t must lie in (0, π]");
  if (grid < 8) throw ParameterError("modulus grid needs at least 8 shifts");
  ModulusResult res;
  for (int i = 0; i < grid; ++i) {
    const double h = t * std::exp2(-0.5 * i);
    double err = 0.0;
    const double v = shifted_difference_norm(spec, p, h, 1e-9, &err);
    res.hs.push_back(h);
    res.values.push_back(v);
    if (v > res.omega || i == 0) {
      res.omega = v;
      res.h_at_max = h;
      res.err = err;
    }
  }
  return res;
}

Rhs7Result rhs_eq7(const CoefficientSequence& seq, double p, Index n) {
  if (n < 2) throw ParameterError("rhs_eq7 needs n >= 2");
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p must lie in (1, ∞)");
  Rhs7Result res;
  const double head_sum = weighted_sum(seq, 1, n - 1, 2.0 * p - 2.0, p).mid();
  res.head = std::pow(std::max(head_sum, 0.0), 1.0 / p) / static_cast<double>(n);
  if (const auto t = seq.model().tail_sum(n, p - 2.0, p); t && t->finite()) {
    res.tail = std::pow(std::max(t->mid(), 0.0), 1.0 / p);
  } else {
    res.tail_certified = false;
    if (n <= seq.horizon() && seq.horizon() - n < (Index{1} << 27)) {
      res.tail = std::pow(weighted_sum(seq, n, seq.horizon(), p - 2.0, p).mid(), 1.0 / p);
    }
  }
  res.value = res.head + res.tail;
  return res;
}

}  // namespace gbv
