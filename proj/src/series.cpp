#include "gbv/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>

#include "gbv/simd.hpp"

namespace gbv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Amplitude drift of the rotation recurrence between exact reseeds, relative to Σ|λ_n|.
constexpr double kPartialRounding = 4e-14;
constexpr Index kFirstN = 64;
constexpr Index kChunk = Index{1} << 15;
constexpr int kMaxAbelOrder = 8;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Point {
  std::size_t slot;
  double ax;      // |x| reduced to [0, π]
  double sign;    // −1 for a sine series at negative x
};

// Partial sums Σ_{n=from}^{to} λ_n (cos nx, sin nx) accumulated into the given arrays.
// Returns Σ|λ_n| over the range.
double accumulate_partial(const CoefficientSequence& seq, Index from, Index to,
                          std::span<const double> xs, std::span<double> cos_acc,
                          std::span<double> sin_acc) {
  if (from > to || xs.empty()) return 0.0;
  std::vector<double> buffer;
  double abs_sum = 0.0;
  for (Index pos = from; pos <= to;) {
    const Index stop = std::min(to, pos + kChunk - 1);
    buffer.resize(stop - pos + 1);
    seq.fill(pos, buffer);
    for (double v : buffer) abs_sum += std::abs(v);
    simd::trig_partial_sums(buffer, pos, xs, cos_acc, sin_acc);
    if (stop == to) break;
    pos = stop + 1;
  }
  return abs_sum;
}

double pick(Parity parity, double c, double s) { return parity == Parity::kCosine ? c : s; }

SeriesValue finish(const SeriesSpec& spec, const Point& pt, SeriesValue v) {
  if (spec.parity == Parity::kCosine) {
    v.value += spec.constant_term;
  } else {
    v.value *= pt.sign;
  }
  return v;
}

// Forward differences Δ^j λ_{n}, j = 0..kMaxAbelOrder, with an absolute rounding bound for each.
struct DifferenceTable {
  std::array<double, kMaxAbelOrder + 1> d{};
  std::array<double, kMaxAbelOrder + 1> err{};
};

DifferenceTable difference_table(const CoefficientSequence& seq, Index n) {
  std::array<long double, kMaxAbelOrder + 1> row{};
  for (int j = 0; j <= kMaxAbelOrder; ++j) row[j] = seq.model().value(n + j);
  DifferenceTable t;
  const double base = static_cast<double>(row[0]);
  for (int j = 0; j <= kMaxAbelOrder; ++j) {
    t.d[j] = static_cast<double>(row[0]);
    // Each input carries a half-ulp of double rounding; differencing doubles the spread.
    t.err[j] = std::ldexp(kEps, j) * base + kEps * std::abs(t.d[j]);
    for (int i = 0; i + 1 <= kMaxAbelOrder - j; ++i) row[i] = row[i] - row[i + 1];
  }
  return t;
}

// Σ_{n>N} λ_n e^{inx} via r-fold summation by parts; returns (tail, bound) for the best r.
std::pair<std::complex<double>, double> abel_tail(const DifferenceTable& t, Index N, double x) {
  const double half = 0.5 * x;
  const double s_half = std::sin(half);
  const std::complex<double> one_minus_z(2.0 * s_half * s_half, -std::sin(x));
  double c, s;
  simd::detail::seed_angle(N + 1, x, c, s);
  const std::complex<double> zN1(c, s);
  const std::complex<double> z(std::cos(x), std::sin(x));
  const std::complex<double> w = z / one_minus_z;
  const double wabs = 1.0 / (2.0 * s_half);
  const std::complex<double> lead = zN1 / one_minus_z;
  const double inv_den = wabs;  // |1/(1−z)| = |w|

  std::complex<double> best_val;
  double best_bound = kInf;
  std::complex<double> acc = 0.0;
  std::complex<double> wpow = 1.0;
  double wabs_pow = 1.0;
  double rounding = 0.0;
  for (int r = 1; r <= kMaxAbelOrder; ++r) {
    const int j = r - 1;
    acc += wpow * t.d[j];
    rounding += wabs_pow * t.err[j] * inv_den;
    wpow *= -w;
    wabs_pow *= wabs;
    const double remainder = wabs_pow * std::max(t.d[j], 0.0) + wabs_pow * t.err[j];
    const double bound = remainder + rounding;
    if (bound < best_bound) {
      best_bound = bound;
      best_val = acc * lead;
    }
  }
  return {best_val, best_bound};
}

void finite_sum(const SeriesSpec& spec, const std::vector<Point>& pts, Index N,
                std::vector<SeriesValue>& out, SeriesMethod method, double tail_err) {
  std::vector<double> xs, cs(pts.size(), 0.0), ss(pts.size(), 0.0);
  for (const auto& p : pts) xs.push_back(p.ax);
  const double abs_sum = accumulate_partial(spec.coefficients, 1, N, xs, cs, ss);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    SeriesValue v;
    v.value = pick(spec.parity, cs[i], ss[i]);
    v.err = kPartialRounding * abs_sum + tail_err;
    v.terms = N;
    v.method = method;
    out[pts[i].slot] = finish(spec, pts[i], v);
  }
}

}  // namespace

std::string to_string(SeriesMethod m) {
  switch (m) {
    case SeriesMethod::kZero: return "parity-zero";
    case SeriesMethod::kFiniteSum: return "finite-sum";
    case SeriesMethod::kClosedForm: return "closed-form";
    case SeriesMethod::kAbelIterated: return "abel-iterated";
    case SeriesMethod::kAbelBound: return "abel-bound(pi/x)";
    case SeriesMethod::kPartialSum: return "partial-sum";
  }
  return "?";
}

double dirichlet_kernel(Index k, double x) {
  const double s = std::sin(0.5 * x);
  if (std::abs(s) > 1e-8) {
    return std::sin((static_cast<double>(k) + 0.5) * x) / (2.0 * s);
  }
  CompensatedSum acc;
  acc += 0.5;
  for (Index j = 1; j <= k; ++j) acc += std::cos(static_cast<double>(j) * x);
  return acc.value();
}

std::optional<double> variation_tail_bound(const CoefficientSequence& seq, Index n,
                                           std::optional<double> gbv_constant) {
  if (const auto v = seq.variation_to_infinity(n)) return v->hi;
  if (!gbv_constant) return std::nullopt;
  const auto& model = seq.model();
  CompensatedSum acc;
  double next = static_cast<double>(n);
  for (Index k = n; k <= seq.horizon();) {
    acc += model.value(k);
    next = 2.0 * static_cast<double>(k);
    if (k > kMaxIndex / 2) break;
    k *= 2;
  }
  // Dyadic points past the horizon: λ_k <= lam_coef k^{-θ}.
  const auto env = model.envelope(seq.horizon());
  if (!env || !(env->theta > 0.0)) return std::nullopt;
  acc += env->lam_coef * std::pow(next, -env->theta) / (1.0 - std::exp2(-env->theta));
  return *gbv_constant * acc.value();
}

std::vector<SeriesValue> eval_series_batch(const SeriesSpec& spec, std::span<const double> xs,
                                           double tol) {
  const auto& seq = spec.coefficients;
  const auto& model = seq.model();
  const auto accept = [&](double value) {
    return spec.relative_tolerance ? tol * std::max(1.0, std::abs(value)) : tol;
  };
  std::vector<SeriesValue> out(xs.size());
  std::vector<Point> pending;

  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    if (!(x > -kTwoPi && x <= kTwoPi)) {
      throw ParameterError("series evaluation needs x in (-2π, 2π], got " + fmt(x));
    }
    if (x > kPi) x -= kTwoPi;
    if (x <= -kPi) x += kTwoPi;
    const Point pt{i, std::abs(x), x < 0.0 ? -1.0 : 1.0};
    if (spec.parity == Parity::kSine && (pt.ax == 0.0 || pt.ax == kPi)) {
      SeriesValue v;
      v.method = SeriesMethod::kZero;
      out[i] = v;
      continue;
    }
    pending.push_back(pt);
  }
  if (pending.empty()) return out;

  const Index H = seq.horizon();

  if (spec.strategy == Strategy::kDirect) {
    const Index N = std::min(spec.direct_terms, H);
    const bool complete = model.finitely_supported() && N >= H;
    std::vector<Point> at_zero, rest;
    for (const auto& p : pending) (p.ax == 0.0 ? at_zero : rest).push_back(p);
    std::optional<double> V;
    if (!complete && N < H) V = variation_tail_bound(seq, N + 1, spec.gbv_constant);
    finite_sum(spec, rest, N, out, SeriesMethod::kPartialSum, 0.0);
    for (const auto& p : rest) {
      if (complete) continue;
      out[p.slot].err = V ? out[p.slot].err + (model.value(N + 1) + *V) * kPi / p.ax : kInf;
    }
    finite_sum(spec, at_zero, N, out, SeriesMethod::kPartialSum, 0.0);
    if (!complete) {
      const auto tail = model.tail_sum(N + 1, 0.0, 1.0);
      for (const auto& p : at_zero) out[p.slot].err = tail ? out[p.slot].err + tail->hi : kInf;
    }
    return out;
  }

  if (model.finitely_supported()) {
    finite_sum(spec, pending, H, out, SeriesMethod::kFiniteSum, 0.0);
    return out;
  }

  // x = 0 on a cosine series: the plain coefficient sum.
  std::vector<Point> work;
  for (const auto& p : pending) {
    if (p.ax != 0.0) {
      work.push_back(p);
      continue;
    }
    const auto total = model.tail_sum(1, 0.0, 1.0);
    if (!total || !total->finite()) {
      throw NumericalFailure("series at x = 0 needs a convergent coefficient sum", kInf);
    }
    SeriesValue v;
    v.value = total->mid();
    v.err = 0.5 * total->width() + kEps * std::abs(v.value);
    v.method = SeriesMethod::kClosedForm;
    if (v.err > accept(v.value)) {
      throw NumericalFailure("coefficient sum enclosure too wide at x = 0", v.err);
    }
    out[p.slot] = finish(spec, p, v);
  }

  pending.clear();
  if (spec.use_closed_form) {
    for (const auto& p : work) {
      const auto cf = model.series_closed_form(spec.parity, p.ax);
      if (cf && cf->err <= accept(cf->value)) {
        out[p.slot] = finish(spec, p, SeriesValue{cf->value, cf->err, 0, SeriesMethod::kClosedForm});
      } else {
        pending.push_back(p);
      }
    }
  } else {
    pending = work;
  }
  if (pending.empty()) return out;

  const bool cm = model.completely_monotone();
  const Index guard = cm ? static_cast<Index>(kMaxAbelOrder) + 1 : 1;
  if (H <= guard + kFirstN) {
    throw NumericalFailure("sequence horizon too short for tail estimation", kInf);
  }
  const Index limit = std::min(spec.max_terms, H - guard);

  std::vector<double> px, cs, ss;
  for (const auto& p : pending) px.push_back(p.ax);
  cs.assign(px.size(), 0.0);
  ss.assign(px.size(), 0.0);
  std::vector<double> best(px.size(), kInf);
  double abs_sum = 0.0;
  Index done = 0;
  Index N = std::min(kFirstN, limit);
  for (;;) {
    abs_sum += accumulate_partial(seq, done + 1, N, px, cs, ss);
    done = N;
    const double partial_err = kPartialRounding * abs_sum;

    std::optional<DifferenceTable> table;
    std::optional<double> V;
    if (cm) {
      table = difference_table(seq, N + 1);
    } else {
      V = variation_tail_bound(seq, N + 1, spec.gbv_constant);
      if (!V) throw NumericalFailure("no bound for the variation tail of " + seq.name(), kInf);
    }

    std::vector<Point> still;
    std::vector<double> sx, scs, sss, sbest;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const auto& p = pending[i];
      SeriesValue v;
      v.terms = N;
      if (cm) {
        const auto [tail, bound] = abel_tail(*table, N, p.ax);
        v.value = pick(spec.parity, cs[i] + tail.real(), ss[i] + tail.imag());
        v.err = bound + partial_err;
        v.method = SeriesMethod::kAbelIterated;
      } else {
        v.value = pick(spec.parity, cs[i], ss[i]);
        v.err = (model.value(N + 1) + *V) * kPi / p.ax + partial_err;
        v.method = SeriesMethod::kAbelBound;
      }
      best[i] = std::min(best[i], v.err);
      if (v.err <= accept(v.value)) {
        out[p.slot] = finish(spec, p, v);
      } else {
        still.push_back(p);
        sx.push_back(px[i]);
        scs.push_back(cs[i]);
        sss.push_back(ss[i]);
        sbest.push_back(best[i]);
      }
    }
    if (still.empty()) return out;
    if (N >= limit) {
      const double achieved = *std::max_element(sbest.begin(), sbest.end());
      throw NumericalFailure("tolerance " + fmt(tol) + " unreachable at x = " +
                                 fmt(still.front().ax) + " within " + std::to_string(limit) +
                                 " terms; achieved error " + fmt(achieved),
                             achieved);
    }
    pending = std::move(still);
    px = std::move(sx);
    cs = std::move(scs);
    ss = std::move(sss);
    best = std::move(sbest);
    N = std::min(limit, N * 2);
  }
}

SeriesValue eval_series(const SeriesSpec& spec, double x, double tol) {
  const double xs[1] = {x};
  return eval_series_batch(spec, xs, tol).front();
}

}  // namespace gbv
