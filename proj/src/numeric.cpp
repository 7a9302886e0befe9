#include "gbv/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace gbv {

namespace {

// B_{2j} / (2j)! for j = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

constexpr Index kEmStart = 24;
constexpr Index kDirectLimit = 512;
constexpr double kRoundingPad = 4e-15;

Enclosure direct_power_sum(Index a, Index b, double t) {
  CompensatedSum acc;
  for (Index k = a;; ++k) {
    acc += std::pow(static_cast<double>(k), t);
    if (k == b) break;
  }
  return Enclosure::exact(acc.value()).padded(kRoundingPad);
}

// Euler–Maclaurin for Σ_{k=A}^{B} k^t, B = +inf allowed. For B = inf and t > -1 the result is the
// analytic continuation (used by zeta on (−∞, 1)).
Enclosure em_power_sum(double A, double B, double t) {
  const bool infinite = std::isinf(B);
  const double tp1 = t + 1.0;
  double integral;
  if (infinite) {
    integral = -std::pow(A, tp1) / tp1;
  } else if (tp1 == 0.0) {
    integral = std::log(B / A);
  } else {
    integral = std::pow(A, tp1) * std::expm1(tp1 * std::log(B / A)) / tp1;
  }
  const double fa = std::pow(A, t);
  const double fb = infinite ? 0.0 : std::pow(B, t);
  double value = integral + 0.5 * (fa + fb);

  // Correction j uses f^{(2j-1)}(x) = t (t-1) ... (t-2j+2) x^{t-2j+1}.
  double falling = t;  // derivative order 1
  int order = 1;
  double last = 0.0;
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const double e = t - order;
    const double db = infinite ? 0.0 : std::pow(B, e);
    const double term = kBernoulliOverFactorial[j] * falling * (db - std::pow(A, e));
    if (j + 1 == kBernoulliOverFactorial.size()) {
      last = term;
      break;
    }
    value += term;
    if (term == 0.0) {
      last = 0.0;
      break;
    }
    falling *= (t - order) * (t - order - 1.0);
    order += 2;
    last = term;
  }
  const double err = 2.0 * std::abs(last) + kRoundingPad * (std::abs(value) + std::abs(integral));
  return Enclosure::around(value, err);
}

}  // namespace

Enclosure power_sum(Index a, Index b, double t) {
  if (a < 1 || b < a) throw ParameterError("power_sum: need 1 <= a <= b");
  if (b - a < kDirectLimit) return direct_power_sum(a, b, t);
  Enclosure head = Enclosure::exact(0.0);
  Index start = a;
  if (a < kEmStart) {
    head = direct_power_sum(a, kEmStart - 1, t);
    start = kEmStart;
  }
  return head + em_power_sum(static_cast<double>(start), static_cast<double>(b), t);
}

std::optional<Enclosure> power_sum_to_infinity(Index a, double t) {
  if (a < 1) throw ParameterError("power_sum_to_infinity: need a >= 1");
  if (!(t < -1.0)) return std::nullopt;
  Enclosure head = Enclosure::exact(0.0);
  Index start = a;
  if (a < kEmStart) {
    head = direct_power_sum(a, kEmStart - 1, t);
    start = kEmStart;
  }
  return head + em_power_sum(static_cast<double>(start),
                             std::numeric_limits<double>::infinity(), t);
}

double zeta(double s) {
  if (s == 1.0) throw ParameterError("zeta: pole at s = 1");
  if (s < 0.0) {
    // Reflection: ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s).
    const double one_minus = 1.0 - s;
    if (one_minus > 170.0) throw ParameterError("zeta: argument too negative");
    const double sine = std::sin(std::numbers::pi * s / 2.0);
    if (sine == 0.0 || std::floor(s / 2.0) == s / 2.0) return 0.0;
    return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(std::numbers::pi)) * sine *
           std::tgamma(one_minus) * zeta(one_minus);
  }
  const Enclosure head = direct_power_sum(1, kEmStart - 1, -s);
  const Enclosure tail = em_power_sum(static_cast<double>(kEmStart),
                                      std::numeric_limits<double>::infinity(), -s);
  return (head + tail).mid();
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  fit.points = std::min(x.size(), y.size());
  if (fit.points < 2) return fit;
  const double n = static_cast<double>(fit.points);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
};

Panel gk15(const BatchIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, 15> xs{};
  std::array<double, 15> fx{};
  for (int i = 0; i < 7; ++i) {
    xs[2 * i] = c - h * kXgk[i];
    xs[2 * i + 1] = c + h * kXgk[i];
  }
  xs[14] = c;
  f(xs, fx);
  double k = kWgk[7] * fx[14];
  double g = kWg[3] * fx[14];
  for (int i = 0; i < 7; ++i) {
    const double pair = fx[2 * i] + fx[2 * i + 1];
    k += kWgk[i] * pair;
    if (i % 2 == 1) g += kWg[i / 2] * pair;
  }
  return {k * h, g * h};
}

void adapt(const BatchIntegrand& f, double a, double b, double rel_tol, double abs_tol, int depth,
           Integral& out) {
  const Panel p = gk15(f, a, b);
  out.evaluations += 15;
  const double err = std::abs(p.kronrod - p.gauss);
  if (err <= std::max(abs_tol, rel_tol * std::abs(p.kronrod)) || depth <= 0 ||
      !std::isfinite(p.kronrod)) {
    out.value += p.kronrod;
    out.err += err;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, rel_tol, 0.5 * abs_tol, depth - 1, out);
  adapt(f, c, b, rel_tol, 0.5 * abs_tol, depth - 1, out);
}

}  // namespace

Integral integrate_adaptive(const BatchIntegrand& f, double a, double b, double rel_tol,
                            double abs_tol, int max_depth) {
  Integral out;
  if (b == a) return out;
  adapt(f, a, b, rel_tol, abs_tol, max_depth, out);
  return out;
}

Integral integrate_graded(const BatchIntegrand& f, double a, double b, bool singular_left,
                          bool singular_right, double rel_tol, double abs_tol) {
  constexpr int kLevels = 60;
  Integral out;
  if (b <= a) return out;
  const double c = 0.5 * (a + b);
  const double half = c - a;
  auto add = [&](const Integral& part) {
    out.value += part.value;
    out.err += part.err;
    out.evaluations += part.evaluations;
  };
  const double panel_tol = abs_tol / (2.0 * kLevels + 2.0);
  if (singular_left) {
    for (int k = 0; k < kLevels; ++k) {
      const double lo = a + half * std::ldexp(1.0, -k - 1);
      const double hi = a + half * std::ldexp(1.0, -k);
      add(integrate_adaptive(f, lo, hi, rel_tol, panel_tol));
    }
    add(integrate_adaptive(f, a, a + half * std::ldexp(1.0, -kLevels), rel_tol, panel_tol, 0));
  } else {
    add(integrate_adaptive(f, a, c, rel_tol, 0.5 * abs_tol));
  }
  if (singular_right) {
    for (int k = 0; k < kLevels; ++k) {
      const double hi = b - half * std::ldexp(1.0, -k - 1);
      const double lo = b - half * std::ldexp(1.0, -k);
      add(integrate_adaptive(f, lo, hi, rel_tol, panel_tol));
    }
    add(integrate_adaptive(f, b - half * std::ldexp(1.0, -kLevels), b, rel_tol, panel_tol, 0));
  } else {
    add(integrate_adaptive(f, c, b, rel_tol, 0.5 * abs_tol));
  }
  return out;
}

Integral integrate_log_graded(const BatchIntegrand& f, double a, double b, double rel_tol,
                              double abs_tol) {
  Integral out;
  if (!(a > 0.0) || b <= a) return out;
  const BatchIntegrand in_log = [&f](std::span<const double> us, std::span<double> res) {
    std::array<double, 15> xs{};
    for (std::size_t i = 0; i < us.size(); ++i) xs[i] = std::exp(us[i]);
    f(std::span<const double>(xs.data(), us.size()), res);
    for (std::size_t i = 0; i < us.size(); ++i) res[i] *= xs[i];
  };
  const double ua = std::log(a), ub = std::log(b);
  const int panels = std::max(1, static_cast<int>(std::ceil((ub - ua) / std::numbers::ln2)));
  const double width = (ub - ua) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = ua + width * i;
    const double hi = i + 1 == panels ? ub : ua + width * (i + 1);
    const Integral part = integrate_adaptive(in_log, lo, hi, rel_tol, abs_tol / panels);
    out.value += part.value;
    out.err += part.err;
    out.evaluations += part.evaluations;
  }
  return out;
}

}  // namespace gbv
