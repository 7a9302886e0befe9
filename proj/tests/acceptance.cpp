#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gbv/generators.hpp"
#include "gbv/inequalities.hpp"
#include "gbv/measures.hpp"
#include "gbv/series.hpp"

using namespace gbv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string printf_string(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Outcome counterexample() {
  std::vector<std::pair<double, double>> grid;
  for (double p : {1.5, 2.0, 3.0}) {
    for (double g : {0.0, 0.2, 0.45 * (1.0 / p) / 0.5}) grid.emplace_back(p, g);
  }
  const auto rep = harness_theorem3(4, grid);
  const auto& gbv = rep.inclusion.get(ClassId::kGbv);
  const auto& rbv = rep.inclusion.get(ClassId::kRbv);
  double at256 = 0.0, at65536 = 0.0;
  for (const auto& [m, r] : rep.rbv_at_blocks) {
    if (m == 256) at256 = r;
    if (m == 65536) at65536 = r;
  }
  bool converges = rep.criteria.size() == grid.size();
  for (const auto& c : rep.criteria) converges = converges && c.verdict == CriterionVerdict::kConverges;
  const bool ok = rep.status == CheckStatus::kPass && gbv.verdict == Verdict::kMember &&
                  gbv.trend == Trend::kBounded && std::abs(rep.quasimonotone_alpha - 1.0) <= 1e-9 &&
                  rbv.verdict == Verdict::kViolated && at256 >= 1.9 && at65536 >= 2.9 && converges;
  return {ok, printf_string("gbv %s (sup %.4f), alpha %.12f, rbv ratio %.4f at 256, %.4f at 65536, "
                            "eq5 converges on %zu/%zu grid points",
                            to_string(gbv.verdict).c_str(), gbv.sup_ratio, rep.quasimonotone_alpha,
                            at256, at65536, rep.criteria.size(), grid.size())};
}

Outcome hardy_littlewood() {
  const auto a = run_hardy_littlewood_suite(InequalityId::kEq8, 1000, 7);
  const auto b = run_hardy_littlewood_suite(InequalityId::kEq9, 1000, 7);
  const bool ok = a.passed == 1000 && b.passed == 1000 && a.max_p1_relative_gap <= 1e-12;
  return {ok, printf_string("eq8 %zu/1000, eq9 %zu/1000, p = 1 max relative gap %.2e over %zu",
                            a.passed, b.passed, a.max_p1_relative_gap, a.p1_instances)};
}

Outcome dyadic_sums() {
  const auto anchor = verify_lemma3(gen_power(1.0), 1, 1.0);
  bool ok = std::abs(anchor.lhs - 1.0) < 1e-12 &&
            std::abs(anchor.constant * anchor.rhs - 4.0 * kPi * kPi / 6.0) < 1e-10 && anchor.pass;
  std::size_t checked = 0, passed = 0;
  for (const auto& seq : {gen_power(1.0), gen_power(0.75), gen_leindler(4)}) {
    const Index H = std::min<Index>(seq.horizon(), Index{1} << 18);
    const auto cert = classify(seq, ClassId::kGbv, H);
    if (cert.verdict != Verdict::kMember) ok = false;
    for (Index n = 1; n <= 1024; n *= 2) {
      ++checked;
      if (verify_lemma3(seq, n, cert.sup_ratio).status == CheckStatus::kPass) ++passed;
    }
  }
  ok = ok && passed == checked;
  return {ok, printf_string("anchor lhs %.6f vs 4 zeta(2) = %.4f; %zu/%zu ladder checks pass",
                            anchor.lhs, anchor.constant * anchor.rhs, passed, checked)};
}

Outcome harmonic_tail_ratio() {
  std::vector<double> xs, ys;
  double max_ratio = 0.0;
  for (Index n = 8; n <= 512; n *= 2) {
    const auto r = verify_lemma4(gen_power(0.75), 2.0, n);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(*r.ratio));
    max_ratio = std::max(max_ratio, *r.ratio);
  }
  const double slope = fit_line(xs, ys).slope;
  const double anchor = *verify_lemma4(gen_power(1.0), 2.0, 8).ratio;
  const bool ok = std::abs(slope) <= 0.1 && max_ratio <= 8.0 && std::abs(anchor - 0.90) <= 0.02;
  return {ok, printf_string("slope %.4f, max ratio %.4f, anchor ratio %.5f", slope, max_ratio,
                            anchor)};
}

Outcome norm_consistency() {
  std::size_t points = 0, agree = 0;
  std::string first_bad;
  for (int b = 0; b <= 13; ++b) {
    const double beta = 0.25 + 0.05 * b;
    for (double p : {1.5, 2.0, 3.0}) {
      for (int i = 1; i <= 9; ++i) {
        const double gamma = (1.0 / p - 1.0) + 0.1 * i;
        if (std::abs(gamma + 1.0 - beta - 1.0 / p) < 0.02) continue;
        ++points;
        const auto rep = harness_theorem13(gen_power(beta), MeasureParams::make(p, gamma));
        if (rep.verdict == HarnessVerdict::kAgree) {
          ++agree;
        } else if (first_bad.empty()) {
          first_bad = printf_string(" first miss beta %.2f p %.1f gamma %.3f (%s)", beta, p, gamma,
                                    to_string(rep.verdict).c_str());
        }
      }
    }
  }
  return {agree == points && points > 0,
          printf_string("%zu/%zu grid points agree", agree, points) + first_bad};
}

Outcome modulus_scan() {
  const auto rep = harness_theorem23(gen_power(0.75), 2.0, {8, 16, 32, 64, 128, 256});
  return {rep.pass && rep.max_ratio <= 50.0 && std::abs(rep.slope) <= 0.1,
          printf_string("max ratio %.4f, slope %.4f", rep.max_ratio, rep.slope)};
}

Outcome closed_forms() {
  SeriesSpec cosx(make_explicit({1.0}), Parity::kCosine);
  const double omega = modulus_lp(cosx, 2.0, 0.5, 8).omega;
  const double omega_exact = 2.0 * std::sin(0.25) * std::sqrt(kPi);
  auto params = MeasureParams::make(2.0, 0.0);
  params.x_min = 1e-12;
  const double norm = weighted_lp_norm(cosx, params).norm;
  double worst = 0.0;
  for (Index k = 0; k <= 512; ++k) {
    for (double x : {1e-7, 0.1, 1.0, 2.0, 3.0, kPi, -2.5, 6.2}) {
      long double direct = 0.5L;
      for (Index j = 1; j <= k; ++j) direct += std::cos(static_cast<long double>(j) * x);
      worst = std::max(worst, std::abs(dirichlet_kernel(k, x) - static_cast<double>(direct)));
    }
  }
  const bool ok = std::abs(omega - 0.877058) <= 1e-4 && std::abs(omega - omega_exact) <= 1e-9 &&
                  std::abs(norm - 1.25331) <= 1e-4 && worst <= 1e-10;
  return {ok, printf_string("modulus %.10f (2 sin(1/4) sqrt(pi) = %.10f), norm %.8f, dirichlet "
                            "max error %.2e",
                            omega, omega_exact, norm, worst)};
}

Outcome inclusions() {
  const auto rep = run_inclusion_suite(200, 11);
  return {rep.instances == 200 && rep.failed == 0 && rep.inconclusive == 0,
          printf_string("%zu/%zu sequences consistent (seed %llu)", rep.passed, rep.instances,
                        static_cast<unsigned long long>(rep.seed))};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "counterexample certification", 10.0, counterexample},
      {2, "weighted Hardy-Littlewood suites", 30.0, hardy_littlewood},
      {3, "dyadic sums with C = 4M", 0.0, dyadic_sums},
      {4, "harmonic tail ratio bounded", 0.0, harmonic_tail_ratio},
      {5, "criterion vs norm ladder", 300.0, norm_consistency},
      {6, "modulus ratio scan", 0.0, modulus_scan},
      {7, "closed-form anchors", 0.0, closed_forms},
      {8, "class inclusions", 0.0, inclusions},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      out.pass = false;
      out.detail += printf_string(" [over the %.0f s budget]", c.budget_s);
    }
    if (!out.pass) ++failed;
    std::printf("criterion %d %s: %s (%.2f s) %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
