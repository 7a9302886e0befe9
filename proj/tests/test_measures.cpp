#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gbv/generators.hpp"
#include "gbv/measures.hpp"

using namespace gbv;

namespace {

constexpr double kPi = std::numbers::pi;

double total(const CriterionResult& r) {
  return r.total_through + (r.tail_bound ? r.tail_bound->mid() : 0.0);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(MeasureParams::make(2.0, 0.49));
  CHECK_THROWS_AS(MeasureParams::make(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(MeasureParams::make(2.0, 0.5), ParameterError);
  CHECK_THROWS_AS(MeasureParams::make(2.0, -0.5), ParameterError);
  CHECK_THROWS_AS(MeasureParams::make(3.0, 0.34), ParameterError);
  auto p = MeasureParams::make(2.0, 0.0);
  p.x_min = 4.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  CHECK(parse_criterion_variant("eq3") == CriterionVariant::kEq3);
  CHECK_THROWS_AS(parse_criterion_variant("eq7"), ParameterError);
}

TEST_CASE("eq5 converges and encloses the zeta value") {
  const auto r = criterion_sum(gen_power(0.75), MeasureParams::make(2.0, 0.1),
                               CriterionVariant::kEq5, Index{1} << 20);
  CHECK(r.verdict == CriterionVerdict::kConverges);
  REQUIRE(r.tail_bound);
  // Σ n^{0.2} n^{-1.5} = ζ(1.3) from mpmath
  const double z = 3.9319492118095437;
  CHECK(r.total_through + r.tail_bound->lo <= z * (1 + 1e-10));
  CHECK(r.total_through + r.tail_bound->hi >= z * (1 - 1e-10));
  double blocks = 0.0;
  for (double b : r.block_sums) blocks += b;
  CHECK(blocks == doctest::Approx(r.total_through).epsilon(1e-12));
}

TEST_CASE("eq5 diverges past the boundary") {
  const auto r = criterion_sum(gen_power(0.25), MeasureParams::make(2.0, 0.3),
                               CriterionVariant::kEq5, Index{1} << 20);
  CHECK(r.verdict == CriterionVerdict::kDiverges);
  CHECK_FALSE(r.tail_bound);
}

TEST_CASE("eq6 is eq5 without weight") {
  const auto s = gen_leindler(4);
  const auto a = criterion_sum(s, MeasureParams::make(2.0, 0.3), CriterionVariant::kEq6, 1 << 16);
  const auto b = criterion_sum(s, MeasureParams::make(2.0, 0.0), CriterionVariant::kEq5, 1 << 16);
  CHECK(a.total_through == doctest::Approx(b.total_through).epsilon(1e-14));
  CHECK(a.verdict == CriterionVerdict::kConverges);
}

TEST_CASE("eq3 coincides with eq5 for the harmonic sequence") {
  // Σ_{k≥n} |Δ(1/k)| telescopes to 1/n.
  const auto p = MeasureParams::make(1.5, 0.2);
  const auto a = criterion_sum(gen_power(1.0), p, CriterionVariant::kEq3, 1 << 14);
  const auto b = criterion_sum(gen_power(1.0), p, CriterionVariant::kEq5, 1 << 14);
  CHECK(a.total_through == doctest::Approx(b.total_through).epsilon(1e-10));
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("eq4 dominates eq5 for monotone sequences") {
  const auto p = MeasureParams::make(2.0, 0.0);
  const auto a = criterion_sum(gen_power(0.75), p, CriterionVariant::kEq4, 1 << 12);
  const auto b = criterion_sum(gen_power(0.75), p, CriterionVariant::kEq5, 1 << 12);
  CHECK(a.total_through >= b.total_through);
  CHECK(a.verdict == CriterionVerdict::kConverges);
}

TEST_CASE("criterion on trivial sequences") {
  const auto z = criterion_sum(gen_zero(), MeasureParams::make(2.0, 0.0), CriterionVariant::kEq5, 64);
  CHECK(z.verdict == CriterionVerdict::kConverges);
  CHECK(total(z) == 0.0);
  CHECK_THROWS_AS(criterion_sum(gen_power(1.0), MeasureParams::make(2.0, 0.0),
                                CriterionVariant::kEq5, 10),
                  ParameterError);
}

TEST_CASE("weighted sums") {
  const auto w = weighted_sum(gen_power(1.0), 1, 10, 0.0, 1.0);
  CHECK(w.mid() == doctest::Approx(7381.0 / 2520.0).epsilon(1e-15));
  const auto e = weighted_sum(make_explicit({1.0, 2.0, 3.0}), 2, 3, 1.0, 2.0);
  CHECK(e.mid() == doctest::Approx(2 * 4.0 + 3 * 9.0));
}

TEST_CASE("weighted norm of cos x") {
  SeriesSpec spec(make_explicit({1.0}), Parity::kCosine);
  auto params = MeasureParams::make(2.0, 0.0);
  // mpmath: (∫_{1e-4}^{π} cos² x dx)^{1/2}
  const auto r = weighted_lp_norm(spec, params);
  CHECK(r.norm == doctest::Approx(1.2532742424526365).epsilon(1e-9));
  params.x_min = 1e-12;
  CHECK(std::abs(weighted_lp_norm(spec, params).norm - std::sqrt(kPi / 2)) < 1e-4);
}

TEST_CASE("weighted norm of a singular series") {
  // x^{-γ} Σ n^{-3/4} cos nx behaves like x^{-γ-1/4} near 0.
  SeriesSpec spec(gen_power(0.75), Parity::kCosine);
  spec.tolerance = 1e-8;
  auto params = MeasureParams::make(2.0, 0.1);
  params.x_min = 1e-6;
  const auto a = weighted_lp_norm(spec, params);
  params.x_min = 1e-10;
  const auto b = weighted_lp_norm(spec, params);
  // mpmath: ∫_{1e-10}^{1e-6} x^{-0.2} (Re Li_{3/4}(e^{ix}))² dx
  CHECK(b.norm * b.norm - a.norm * a.norm == doctest::Approx(0.53470906493443335).epsilon(1e-6));
  CHECK(a.err < 1e-6 * a.norm);
}

TEST_CASE("modulus of continuity of cos x") {
  SeriesSpec spec(make_explicit({1.0}), Parity::kCosine);
  // (∫_0^{2π} |cos(x+h) − cos x|² dx)^{1/2} = 2 sin(h/2) √π
  for (double h : {0.01, 0.5, 2.0}) {
    CHECK(shifted_difference_norm(spec, 2.0, h, 1e-10) ==
          doctest::Approx(2 * std::sin(h / 2) * std::sqrt(kPi)).epsilon(1e-9));
  }
  const auto m = modulus_lp(spec, 2.0, 0.5, 8);
  CHECK(m.omega == doctest::Approx(0.87702420061990109).epsilon(1e-9));
  CHECK(m.h_at_max == 0.5);
  CHECK(m.hs.size() == 8);
  CHECK_THROWS_AS(modulus_lp(spec, 2.0, 4.0, 8), ParameterError);
}

TEST_CASE("modulus of a singular cosine series is finite and monotone in t") {
  SeriesSpec spec(gen_power(0.75), Parity::kCosine);
  spec.tolerance = 1e-9;
  const auto a = modulus_lp(spec, 2.0, 1.0 / 64.0, 8);
  const auto b = modulus_lp(spec, 2.0, 1.0 / 16.0, 8);
  CHECK(a.omega > 0.0);
  CHECK(b.omega > a.omega);
  // both scale as t^{1/4}
  CHECK(std::log(b.omega / a.omega) / std::log(4.0) == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("rhs of the modulus estimate") {
  const auto r = rhs_eq7(gen_power(1.0), 2.0, 8);
  // mpmath: (Σ_{k<8} 1)^{1/2}/8 + ζ(2, 8)^{1/2}
  CHECK(r.value == doctest::Approx(0.69559836616016687).epsilon(1e-12));
  CHECK(r.tail_certified);
  CHECK(r.head == doctest::Approx(std::sqrt(7.0) / 8).epsilon(1e-14));
  CHECK_THROWS_AS(rhs_eq7(gen_power(1.0), 2.0, 1), ParameterError);
  const auto z = rhs_eq7(gen_zero(), 2.0, 8);
  CHECK(z.value == 0.0);
}
