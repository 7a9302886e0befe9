#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gbv/generators.hpp"
#include "gbv/series.hpp"

using namespace gbv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Oracle {
  double beta;
  double x;
  double re;  // Σ n^{-β} cos nx
  double im;  // Σ n^{-β} sin nx
};

// Li_β(e^{ix}) from mpmath through the Hurwitz zeta inversion formula (30 digits).
constexpr Oracle kOracles[] = {
    {0.75, 0.5, 0.54824554510858185, 1.4896322297846739},
    {0.75, 1.0, -0.066923311895889542, 1.0660345425860682},
    {0.75, 3.0, -0.64927180233120347, 0.062566768109484971},
    {0.25, 0.5, -0.023363969993317234, 1.8370076251545404},
    {0.25, 1.0, -0.33928965269125055, 0.99693749103183743},
    {0.25, 3.0, -0.55391801026253064, 0.044779736203885209},
    {1.5, 0.5, 0.86592952276498824, 1.0428086988788313},
    {1.5, 1.0, 0.21004942192553099, 1.0505588471278016},
    {1.5, 3.0, -0.76133529018598283, 0.085593008226052014},
};

}  // namespace

TEST_CASE("dirichlet kernel matches direct sums") {
  for (Index k : {Index{0}, Index{1}, Index{2}, Index{7}, Index{64}, Index{511}, Index{512}}) {
    for (double x : {0.0, 1e-9, 1e-3, 0.3, 1.0, 2.5, kPi, -1.2, 6.0}) {
      long double direct = 0.5L;
      for (Index j = 1; j <= k; ++j) direct += std::cos(static_cast<long double>(j) * x);
      CAPTURE(k);
      CAPTURE(x);
      CHECK(std::abs(dirichlet_kernel(k, x) - static_cast<double>(direct)) < 1e-10);
    }
  }
  CHECK(dirichlet_kernel(10, 0.0) == 10.5);
}

TEST_CASE("dirichlet kernel is continuous at multiples of 2π") {
  for (Index k : {Index{5}, Index{100}}) {
    const double at = dirichlet_kernel(k, 2 * kPi);
    CHECK(at == doctest::Approx(k + 0.5).epsilon(1e-12));
    CHECK(dirichlet_kernel(k, 2 * kPi - 1e-9) == doctest::Approx(at).epsilon(1e-6));
  }
}

TEST_CASE("power series against polylogarithm oracles") {
  for (bool closed : {true, false}) {
    for (const auto& o : kOracles) {
      CAPTURE(closed);
      CAPTURE(o.beta);
      CAPTURE(o.x);
      for (Parity par : {Parity::kCosine, Parity::kSine}) {
        SeriesSpec spec(gen_power(o.beta), par);
        spec.use_closed_form = closed;
        const auto v = eval_series(spec, o.x, 1e-10);
        const double want = par == Parity::kCosine ? o.re : o.im;
        CHECK(v.err <= 1e-10);
        CHECK(std::abs(v.value - want) <= v.err + 1e-14);
      }
    }
  }
}

TEST_CASE("harmonic series closed forms") {
  SeriesSpec c(gen_power(1.0), Parity::kCosine);
  SeriesSpec s(gen_power(1.0), Parity::kSine);
  for (double x : {0.1, 1.0, 2.0, 3.0}) {
    CHECK(eval_series(c, x).value == doctest::Approx(-std::log(2.0 * std::sin(x / 2))).epsilon(1e-12));
    CHECK(eval_series(s, x).value == doctest::Approx((kPi - x) / 2).epsilon(1e-12));
  }
  c.use_closed_form = false;
  const auto v = eval_series(c, 1.0, 1e-9);
  CHECK(std::abs(v.value - 0.042019505825368962) <= v.err + 1e-15);
  CHECK(v.method == SeriesMethod::kAbelIterated);
}

TEST_CASE("special points and domain") {
  SeriesSpec s(gen_power(0.5), Parity::kSine);
  CHECK(eval_series(s, 0.0).value == 0.0);
  CHECK(eval_series(s, kPi).method == SeriesMethod::kZero);
  CHECK_THROWS_AS(eval_series(s, 7.0), ParameterError);
  CHECK_THROWS_AS(eval_series(s, -2 * kPi), ParameterError);
  // Odd and even symmetry.
  CHECK(eval_series(s, -1.0).value == doctest::Approx(-eval_series(s, 1.0).value));
  SeriesSpec c(gen_power(1.5), Parity::kCosine);
  CHECK(eval_series(c, 0.0, 1e-9).value == doctest::Approx(2.6123753486854883).epsilon(1e-10));
  CHECK(eval_series(c, 2 * kPi - 1.0).value == doctest::Approx(eval_series(c, 1.0).value));
  SeriesSpec divergent(gen_power(0.5), Parity::kCosine);
  CHECK_THROWS_AS(eval_series(divergent, 0.0), NumericalFailure);
}

TEST_CASE("continuity of a summable cosine series at zero") {
  SeriesSpec c(gen_power(1.5), Parity::kCosine);
  const double f0 = eval_series(c, 0.0, 1e-9).value;
  double last = 1e9;
  for (double x : {1e-2, 1e-4, 1e-6}) {
    const double gap = std::abs(eval_series(c, x, 1e-9).value - f0);
    CHECK(gap < last);
    last = gap;
  }
  CHECK(last < 1e-2);
}

TEST_CASE("finite sequences and constants") {
  SeriesSpec c(make_explicit({1.0, 0.0, 2.0}), Parity::kCosine);
  c.constant_term = 0.5;
  const double x = 0.7;
  const auto v = eval_series(c, x);
  CHECK(v.value == doctest::Approx(0.5 + std::cos(x) + 2 * std::cos(3 * x)).epsilon(1e-15));
  CHECK(v.method == SeriesMethod::kFiniteSum);
  CHECK(eval_series(c, 0.0).value == doctest::Approx(3.5));
  SeriesSpec z(gen_zero(), Parity::kCosine);
  CHECK(eval_series(z, 1.0).value == 0.0);
}

TEST_CASE("direct strategy sums a fixed number of terms") {
  SeriesSpec c(gen_power(0.75), Parity::kCosine);
  c.strategy = Strategy::kDirect;
  c.direct_terms = 100;
  const auto v = eval_series(c, 1.0);
  CHECK(v.terms == 100);
  CHECK(std::abs(v.value - kOracles[1].re) <= v.err);
  double direct = 0.0;
  for (int n = 1; n <= 100; ++n) direct += std::pow(n, -0.75) * std::cos(n);
  CHECK(v.value == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("counterexample series agrees with its explicit head") {
  const auto s = gen_leindler(3);
  const Index H = s.horizon();
  std::vector<double> head(H);
  s.fill(1, head);
  SeriesSpec rule(s, Parity::kCosine);
  SeriesSpec expl(make_explicit(head), Parity::kCosine);
  const double beyond = s.model().variation_beyond_horizon()->hi + s.value_at(H);
  for (double x : {0.3, 1.0, 2.9}) {
    const auto a = eval_series(rule, x, 1e-8);
    const auto b = eval_series(expl, x, 1e-8);
    CHECK(a.err <= 1e-8);
    CHECK(std::abs(a.value - b.value) <= a.err + b.err + beyond * kPi / x);
  }
}

TEST_CASE("error bounds shrink with the tolerance") {
  SeriesSpec spec(gen_leindler(4), Parity::kSine);
  double last_err = 1.0;
  Index last_terms = 0;
  for (double tol : {1e-4, 1e-6, 1e-8}) {
    const auto v = eval_series(spec, 0.5, tol);
    CHECK(v.err <= tol);
    CHECK(v.err <= last_err);
    CHECK(v.terms >= last_terms);
    last_err = v.err;
    last_terms = v.terms;
  }
}

TEST_CASE("batch evaluation matches pointwise and is deterministic") {
  SeriesSpec spec(gen_power(0.75), Parity::kCosine);
  spec.use_closed_form = false;
  const std::vector<double> xs{0.2, 0.9, 2.0, 3.1};
  const auto batch = eval_series_batch(spec, xs, 1e-9);
  const auto again = eval_series_batch(spec, xs, 1e-9);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto p = eval_series(spec, xs[i], 1e-9);
    CHECK(std::abs(batch[i].value - p.value) <= batch[i].err + p.err);
    CHECK(batch[i].value == again[i].value);
    CHECK(batch[i].err == again[i].err);
  }
}

TEST_CASE("variation tail bound") {
  const auto h = variation_tail_bound(gen_power(1.0), 10, std::nullopt);
  REQUIRE(h);
  CHECK(*h >= 0.1 * (1 - 1e-12));
  CHECK(*h <= 0.1 * (1 + 1e-9));
  const auto l = variation_tail_bound(gen_leindler(4), 300, std::nullopt);
  REQUIRE(l);
  CHECK(*l > 0.0);
}

TEST_CASE("unreachable tolerance is reported") {
  SeriesSpec spec(gen_leindler(2), Parity::kCosine);
  spec.max_terms = 1024;
  CHECK_THROWS_AS(eval_series(spec, 1e-3, 1e-15), NumericalFailure);
}
