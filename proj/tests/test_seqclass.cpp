#include <doctest.h>

#include <cmath>
#include <vector>

#include "gbv/generators.hpp"
#include "gbv/inequalities.hpp"
#include "gbv/seqclass.hpp"

using namespace gbv;

namespace {

// 1/n² with spikes 1/n at powers of two.
CoefficientSequence spiky() {
  std::vector<double> v(Index{1} << 17);
  for (std::size_t n = 1; n <= v.size(); ++n) {
    const double d = static_cast<double>(n);
    v[n - 1] = (n & (n - 1)) == 0 ? 1.0 / d : 1.0 / (d * d);
  }
  return make_explicit(std::move(v), "spiky");
}

}  // namespace

TEST_CASE("differences and variations") {
  const auto s = gen_power(1.0);
  CHECK(forward_difference(s, 1) == 0.5);
  CHECK(block_variation(s, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(block_variation(s, 10) == doctest::Approx(0.1 - 1.0 / 21.0));
  const auto t = tail_variation(s, 4, 999);
  CHECK(t.value == doctest::Approx(0.25 - 0.001));
  CHECK(t.truncated);
  const auto e = make_explicit({1.0, 0.5, 0.75, 0.25});
  CHECK(block_variation(e, 1) == doctest::Approx(0.75));
  CHECK_THROWS_AS(block_variation(e, 2), OutOfRangeError);
  CHECK_THROWS_AS(forward_difference(e, 4), OutOfRangeError);
  const auto te = tail_variation(e, 1, 4);
  CHECK(te.value == doctest::Approx(1.25));
  CHECK_FALSE(te.truncated);
}

TEST_CASE("geometric ladder") {
  CHECK(geometric_ladder(64, 2) ==
        std::vector<Index>{1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64});
  CHECK(geometric_ladder(10, 1) == std::vector<Index>{1, 2, 4, 8});
  const auto dense = geometric_ladder(1000, 4);
  for (std::size_t i = 1; i < dense.size(); ++i) CHECK(dense[i] > dense[i - 1]);
  CHECK_THROWS_AS(geometric_ladder(10, 0), ParameterError);
}

TEST_CASE("harmonic sequence certificates") {
  const auto s = gen_power(1.0);
  const auto gbv = classify(s, ClassId::kGbv, Index{1} << 18);
  CHECK(gbv.verdict == Verdict::kMember);
  CHECK(gbv.trend == Trend::kBounded);
  CHECK(gbv.sup_ratio == doctest::Approx(2.0 / 3.0));
  CHECK(gbv.witness_m == 1);
  const auto rbv = classify(s, ClassId::kRbv, Index{1} << 18);
  CHECK(rbv.verdict == Verdict::kMember);
  CHECK(rbv.sup_ratio == doctest::Approx(1.0));
  CHECK(classify(s, ClassId::kMonotone, 1000).verdict == Verdict::kMember);
  const auto q = classify(s, ClassId::kQuasimonotone, 1000);
  CHECK(q.verdict == Verdict::kMember);
  CHECK(q.sup_ratio == 0.0);
  CHECK(q.warnings.empty());
}

TEST_CASE("counterexample certificates") {
  const auto s = gen_leindler(4);
  const auto rep = inclusion_report(s, Index{1} << 18);
  CHECK(rep.consistent);
  const auto& gbv = rep.get(ClassId::kGbv);
  CHECK(gbv.verdict == Verdict::kMember);
  CHECK(gbv.trend == Trend::kBounded);
  const auto& rbv = rep.get(ClassId::kRbv);
  CHECK(rbv.verdict == Verdict::kViolated);
  CHECK(rbv.trend == Trend::kGrowing);
  const auto& quasi = rep.get(ClassId::kQuasimonotone);
  CHECK(quasi.verdict == Verdict::kMember);
  CHECK(quasi.sup_ratio == doctest::Approx(1.0).epsilon(1e-9));
  const auto& mono = rep.get(ClassId::kMonotone);
  CHECK(mono.verdict == Verdict::kViolated);
  CHECK(std::isinf(mono.sup_ratio));
  CHECK_FALSE(mono.violations.empty());
  // Tail variation at v_m is at least m - 1 times λ_{v_m}.
  for (const auto& pt : rbv.ladder) {
    if (pt.m == 256) CHECK(pt.ratio >= 2.0);
    if (pt.m == 65536) CHECK(pt.ratio >= 3.0);
  }
}

TEST_CASE("power growth of the ratios is detected") {
  const auto s = spiky();
  const Index H = Index{1} << 15;
  for (ClassId id : {ClassId::kGbv, ClassId::kRbv, ClassId::kQuasimonotone}) {
    const auto c = classify(s, id, H);
    CAPTURE(to_string(id));
    CHECK(c.verdict == Verdict::kViolated);
    CHECK(c.trend == Trend::kGrowing);
    CHECK(c.slope > 0.5);
    CHECK(c.r2 > 0.8);
  }
}

TEST_CASE("increasing explicit sequence is not monotone") {
  const auto e = make_explicit({1, 1, 1, 1, 1, 2, 1, 0.5, 0.25, 0.1, 0.05, 0.01});
  const auto c = classify(e, ClassId::kMonotone, 10);
  CHECK(c.verdict == Verdict::kViolated);
  REQUIRE_FALSE(c.violations.empty());
  CHECK(c.violations.front().ratio == doctest::Approx(1.0));
}

TEST_CASE("non-null sequences") {
  const auto c = classify(gen_power(0.0), ClassId::kGbv, 64);
  CHECK(c.warnings.size() == 1);
  ClassifyOptions strict;
  strict.non_null = NonNullPolicy::kReject;
  CHECK_THROWS_AS(classify(gen_power(0.0), ClassId::kGbv, 64, strict), ParameterError);
  CHECK_FALSE(looks_null(gen_power(0.0)));
  CHECK(looks_null(gen_power(0.5)));
  CHECK(looks_null(make_explicit({1.0, 2.0})));
}

TEST_CASE("classify argument checks") {
  const auto s = gen_leindler(3);
  CHECK_THROWS_AS(classify(s, ClassId::kGbv, 4), ParameterError);
  CHECK_THROWS_AS(classify(s, ClassId::kGbv, s.horizon()), OutOfRangeError);
  CHECK_THROWS_AS(parse_class_id("bv"), ParameterError);
  CHECK(parse_class_id("quasimonotone") == ClassId::kQuasimonotone);
  CHECK(to_string(Verdict::kMember) == "member_up_to_horizon");
}

TEST_CASE("classification is deterministic") {
  const auto s = gen_leindler(4);
  const auto a = classify(s, ClassId::kRbv, Index{1} << 16);
  const auto b = classify(s, ClassId::kRbv, Index{1} << 16);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("random class sequences respect the inclusions") {
  const auto rep = run_inclusion_suite(200, 11);
  CHECK(rep.instances == 200);
  CHECK(rep.failed == 0);
  CHECK(rep.inconclusive == 0);
}
