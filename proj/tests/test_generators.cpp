#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "gbv/generators.hpp"

using namespace gbv;

namespace {

std::string load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_sequence_csv(in, "t.csv");
  } catch (const LoadError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("power family") {
  const auto s = gen_power(0.75, 2.0);
  CHECK(s.value_at(1) == 2.0);
  CHECK(s.value_at(16) == doctest::Approx(2.0 / 8.0));
  CHECK(s.horizon() == kMaxIndex);
  CHECK(s.model().completely_monotone());
  CHECK(gen_power(1.0).value_at(7) == 1.0 / 7.0);
  CHECK_THROWS_AS(gen_power(-1.0), ParameterError);
  CHECK_THROWS_AS(gen_power(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(s.value_at(0), OutOfRangeError);
}

TEST_CASE("power family weighted sums") {
  const auto s = gen_power(1.0);
  const auto h10 = s.model().range_sum(1, 10, 0.0, 1.0);
  REQUIRE(h10);
  CHECK(h10->mid() == doctest::Approx(7381.0 / 2520.0).epsilon(1e-15));
  const auto z2 = s.model().tail_sum(1, 0.0, 2.0);
  REQUIRE(z2);
  CHECK(z2->mid() == doctest::Approx(1.6449340668482264).epsilon(1e-13));
  CHECK_FALSE(s.model().tail_sum(1, 0.0, 1.0));
}

TEST_CASE("zero family") {
  const auto z = gen_zero();
  CHECK(z.value_at(12345) == 0.0);
  const auto v = z.variation_to_infinity(1);
  REQUIRE(v);
  CHECK(v->hi == 0.0);
}

TEST_CASE("counterexample values are exact") {
  CHECK(LeindlerParams::v(1) == 4);
  CHECK(LeindlerParams::v(2) == 16);
  CHECK(LeindlerParams::v(3) == 256);
  CHECK(LeindlerParams::v(4) == 65536);
  CHECK(LeindlerParams::v(5) == Index{1} << 32);
  CHECK_THROWS_AS(LeindlerParams::v(6), ParameterError);
  CHECK(LeindlerParams::block_of(4) == 1);
  CHECK(LeindlerParams::block_of(15) == 1);
  CHECK(LeindlerParams::block_of(16) == 2);
  CHECK(LeindlerParams::block_of(255) == 2);
  CHECK(LeindlerParams::block_of(256) == 3);

  const auto s = gen_leindler(4);
  // λ_n = n / (m² v_m v_{m+1}) for v_m <= n <= m v_m, then 1 / (m v_{m+1}).
  CHECK(s.value_at(4) == 1.0 / 16.0);
  CHECK(s.value_at(16) == 1.0 / 1024.0);
  CHECK(s.value_at(20) == 20.0 / 16384.0);
  CHECK(s.value_at(32) == 1.0 / 512.0);
  CHECK(s.value_at(100) == 1.0 / 512.0);
  CHECK(s.value_at(256) == 256.0 / (9.0 * 256.0 * 65536.0));
  CHECK(s.value_at(768) == 1.0 / (3.0 * 65536.0));
  CHECK(s.value_at(65535) == 1.0 / (3.0 * 65536.0));
  CHECK(s.value_at(1) == 1.0 / 16.0);
  CHECK(s.horizon() == LeindlerParams::v(5));
  CHECK(gen_leindler(5).horizon() == kMaxIndex);
  CHECK_THROWS_AS(gen_leindler(0), ParameterError);
  CHECK_THROWS_AS(gen_leindler(6), ParameterError);
}

TEST_CASE("counterexample n λ_n tends to zero") {
  const auto s = gen_leindler(5);
  for (Index n : {Index{16}, Index{32}, Index{256}, Index{768}, Index{65536}, Index{4} << 16,
                  Index{1} << 32, Index{5} << 32}) {
    const int m = LeindlerParams::block_of(n);
    CHECK(static_cast<double>(n) * s.value_at(n) <= 1.0 / m + 1e-15);
  }
}

TEST_CASE("counterexample range sums match brute force") {
  const auto s = gen_leindler(3);
  for (double q : {1.0, 2.0, 1.5}) {
    CompensatedSum acc;
    for (Index k = 3; k <= 5000; ++k) acc += std::pow(static_cast<double>(k), 0.2) *
                                             std::pow(s.value_at(k), q);
    const auto e = s.model().range_sum(3, 5000, 0.2, q);
    REQUIRE(e);
    CHECK(e->lo <= acc.value() * (1 + 1e-13));
    CHECK(e->hi >= acc.value() * (1 - 1e-13));
  }
}

TEST_CASE("run_end follows monotone pieces") {
  const auto s = gen_leindler(3);
  CHECK(s.model().run_end(1) == 15);
  CHECK(s.model().run_end(16) == 32);
  CHECK(s.model().run_end(33) == 255);
  const auto e = make_explicit({1.0, 0.5, 0.25, 0.5, 0.5, 0.1});
  CHECK(e.model().run_end(1) == 3);
  CHECK(e.model().run_end(3) == 5);
}

TEST_CASE("variation via runs telescopes") {
  const auto s = gen_leindler(3);
  double direct = 0.0;
  for (Index n = 1; n < 3000; ++n) direct += std::abs(s.value_at(n) - s.value_at(n + 1));
  CHECK(s.variation(1, 3000) == doctest::Approx(direct).epsilon(1e-13));
  const auto p = gen_power(1.0);
  CHECK(p.variation(10, 1000) == doctest::Approx(0.1 - 0.001).epsilon(1e-14));
}

TEST_CASE("explicit sequences") {
  const auto e = make_explicit({3.0, 2.0, 1.0}, "abc");
  CHECK(e.horizon() == 3);
  CHECK(e.name() == "abc");
  CHECK(e.model().finitely_supported());
  CHECK_THROWS_AS(e.value_at(4), OutOfRangeError);
  CHECK_THROWS_AS(make_explicit({}), ParameterError);
  CHECK_THROWS_AS(make_explicit({1.0, -1.0}), ParameterError);
}

TEST_CASE("csv round trip") {
  const auto s = gen_power(0.75);
  std::ostringstream out;
  write_sequence_csv(s, 50, out);
  std::istringstream in(out.str());
  const auto back = parse_sequence_csv(in, "round");
  REQUIRE(back.horizon() == 50);
  for (Index n = 1; n <= 50; ++n) CHECK(back.value_at(n) == s.value_at(n));
  std::ostringstream big;
  CHECK_THROWS_AS(write_sequence_csv(s, kMaxDenseLength + 1, big), ParameterError);
}

TEST_CASE("csv load errors name the line") {
  CHECK(load_error("x,y\n1,2\n") == "line 1: expected header 'n,value'");
  CHECK(load_error("n,value\n2,1.0\n") == "line 2: indices must start at 1");
  CHECK(load_error("n,value\n1,1.0\n3,1.0\n").find("line 3: indices must be contiguous") == 0);
  CHECK(load_error("n,value\n1,1.0\n2,-0.5\n") == "line 3: nonnegative required");
  CHECK(load_error("n,value\n1,abc\n") == "line 2: malformed value 'abc'");
  CHECK(load_error("n,value\nx,1\n") == "line 2: malformed index 'x'");
  CHECK(load_error("n,value\n1,1,1\n").find("line 2: malformed row") == 0);
  CHECK(load_error("n,value\n") == "line 1: no data rows");
  CHECK(load_error("") == "line 1: expected header 'n,value'");
  CHECK(load_error("n,value\n1, 0.5 \n\n2,0.25\n").empty());
  CHECK_THROWS_AS(load_sequence("/nonexistent/seq.csv"), LoadError);
}
