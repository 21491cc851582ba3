#include "rsh/matrix.hpp"
#include "rsh/model_json.hpp"
#include "rsh/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using rsh::Rational;
using rsh::ratio;

TEST_CASE("ratio canonicalizes so comparisons work") {
  CHECK(ratio(2, 2) == 1);
  CHECK(ratio(6, -4) == ratio(-3, 2));
  CHECK(ratio(6, 4).get_den() == 2);
  CHECK_THROWS_AS(ratio(1, 0), std::invalid_argument);
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(rsh::parse_rational("1/2") == ratio(1, 2));
  CHECK(rsh::parse_rational(" 4/8 ") == ratio(1, 2));
  CHECK(rsh::parse_rational("-3") == -3);
  CHECK(rsh::parse_rational("0.5") == ratio(1, 2));
  CHECK(rsh::parse_rational("0.1") == ratio(1, 10));
  CHECK(rsh::parse_rational(".25") == ratio(1, 4));
  CHECK_THROWS_AS(rsh::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rsh::parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rsh::parse_rational("."), std::invalid_argument);
}

TEST_CASE("formatting") {
  CHECK(rsh::format_rational(ratio(-6, 4)) == "-3/2");
  CHECK(rsh::format_rational(Rational(7)) == "7");
  CHECK(rsh::format_double(0.1) == "0.10000000000000001");
  CHECK(rsh::format_double(1.0) == "1");
}

TEST_CASE("exact powers, binomials and the capacity guard") {
  CHECK(rsh::pow_int(ratio(2, 3), 3) == ratio(8, 27));
  CHECK(rsh::pow_int(Rational(0), 0) == 1);
  CHECK(rsh::pow_int(0.5, 10) == doctest::Approx(1.0 / 1024));
  CHECK(rsh::binomial(10, 3) == 120);
  CHECK(rsh::binomial(3, 5) == 0);
  CHECK_THROWS_AS(rsh::pow_int(ratio(9, 10), 100'000'000), rsh::CapacityError);
  CHECK(rsh::power(0.0, 0) == 1.0);
}

TEST_CASE("numeric mode names") {
  CHECK(rsh::parse_numeric_mode("rational") == rsh::NumericMode::ExactRational);
  CHECK(rsh::parse_numeric_mode("float64") == rsh::NumericMode::Float64);
  CHECK_THROWS(rsh::parse_numeric_mode("quad"));
}

TEST_CASE("compensated sum keeps small terms next to huge ones") {
  rsh::Accumulator<double> acc;
  for (double x : {1.0, 1e100, 1.0, -1e100}) acc.add(x);
  CHECK(acc.value() == 2.0);
  CHECK(rsh::sum(std::vector<Rational>{ratio(1, 3), ratio(1, 6)}) == ratio(1, 2));
  CHECK_THROWS(rsh::dot(std::vector<double>{1, 2}, std::vector<double>{1}));
}

TEST_CASE("matrix construction rejects entries below the diagonal") {
  using M = rsh::UpperTriMatrix<Rational>;
  CHECK_THROWS_AS(M::from_rows({{1, 0}, {ratio(1, 2), 1}}), std::invalid_argument);
  CHECK_THROWS_AS(M::from_rows({{1, 0}, {0}}), std::invalid_argument);
  const M a = M::from_rows({{1, ratio(1, 2)}, {0, ratio(1, 2)}});
  CHECK(a.column_sum(1) == 1);
  CHECK(a.block(1, 2).dim() == 1);
  CHECK(a.block(1, 2)(0, 0) == ratio(1, 2));
  CHECK(rsh::matrix_power(a, 0) == M::identity(2));
  const M a2 = a * a;
  CHECK(a2(0, 1) == ratio(3, 4));
  CHECK(a2(1, 1) == ratio(1, 4));
  CHECK(a.apply_left({0, 1}) == std::vector<Rational>{0, ratio(1, 2)});
  CHECK(a.apply({0, 1}) == std::vector<Rational>{ratio(1, 2), ratio(1, 2)});
}

TEST_CASE("rng streams are deterministic and distinct") {
  rsh::Rng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  rsh::Rng r(1, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const auto v = r.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("one_in(n) has probability 1/n") {
  rsh::Rng r(123, 0);
  const int draws = 200000;
  for (std::uint64_t n : {2u, 3u, 10u}) {
    int hits = 0;
    for (int i = 0; i < draws; ++i) hits += r.one_in(n);
    const double p = 1.0 / static_cast<double>(n);
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(hits / static_cast<double>(draws) - p) < 4 * se);
  }
}

TEST_CASE("status models survive a JSON round trip") {
  rsh::StatusModel<Rational> m;
  m.errors = {0, 1};
  m.initial = {ratio(1, 3), ratio(2, 3)};
  m.transition = rsh::UpperTriMatrix<Rational>::from_rows({{1, ratio(1, 7)}, {0, ratio(6, 7)}});
  const auto back = rsh::status_model_from_json(rsh::to_json(m));
  REQUIRE(std::holds_alternative<rsh::StatusModel<Rational>>(back));
  CHECK(std::get<rsh::StatusModel<Rational>>(back) == m);

  const auto f = rsh::to_float(m);
  const auto fback = rsh::status_model_from_json(rsh::to_json(f));
  REQUIRE(std::holds_alternative<rsh::StatusModel<double>>(fback));
  CHECK(std::get<rsh::StatusModel<double>>(fback) == f);

  CHECK_THROWS_AS(rsh::status_model_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(rsh::status_model_from_json(R"({"numeric_mode":"rational","errors":[0]})"),
                  std::invalid_argument);
}
