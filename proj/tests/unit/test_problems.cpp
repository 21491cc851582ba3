#include "rsh/problems.hpp"
#include "rsh/simulator.hpp"
#include "rsh/spectral.hpp"

#include "brute_force.hpp"

#include <doctest.h>

#include <cmath>

using rsh::AlgorithmKind;
using rsh::Bitstring;
using rsh::ProblemInstance;
using rsh::ProblemKind;
using rsh::Rational;
using rsh::ratio;

namespace {

bf::Instance reference(const ProblemInstance& p) {
  switch (p.kind()) {
    case ProblemKind::OneMax: return {bf::Kind::OneMax, p.n()};
    case ProblemKind::Peak: return {bf::Kind::Peak, p.n()};
    case ProblemKind::Deceptive: return {bf::Kind::Deceptive, p.n()};
    case ProblemKind::Knapsack: return {bf::Kind::Knapsack, p.n(), p.knapsack_m()};
  }
  return {bf::Kind::OneMax, p.n()};
}

Bitstring from_mask(std::uint32_t x, int n) {
  Bitstring b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) b.set(static_cast<std::size_t>(i), x >> i & 1u);
  return b;
}

// Instances small enough for the bit-level reference.
std::vector<ProblemInstance> small_instances(int max_n) {
  std::vector<ProblemInstance> out;
  for (int n = 2; n <= max_n; ++n) {
    out.push_back(ProblemInstance::onemax(n));
    out.push_back(ProblemInstance::peak(n));
    out.push_back(ProblemInstance::deceptive(n));
    for (int m = 2; m <= n - 1; ++m) out.push_back(ProblemInstance::knapsack(n, ratio(m, n)));
  }
  return out;
}

Bitstring knapsack_string(int n, int m, bool x1, int c2, int c3) {
  Bitstring b(static_cast<std::size_t>(n));
  b.set(0, x1);
  for (int i = 0; i < c2; ++i) b.set(static_cast<std::size_t>(1 + i), true);
  for (int i = 0; i < c3; ++i) b.set(static_cast<std::size_t>(m + i), true);
  return b;
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS(ProblemInstance::onemax(1));
  CHECK_THROWS(ProblemInstance::knapsack(10, ratio(1, 10)));
  CHECK_THROWS(ProblemInstance::knapsack(10, ratio(1, 3)));
  CHECK_THROWS(ProblemInstance::knapsack(10, Rational(1)));
  CHECK_NOTHROW(ProblemInstance::knapsack(10, ratio(9, 10)));
  CHECK_THROWS(ProblemInstance::make(ProblemKind::Knapsack, 10));
  CHECK_THROWS(ProblemInstance::make(ProblemKind::OneMax, 10, ratio(1, 2)));
  CHECK(rsh::parse_problem_kind("knapsack") == ProblemKind::Knapsack);
  CHECK(rsh::parse_algorithm_kind("ea") == AlgorithmKind::OnePlusOneEA);
  CHECK_THROWS(rsh::parse_problem_kind("twomax"));
}

TEST_CASE("fitness examples") {
  CHECK(rsh::fitness(ProblemInstance::onemax(4), Bitstring::from_string("1011")) == 3);
  CHECK(rsh::fitness(ProblemInstance::deceptive(4), Bitstring::from_string("0000")) == 3);
  CHECK(rsh::fitness(ProblemInstance::deceptive(4), Bitstring::from_string("1111")) == 4);
  const auto k = ProblemInstance::knapsack(10, ratio(1, 2));
  CHECK(rsh::fitness(k, knapsack_string(10, 5, true, 0, 0)) == 10);
  CHECK(rsh::fitness(k, knapsack_string(10, 5, false, 3, 0)) == 3);
  CHECK(rsh::fitness(k, knapsack_string(10, 5, false, 0, 1)) == ratio(1, 10));
  CHECK_THROWS_AS(rsh::fitness(k, knapsack_string(10, 5, true, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(rsh::fitness(ProblemInstance::onemax(4), Bitstring::from_string("101")), std::invalid_argument);
}

TEST_CASE("status examples") {
  CHECK(rsh::status_of(ProblemInstance::onemax(5), Bitstring::from_string("11111")) == 0);
  CHECK(rsh::status_of(ProblemInstance::deceptive(4), Bitstring::from_string("0000")) == 1);
  const auto k = ProblemInstance::knapsack(10, ratio(1, 2));
  CHECK(rsh::status_of(k, Bitstring(10)) == 6);
  CHECK(k.errors()[6] == 10);
  CHECK(k.num_statuses() == 7);
}

TEST_CASE("bitstring basics") {
  const auto b = Bitstring::from_string("10110");
  CHECK(b.size() == 5);
  CHECK(b.get(0));
  CHECK_FALSE(b.get(1));
  CHECK(b.count() == 3);
  CHECK(b.count_range(1, 4) == 2);
  CHECK(b.to_string() == "10110");
  CHECK(b.hamming_distance(Bitstring::from_string("00111")) == 2);
  Bitstring wide(130);
  wide.set(129, true);
  wide.set(64, true);
  CHECK(wide.count() == 2);
  CHECK(wide.count_range(65, 130) == 1);
}

TEST_CASE("knapsack repair examples") {
  const int n = 10, m = 5;
  const auto k = ProblemInstance::knapsack(n, ratio(1, 2));
  rsh::Rng rng(5, 0);

  const auto mixed = rsh::knapsack_repair(k, knapsack_string(n, m, true, 3, 0), rng);
  CHECK(mixed == knapsack_string(n, m, false, 3, 0));
  CHECK(rsh::status_of(k, mixed) == static_cast<std::size_t>(m - 3));

  const auto heavy = knapsack_string(n, m, false, 0, 3);
  std::vector<int> survivors(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < 3000; ++i) {
    const auto y = rsh::knapsack_repair(k, heavy, rng);
    REQUIRE(y.count() == 1);
    CHECK(rsh::fitness(k, y) == ratio(1, n));
    for (int b = m; b < m + 3; ++b) survivors[static_cast<std::size_t>(b)] += y.get(static_cast<std::size_t>(b));
  }
  for (int b = m; b < m + 3; ++b) CHECK(survivors[static_cast<std::size_t>(b)] > 800);

  const auto ok = knapsack_string(n, m, false, 4, 0);
  CHECK(rsh::knapsack_repair(k, ok, rng) == ok);
}

TEST_CASE("property: repair is feasible and deterministic when at most one x3 item remains") {
  for (const auto& p : small_instances(8)) {
    if (p.kind() != ProblemKind::Knapsack) continue;
    const int n = p.n(), m = p.knapsack_m();
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      const auto b = from_mask(x, n);
      rsh::Rng r1(1, x), r2(2, x);
      const auto y1 = rsh::knapsack_repair(p, b, r1);
      const auto y2 = rsh::knapsack_repair(p, b, r2);
      CHECK(rsh::is_feasible(p, y1));
      const bool x1 = x & 1u;
      const int c2 = bf::ones(x & ((1u << m) - 2u));
      const int c3 = bf::ones(x >> m);
      if (c3 <= 1 || x1 || c2 > 0) CHECK(y1 == y2);
      CHECK(rsh::knapsack_repair_counts(p, rsh::block_counts(p, b)) == rsh::block_counts(p, y1));
    }
  }
}

TEST_CASE("initial distribution examples") {
  CHECK(rsh::initial_distribution(ProblemInstance::onemax(3)) ==
        std::vector<Rational>{ratio(1, 8), ratio(3, 8), ratio(3, 8), ratio(1, 8)});
  CHECK(rsh::initial_distribution(ProblemInstance::peak(2)) ==
        std::vector<Rational>{ratio(1, 4), ratio(2, 4), ratio(1, 4)});
  const auto k = rsh::initial_distribution(ProblemInstance::knapsack(10, ratio(1, 2)));
  CHECK(k == std::vector<Rational>{ratio(1, 32), ratio(1, 16), ratio(4, 16), ratio(6, 16), ratio(4, 16),
                                   ratio(1, 32) - ratio(1, 1024), ratio(1, 1024)});
  CHECK(rsh::sum(k) == 1);
}

TEST_CASE("statuses, errors and the initial distribution agree with the bit-level reference") {
  for (const auto& p : small_instances(10)) {
    const auto I = reference(p);
    const Rational opt = bf::optimum(I);
    CHECK(p.optimal_fitness() == opt);
    const auto errors = p.errors();
    for (std::uint32_t x = 0; x < (1u << p.n()); ++x) {
      const auto f = bf::fitness(I, x);
      CHECK(rsh::is_feasible(p, from_mask(x, p.n())) == f.has_value());
      if (!f) continue;
      const auto s = rsh::status_of(p, from_mask(x, p.n()));
      CHECK(s == bf::status(I, x));
      CHECK(errors[s] == opt - *f);
      CHECK(rsh::fitness(p, from_mask(x, p.n())) == *f);
    }
    std::vector<Rational> init(p.num_statuses(), Rational(0));
    for (const auto& [x, px] : bf::initial(I)) init[bf::status(I, x)] += px;
    CHECK(rsh::initial_distribution(p) == init);
  }
}

TEST_CASE("built chains match the bit-level reference column by column") {
  for (const auto& p : small_instances(8)) {
    for (auto a : {AlgorithmKind::RLS, AlgorithmKind::OnePlusOneEA}) {
      if (a == AlgorithmKind::OnePlusOneEA && p.n() > 7) continue;
      CAPTURE(p.describe());
      CAPTURE(rsh::to_string(a));
      const auto I = reference(p);
      const auto chain = rsh::build_exact_chain(p, a);
      CHECK(rsh::validate_model(chain).empty());
      for (std::uint32_t x = 0; x < (1u << p.n()); ++x) {
        if (!bf::fitness(I, x)) continue;
        const auto col = bf::status_column(I, a == AlgorithmKind::OnePlusOneEA, x);
        CHECK(col == chain.transition.column(bf::status(I, x)));
      }
    }
  }
}

TEST_CASE("error curves match the bit-level reference") {
  for (const auto& p : small_instances(6)) {
    for (auto a : {AlgorithmKind::RLS, AlgorithmKind::OnePlusOneEA}) {
      CAPTURE(p.describe());
      const auto ref = bf::error_curve(reference(p), a == AlgorithmKind::OnePlusOneEA, 8);
      CHECK(rsh::expected_error_power_curve(rsh::build_exact_chain(p, a), 8) == ref);
    }
  }
}

TEST_CASE("property: closed-form RLS chains equal enumeration up to twelve bits") {
  for (int n = 2; n <= 12; ++n) {
    std::vector<ProblemInstance> ps{ProblemInstance::onemax(n), ProblemInstance::peak(n), ProblemInstance::deceptive(n)};
    for (int m = 2; m <= n - 1; ++m) ps.push_back(ProblemInstance::knapsack(n, ratio(m, n)));
    for (const auto& p : ps) {
      CAPTURE(p.describe());
      CHECK(rsh::build_exact_chain(p, AlgorithmKind::RLS) == rsh::enumerate_chain(p, AlgorithmKind::RLS));
    }
    CHECK(rsh::build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::OnePlusOneEA) ==
          rsh::enumerate_chain(ProblemInstance::peak(n), AlgorithmKind::OnePlusOneEA));
  }
}

TEST_CASE("chain examples") {
  const auto onemax = rsh::build_exact_chain(ProblemInstance::onemax(3), AlgorithmKind::RLS);
  CHECK(onemax.transition(1, 1) == ratio(2, 3));
  CHECK(onemax.transition(2, 2) == ratio(1, 3));
  CHECK(onemax.transition(3, 3) == 0);
  CHECK(onemax.transition(1, 2) == ratio(2, 3));
  CHECK(onemax.transition(2, 3) == 1);

  // Theorem-7 style diagonal for two bits: both non-optimal statuses keep 3/4.
  const auto peak = rsh::build_exact_chain(ProblemInstance::peak(2), AlgorithmKind::OnePlusOneEA);
  CHECK(peak.transition(1, 1) == ratio(3, 4));
  CHECK(peak.transition(2, 2) == ratio(3, 4));
  CHECK(rsh::classify_search(rsh::reduce_to_nonoptimal(peak).transition) == rsh::SearchClass::Diagonal);

  CHECK_THROWS_AS(rsh::enumerate_chain(ProblemInstance::onemax(33), AlgorithmKind::OnePlusOneEA), std::domain_error);
}

TEST_CASE("auxiliary chain entries") {
  const auto aux = rsh::build_auxiliary_chain(ProblemInstance::onemax(3), AlgorithmKind::OnePlusOneEA);
  for (std::size_t j = 1; j <= 3; ++j) {
    CHECK(aux.transition(j - 1, j) == ratio(static_cast<long>(j), 3) * ratio(4, 9));
    CHECK(aux.transition(j, j) == 1 - ratio(static_cast<long>(j), 3) * ratio(4, 9));
  }
  CHECK(rsh::classify_search(aux.transition) == rsh::SearchClass::BiDiagonal);

  const int n = 4;
  const auto dec = rsh::build_auxiliary_chain(ProblemInstance::deceptive(n), AlgorithmKind::OnePlusOneEA);
  const Rational jump = rsh::pow_int(ratio(1, n), n);
  const Rational stay = rsh::pow_int(ratio(n - 1, n), n - 1);
  CHECK(dec.transition(0, 1) == jump);
  CHECK(dec.transition(1, 1) == 1 - jump);
  for (std::size_t j = 2; j < rsh::auxiliary_block_size(ProblemInstance::deceptive(n)); ++j) {
    const Rational down = ratio(static_cast<long>(j) - 1, n) * stay;
    CHECK(dec.transition(0, j) == jump);
    CHECK(dec.transition(j - 1, j) == down);
    CHECK(dec.transition(j, j) == 1 - jump - down);
  }
  CHECK_THROWS(rsh::build_auxiliary_chain(ProblemInstance::peak(4), AlgorithmKind::OnePlusOneEA));
}

TEST_CASE("property: every auxiliary pair is certified for four to ten bits") {
  for (int n = 4; n <= 10; ++n) {
    std::vector<ProblemInstance> ps{ProblemInstance::onemax(n), ProblemInstance::deceptive(n)};
    if (n % 2 == 0) ps.push_back(ProblemInstance::knapsack(n, ratio(1, 2)));
    for (const auto& p : ps) {
      CAPTURE(p.describe());
      const auto bounded = rsh::build_bounded_chain(p);
      const auto aux = rsh::build_auxiliary_chain(p, AlgorithmKind::OnePlusOneEA);
      const std::size_t L = rsh::auxiliary_block_size(p);
      CHECK(rsh::validate_model(aux).empty());
      CHECK(rsh::dominance_check(bounded.transition.block(0, L), aux.transition.block(0, L)).passed);
    }
  }
}

TEST_CASE("merging the two worst knapsack statuses can only raise the error curve") {
  const auto p = ProblemInstance::knapsack(10, ratio(1, 2));
  const auto exact = rsh::build_exact_chain(p, AlgorithmKind::OnePlusOneEA);
  const auto merged = rsh::merge_knapsack_tail(exact, p);
  CHECK(merged.num_statuses() == exact.num_statuses() - 1);
  CHECK(merged.errors.back() == 10);
  const auto lo = rsh::expected_error_power_curve(exact, 100);
  const auto hi = rsh::expected_error_power_curve(merged, 100);
  for (std::size_t t = 0; t <= 100; ++t) CHECK(lo[t] <= hi[t]);
}

TEST_CASE("simulated transition frequencies match the chain columns") {
  const std::uint64_t trials = 100000;
  for (const auto& p : {ProblemInstance::onemax(6), ProblemInstance::deceptive(6),
                        ProblemInstance::knapsack(6, ratio(1, 2))}) {
    for (auto a : {AlgorithmKind::RLS, AlgorithmKind::OnePlusOneEA}) {
      CAPTURE(p.describe());
      const auto I = reference(p);
      const auto chain = rsh::build_exact_chain(p, a);
      const auto errors = p.errors();
      // One representative string per status; the first one found.
      std::vector<std::optional<std::uint32_t>> rep(p.num_statuses());
      for (std::uint32_t x = 0; x < (1u << p.n()); ++x) {
        if (bf::fitness(I, x) && !rep[bf::status(I, x)]) rep[bf::status(I, x)] = x;
      }
      rsh::Rng rng(99, static_cast<std::uint64_t>(p.n()));
      for (std::size_t j = 1; j < p.num_statuses(); ++j) {
        REQUIRE(rep[j]);
        const auto x = from_mask(*rep[j], p.n());
        const Rational fx = rsh::fitness(p, x);
        std::vector<std::uint64_t> hits(p.num_statuses(), 0);
        for (std::uint64_t k = 0; k < trials; ++k) {
          const auto y = rsh::knapsack_repair(p, rsh::mutate(a, x, rng), rng);
          ++hits[rsh::fitness(p, y) > fx ? rsh::status_of(p, y) : j];
        }
        for (std::size_t i = 0; i <= j; ++i) {
          const double pr = rsh::to_double(chain.transition(i, j));
          const double freq = static_cast<double>(hits[i]) / static_cast<double>(trials);
          const double se = std::sqrt(pr * (1 - pr) / static_cast<double>(trials));
          CHECK(std::abs(freq - pr) <= 4 * se + 1e-12);
        }
      }
    }
  }
}
