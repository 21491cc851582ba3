#include "rsh/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace rsh {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Oracle: return "oracle";
    case Provenance::Spectral: return "spectral";
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Bound: return "bounds";
    case Provenance::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

Bitstring mutate(AlgorithmKind a, const Bitstring& x, Rng& rng) {
  Bitstring y = x;
  const std::uint64_t n = x.size();
  if (n == 0) return y;
  if (a == AlgorithmKind::RLS) {
    y.flip(static_cast<std::size_t>(rng.below(n)));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.one_in(n)) y.flip(i);
    }
  }
  return y;
}

namespace {

// n * fitness for Knapsack, plain fitness otherwise: an integer that orders
// solutions exactly like the rational fitness.
std::int64_t scaled_fitness(const ProblemInstance& p, const std::vector<int>& c) {
  const std::int64_t n = p.n();
  switch (p.kind()) {
    case ProblemKind::OneMax: return c[0];
    case ProblemKind::Peak: return c[0] == n ? 1 : 0;
    case ProblemKind::Deceptive: return c[0] == n ? n : n - 1 - c[0];
    case ProblemKind::Knapsack: return n * n * c[0] + n * c[1] + c[2];
  }
  return 0;
}

template <class Visit>
void simulate_run(const SimConfig& cfg, std::uint64_t run_index, Visit&& visit) {
  const auto& p = cfg.problem;
  Rng rng(cfg.seed, run_index);
  Bitstring x(static_cast<std::size_t>(p.n()));
  for (std::size_t i = 0; i < x.size(); ++i) x.set(i, rng.coin());
  x = knapsack_repair(p, x, rng);
  auto counts = block_counts(p, x);
  std::int64_t f = scaled_fitness(p, counts);
  visit(std::uint64_t{0}, status_of_counts(p, counts));
  for (std::uint64_t t = 1; t <= cfg.t_max; ++t) {
    Bitstring y = knapsack_repair(p, mutate(cfg.algorithm, x, rng), rng);
    auto yc = block_counts(p, y);
    const std::int64_t fy = scaled_fitness(p, yc);
    if (fy > f) {
      x = std::move(y);
      counts = std::move(yc);
      f = fy;
    }
    visit(t, status_of_counts(p, counts));
  }
}

void validate(const SimConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("simulation needs runs >= 1");
}

}  // namespace

std::vector<std::size_t> run_trajectory(const SimConfig& cfg, std::uint64_t run_index) {
  validate(cfg);
  std::vector<std::size_t> statuses;
  statuses.reserve(static_cast<std::size_t>(cfg.t_max) + 1);
  simulate_run(cfg, run_index, [&](std::uint64_t, std::size_t s) { statuses.push_back(s); });
  return statuses;
}

unsigned effective_threads(const SimConfig& cfg) {
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RSH_ERROR_LAB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  const std::uint64_t chunks = (cfg.runs + 63) / 64;
  return static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, chunks)));
}

ErrorCurve monte_carlo_curve(const SimConfig& cfg) {
  validate(cfg);
  const std::size_t L = cfg.problem.num_statuses();
  const std::size_t T = static_cast<std::size_t>(cfg.t_max) + 1;
  constexpr std::uint64_t kChunk = 64;
  const std::uint64_t chunks = (cfg.runs + kChunk - 1) / kChunk;
  const unsigned threads = effective_threads(cfg);

  std::vector<std::vector<std::uint64_t>> tallies(threads, std::vector<std::uint64_t>(T * L, 0));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&](unsigned id) {
    auto& tally = tallies[id];
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t end = std::min(cfg.runs, (c + 1) * kChunk);
      for (std::uint64_t run = c * kChunk; run < end; ++run) {
        simulate_run(cfg, run, [&](std::uint64_t t, std::size_t s) { ++tally[static_cast<std::size_t>(t) * L + s]; });
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }
  for (unsigned i = 1; i < threads; ++i) {
    for (std::size_t k = 0; k < tallies[0].size(); ++k) tallies[0][k] += tallies[i][k];
  }
  const auto& hist = tallies[0];

  Vector<double> e;
  for (const auto& x : cfg.problem.errors()) e.push_back(to_double(x));
  const auto runs = static_cast<double>(cfg.runs);
  ErrorCurve curve;
  curve.provenance = Provenance::MonteCarlo;
  curve.values.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    Accumulator<double> total;
    for (std::size_t s = 0; s < L; ++s) total.add(static_cast<double>(hist[t * L + s]) * e[s]);
    const double mean = total.value() / runs;
    double se = 0;
    if (cfg.runs > 1) {
      Accumulator<double> sq;
      for (std::size_t s = 0; s < L; ++s) {
        const double d = e[s] - mean;
        sq.add(static_cast<double>(hist[t * L + s]) * d * d);
      }
      se = std::sqrt(std::max(0.0, sq.value()) / (runs - 1) / runs);
    }
    curve.values.push_back({static_cast<std::uint64_t>(t), mean, se});
  }
  return curve;
}

}  // namespace rsh
