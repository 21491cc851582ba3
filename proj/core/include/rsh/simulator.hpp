#pragma once

#include "rsh/problems.hpp"
#include "rsh/rng.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace rsh {

struct SimConfig {
  ProblemInstance problem;
  AlgorithmKind algorithm = AlgorithmKind::RLS;
  std::uint64_t t_max = 0;
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  // 0 picks hardware concurrency; RSH_ERROR_LAB_THREADS caps it either way.
  unsigned threads = 0;
};

enum class Provenance { Oracle, Spectral, ClosedForm, Bound, MonteCarlo };
std::string_view to_string(Provenance p);

struct ErrorPoint {
  std::uint64_t t = 0;
  double mean_error = 0;
  double std_error = 0;
};

struct ErrorCurve {
  Provenance provenance = Provenance::Oracle;
  std::vector<ErrorPoint> values;
};

// One-bit (RLS) or bitwise rate-1/n (EA) mutation.
Bitstring mutate(AlgorithmKind a, const Bitstring& x, Rng& rng);

// Status after each of the steps 0..t_max of run `run_index`. The run draws
// only from Rng(cfg.seed, run_index), so it can be replayed on its own.
std::vector<std::size_t> run_trajectory(const SimConfig& cfg, std::uint64_t run_index);

// Number of worker threads monte_carlo_curve would use for this config.
unsigned effective_threads(const SimConfig& cfg);

// Mean and standard error (sample standard deviation / sqrt(runs)) of the
// approximation error at t = 0..t_max. Runs are tallied into per-status
// integer histograms, so the result does not depend on thread count.
ErrorCurve monte_carlo_curve(const SimConfig& cfg);

}  // namespace rsh
