// Runs the nine acceptance criteria at their stated tolerances and prints one
// PASS/FAIL line for each, followed by the first few failing points.
// Exit status is the number of failed criteria (0 when all pass).

#include "rsh/closed_forms.hpp"
#include "rsh/experiment.hpp"
#include "rsh/simulator.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace rsh;

namespace {

struct Outcome {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(const Rational& q) { return format_rational(q); }
std::string fmt(double x) { return format_double(x); }

const std::optional<Rational> kHalf = ratio(1, 2);

StatusModel<Rational> exact_chain(TheoremId id, int n) {
  switch (id) {
    case TheoremId::T4_RLS_OneMax: return build_exact_chain(ProblemInstance::onemax(n), AlgorithmKind::RLS);
    case TheoremId::T5_EA_OneMax: return build_exact_chain(ProblemInstance::onemax(n), AlgorithmKind::OnePlusOneEA);
    case TheoremId::T6_RLS_Peak: return build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::RLS);
    case TheoremId::T7_EA_Peak: return build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::OnePlusOneEA);
    case TheoremId::T8_RLS_Deceptive: return build_exact_chain(ProblemInstance::deceptive(n), AlgorithmKind::RLS);
    case TheoremId::T9_EA_Deceptive:
      return build_exact_chain(ProblemInstance::deceptive(n), AlgorithmKind::OnePlusOneEA);
    case TheoremId::T10_RLS_Knapsack:
      return build_exact_chain(ProblemInstance::knapsack(n, *kHalf), AlgorithmKind::RLS);
    case TheoremId::T11_EA_Knapsack:
      return build_exact_chain(ProblemInstance::knapsack(n, *kHalf), AlgorithmKind::OnePlusOneEA);
  }
  throw std::logic_error("unreachable");
}

bool is_knapsack(TheoremId id) { return id == TheoremId::T10_RLS_Knapsack || id == TheoremId::T11_EA_Knapsack; }

// 1. Exact theorems against the chain oracle.
Outcome exact_theorems() {
  Outcome o;
  for (int n = 2; n <= 12; ++n) {
    for (auto id : {TheoremId::T4_RLS_OneMax, TheoremId::T6_RLS_Peak, TheoremId::T8_RLS_Deceptive}) {
      const auto oracle = expected_error_power_curve(exact_chain(id, n), 100);
      for (std::uint64_t t = 0; t <= 100; ++t) {
        const Rational v = *closed_form_error_exact(id, n, std::nullopt, t).exact;
        o.expect(v == oracle[t], std::string(to_string(id)) + " n=" + std::to_string(n) + " t=" + std::to_string(t) +
                                     ": formula " + fmt(v) + " oracle " + fmt(oracle[t]));
      }
    }
    const auto oracle = expected_error_power_curve(exact_chain(TheoremId::T7_EA_Peak, n), 100);
    for (std::uint64_t t = 0; t <= 100; ++t) {
      const double v = *closed_form_error(TheoremId::T7_EA_Peak, n, std::nullopt, t).exact;
      const double ref = to_double(oracle[t]);
      o.expect(std::abs(v - ref) <= 1e-12 * std::abs(ref),
               "T7 n=" + std::to_string(n) + " t=" + std::to_string(t) + ": " + fmt(v) + " vs " + fmt(ref));
    }
  }
  return o;
}

// Every bidiagonal block the closed forms are built on, for one n.
std::vector<std::pair<std::string, UpperTriMatrix<Rational>>> bidiagonal_blocks(int n) {
  std::vector<std::pair<std::string, UpperTriMatrix<Rational>>> out;
  auto reduced = [](const StatusModel<Rational>& m) { return reduce_to_nonoptimal(m).transition; };
  out.emplace_back("onemax-rls", reduced(build_exact_chain(ProblemInstance::onemax(n), AlgorithmKind::RLS)));
  out.emplace_back("peak-rls", reduced(build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::RLS)));
  out.emplace_back("peak-ea", reduced(build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::OnePlusOneEA)));
  out.emplace_back("deceptive-rls", reduced(build_exact_chain(ProblemInstance::deceptive(n), AlgorithmKind::RLS)));
  if (n >= 3) {
    out.emplace_back("onemax-ea-aux",
                     reduced(build_auxiliary_chain(ProblemInstance::onemax(n), AlgorithmKind::OnePlusOneEA)));
    const auto dec = ProblemInstance::deceptive(n);
    out.emplace_back("deceptive-ea-aux", build_auxiliary_chain(dec, AlgorithmKind::OnePlusOneEA)
                                             .transition.block(1, auxiliary_block_size(dec)));
  }
  if (n >= 4 && n % 2 == 0) {
    const auto k = ProblemInstance::knapsack(n, *kHalf);
    const auto m = static_cast<std::size_t>(k.knapsack_m());
    out.emplace_back("knapsack-rls", build_exact_chain(k, AlgorithmKind::RLS).transition.block(1, m + 1));
    out.emplace_back("knapsack-ea-aux", build_auxiliary_chain(k, AlgorithmKind::OnePlusOneEA)
                                            .transition.block(1, auxiliary_block_size(k)));
  }
  return out;
}

// 2. spectral_power against repeated multiplication, every t up to 200.
Outcome spectral_vs_oracle() {
  Outcome o;
  for (int n = 2; n <= 20; ++n) {
    for (const auto& [name, R] : bidiagonal_blocks(n)) {
      if (!admits_closed_form(R)) {
        o.expect(false, name + " n=" + std::to_string(n) + ": no closed-form eigenvectors");
        continue;
      }
      const auto d = bidiagonal_decompose(R);
      auto power = UpperTriMatrix<Rational>::identity(R.dim());
      for (std::uint64_t t = 0; t <= 200; ++t) {
        if (t > 0) power = power * R;
        o.expect(spectral_power(d, t) == power, name + " n=" + std::to_string(n) + " t=" + std::to_string(t));
      }
    }
  }
  return o;
}

// 3. Bound theorems bracket the oracle on the enumerated chains.
Outcome bound_theorems() {
  Outcome o;
  for (int n = 4; n <= 12; ++n) {
    for (auto id : {TheoremId::T5_EA_OneMax, TheoremId::T9_EA_Deceptive, TheoremId::T10_RLS_Knapsack,
                    TheoremId::T11_EA_Knapsack}) {
      if (is_knapsack(id) && n % 2 != 0) continue;
      const auto alpha = is_knapsack(id) ? kHalf : std::nullopt;
      const auto oracle = expected_error_power_curve(exact_chain(id, n), 200);
      const std::uint64_t first = id == TheoremId::T10_RLS_Knapsack ? 1 : 0;
      for (std::uint64_t t = first; t <= 200; ++t) {
        const std::string where = std::string(to_string(id)) + " n=" + std::to_string(n) + " t=" + std::to_string(t);
        if (has_rational_form(id)) {
          const auto b = closed_form_error_exact(id, n, alpha, t);
          o.expect(oracle[t] <= *b.upper, where + ": oracle " + fmt(oracle[t]) + " above " + fmt(*b.upper));
          if (b.lower) o.expect(*b.lower <= oracle[t], where + ": oracle " + fmt(oracle[t]) + " below " + fmt(*b.lower));
        } else {
          const double upper = *closed_form_error(id, n, alpha, t).upper;
          const double v = to_double(oracle[t]);
          o.expect(v <= upper + 1e-12 * std::max(1.0, std::abs(upper)),
                   where + ": oracle " + fmt(v) + " above " + fmt(upper));
        }
      }
    }
  }
  return o;
}

// 4. Dominance of the three exact/auxiliary EA pairs.
Outcome dominance() {
  Outcome o;
  for (int n = 4; n <= 10; ++n) {
    std::vector<ProblemInstance> ps{ProblemInstance::onemax(n), ProblemInstance::deceptive(n)};
    if (n % 2 == 0) ps.push_back(ProblemInstance::knapsack(n, *kHalf));
    for (const auto& p : ps) {
      const auto bounded = build_bounded_chain(p);
      const auto aux = build_auxiliary_chain(p, AlgorithmKind::OnePlusOneEA);
      const std::size_t L = auxiliary_block_size(p);
      const auto report = dominance_check(bounded.transition.block(0, L), aux.transition.block(0, L));
      o.expect(report.passed && report.certificate.has_value(),
               p.describe() + ": " + (report.first_violation ? report.first_violation->message : std::string()));
    }
  }
  return o;
}

// 5. Appendix closed forms against direct dot products.
Outcome appendix() {
  Outcome o;
  for (int n = 2; n <= 20; ++n) {
    for (auto c : {AppendixChain::OneMaxRls, AppendixChain::OneMaxEaAuxiliary, AppendixChain::DeceptiveRls,
                   AppendixChain::DeceptiveEaAuxiliary, AppendixChain::KnapsackRls,
                   AppendixChain::KnapsackEaAuxiliary}) {
      const bool knap = c == AppendixChain::KnapsackRls || c == AppendixChain::KnapsackEaAuxiliary;
      if (knap && (n < 4 || n % 2 != 0)) continue;
      if ((c == AppendixChain::OneMaxEaAuxiliary || c == AppendixChain::DeceptiveEaAuxiliary) && n < 3) continue;
      const auto alpha = knap ? kHalf : std::nullopt;
      const auto block = appendix_block(c, n, alpha);
      const auto d = bidiagonal_decompose(block.transition);
      for (std::size_t j = 1; j <= d.dim(); ++j) {
        const auto v = appendix_inner_products(c, n, alpha, j);
        const auto direct = direct_inner_products(block, d, j);
        const std::string where = std::string(to_string(c)) + " n=" + std::to_string(n) + " j=" + std::to_string(j);
        if (v.error_projection) {
          o.expect(*v.error_projection == direct.error_projection,
                   where + " e'p_j: formula " + fmt(*v.error_projection) + " direct " + fmt(direct.error_projection));
        }
        if (v.initial_projection) {
          o.expect(*v.initial_projection == direct.initial_projection,
                   where + " q_j'p0: formula " + fmt(*v.initial_projection) + " direct " +
                       fmt(direct.initial_projection));
        }
        if (v.residual_exact) {
          o.expect(*v.residual_exact == *direct.residual,
                   where + " q_j'r1: formula " + fmt(*v.residual_exact) + " direct " + fmt(*direct.residual));
        }
        if (v.residual_upper) {
          o.expect(*direct.residual <= *v.residual_upper,
                   where + " q_j'r1 upper bound: " + fmt(*direct.residual) + " > " + fmt(*v.residual_upper));
        }
        if (v.residual_lower) {
          o.expect(*v.residual_lower <= *direct.residual,
                   where + " q_j'r1 lower bound: " + fmt(*direct.residual) + " < " + fmt(*v.residual_lower));
        }
      }
    }
  }
  return o;
}

// 6. Simulated means never exceed the EA upper bounds by more than 4 standard errors.
Outcome figure_bounds() {
  Outcome o;
  for (int n : {10, 20, 30}) {
    for (auto id : {TheoremId::T5_EA_OneMax, TheoremId::T9_EA_Deceptive, TheoremId::T11_EA_Knapsack}) {
      const auto alpha = is_knapsack(id) ? kHalf : std::nullopt;
      const ProblemKind kind = id == TheoremId::T5_EA_OneMax     ? ProblemKind::OneMax
                               : id == TheoremId::T9_EA_Deceptive ? ProblemKind::Deceptive
                                                                  : ProblemKind::Knapsack;
      const SimConfig cfg{ProblemInstance::make(kind, n, alpha), AlgorithmKind::OnePlusOneEA,
                          static_cast<std::uint64_t>(100 * n), 1000, 2024, 0};
      const auto curve = monte_carlo_curve(cfg);
      for (const auto& pt : curve.values) {
        const double upper = *closed_form_error(id, n, alpha, pt.t).upper;
        o.expect(pt.mean_error <= upper + 4 * pt.std_error,
                 std::string(to_string(id)) + " n=" + std::to_string(n) + " t=" + std::to_string(pt.t) + ": mean " +
                     fmt(pt.mean_error) + " bound " + fmt(upper) + " se " + fmt(pt.std_error));
      }
    }
  }
  return o;
}

// 7. Monte Carlo means against the exact chains.
Outcome calibration() {
  Outcome o;
  for (auto kind : {ProblemKind::OneMax, ProblemKind::Peak, ProblemKind::Deceptive, ProblemKind::Knapsack}) {
    for (auto a : {AlgorithmKind::RLS, AlgorithmKind::OnePlusOneEA}) {
      const auto p = ProblemInstance::make(kind, 10, kind == ProblemKind::Knapsack ? kHalf : std::nullopt);
      const auto oracle = expected_error_power_curve(to_float(build_exact_chain(p, a)), 100);
      const SimConfig cfg{p, a, 100, 10000, 7, 0};
      const auto curve = monte_carlo_curve(cfg);
      for (std::uint64_t t : {1u, 10u, 100u}) {
        const auto& pt = curve.values[t];
        o.expect(std::abs(pt.mean_error - oracle[t]) <= 4 * pt.std_error + 1e-12,
                 p.describe() + " " + std::string(to_string(a)) + " t=" + std::to_string(t) + ": mean " +
                     fmt(pt.mean_error) + " exact " + fmt(oracle[t]) + " se " + fmt(pt.std_error));
      }
    }
  }
  return o;
}

// 8. Plateau limits.
Outcome limits() {
  Outcome o;
  for (int n = 2; n <= 20; ++n) {
    const double peak = *closed_form_error(TheoremId::T6_RLS_Peak, n, std::nullopt, 1'000'000).exact;
    const double dec = *closed_form_error(TheoremId::T8_RLS_Deceptive, n, std::nullopt, 1'000'000).exact;
    const double peak_limit = 1 - (n + 1) / std::ldexp(1.0, n);
    const double dec_limit = 1 - 1 / std::ldexp(1.0, n - 1);
    o.expect(std::abs(peak - peak_limit) <= 1e-9, "T6 n=" + std::to_string(n) + ": " + fmt(peak));
    o.expect(std::abs(dec - dec_limit) <= 1e-9, "T8 n=" + std::to_string(n) + ": " + fmt(dec));
  }
  return o;
}

// 9. Byte-identical CSV across repeated runs and thread counts.
Outcome reproducibility() {
  Outcome o;
  for (auto kind : {ProblemKind::OneMax, ProblemKind::Deceptive, ProblemKind::Knapsack}) {
    ExperimentSpec s;
    s.problem = kind;
    s.algorithm = AlgorithmKind::OnePlusOneEA;
    s.n_values = {10, 12};
    if (kind == ProblemKind::Knapsack) s.alpha = kHalf;
    s.runs = 1000;
    s.seed = 42;
    s.threads = 1;
    const std::string reference = cmd_simulate(s).text;
    for (unsigned threads : {1u, 2u, 3u, 8u}) {
      s.threads = threads;
      o.expect(cmd_simulate(s).text == reference,
               std::string(to_string(kind)) + ": output differs with " + std::to_string(threads) + " threads");
    }
    s.methods = {Method::Bounds, Method::MonteCarlo};
    s.threads = 1;
    const std::string cmp = cmd_compare(s).text;
    s.threads = 5;
    o.expect(cmd_compare(s).text == cmp, std::string(to_string(kind)) + ": compare output differs across threads");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"exact theorems equal the chain oracle (n 2..12, t 0..100)", exact_theorems},
      {"spectral power equals repeated multiplication (n <= 20, t <= 200)", spectral_vs_oracle},
      {"bound theorems bracket the oracle (n 4..12, t <= 200)", bound_theorems},
      {"dominance certified for the three EA pairs (n 4..10)", dominance},
      {"appendix closed forms equal direct dot products (n <= 20)", appendix},
      {"simulated means stay under the EA upper bounds (n 10,20,30, 1000 runs)", figure_bounds},
      {"Monte Carlo means within 4 SE of the exact chains (n 10, 10^4 runs)", calibration},
      {"plateau limits at t = 10^6 (tolerance 1e-9)", limits},
      {"byte-identical CSV across runs and thread counts", reproducibility},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string crash;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      crash = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = crash.empty() && o.failures.empty() && o.checked > 0;
    if (!ok) ++failed;
    std::printf("[%s] criterion %zu: %s -- %zu checks, %zu failed, %.1fs\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].title, o.checked, o.failures.size(), secs);
    if (!crash.empty()) std::printf("    error: %s\n", crash.c_str());
    for (std::size_t k = 0; k < o.failures.size() && k < 12; ++k) std::printf("    %s\n", o.failures[k].c_str());
    if (o.failures.size() > 12) std::printf("    ... %zu more\n", o.failures.size() - 12);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
