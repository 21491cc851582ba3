#include "rsh/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsh {

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T4_RLS_OneMax: return "T4";
    case TheoremId::T5_EA_OneMax: return "T5";
    case TheoremId::T6_RLS_Peak: return "T6";
    case TheoremId::T7_EA_Peak: return "T7";
    case TheoremId::T8_RLS_Deceptive: return "T8";
    case TheoremId::T9_EA_Deceptive: return "T9";
    case TheoremId::T10_RLS_Knapsack: return "T10";
    case TheoremId::T11_EA_Knapsack: return "T11";
  }
  return "?";
}

TheoremId parse_theorem_id(std::string_view text) {
  static constexpr TheoremId all[] = {
      TheoremId::T4_RLS_OneMax,    TheoremId::T5_EA_OneMax,    TheoremId::T6_RLS_Peak,
      TheoremId::T7_EA_Peak,       TheoremId::T8_RLS_Deceptive, TheoremId::T9_EA_Deceptive,
      TheoremId::T10_RLS_Knapsack, TheoremId::T11_EA_Knapsack};
  for (auto id : all) {
    if (text == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown theorem id '" + std::string(text) + "'");
}

TheoremId theorem_for(ProblemKind problem, AlgorithmKind algorithm) {
  const bool rls = algorithm == AlgorithmKind::RLS;
  switch (problem) {
    case ProblemKind::OneMax: return rls ? TheoremId::T4_RLS_OneMax : TheoremId::T5_EA_OneMax;
    case ProblemKind::Peak: return rls ? TheoremId::T6_RLS_Peak : TheoremId::T7_EA_Peak;
    case ProblemKind::Deceptive: return rls ? TheoremId::T8_RLS_Deceptive : TheoremId::T9_EA_Deceptive;
    case ProblemKind::Knapsack: return rls ? TheoremId::T10_RLS_Knapsack : TheoremId::T11_EA_Knapsack;
  }
  throw std::invalid_argument("theorem_for: bad problem");
}

BoundShape bound_shape(TheoremId id) {
  switch (id) {
    case TheoremId::T5_EA_OneMax:
    case TheoremId::T9_EA_Deceptive:
    case TheoremId::T11_EA_Knapsack:
      return BoundShape::Upper;
    case TheoremId::T10_RLS_Knapsack:
      return BoundShape::LowerUpper;
    default:
      return BoundShape::Exact;
  }
}

bool has_rational_form(TheoremId id) {
  return id != TheoremId::T5_EA_OneMax && id != TheoremId::T9_EA_Deceptive;
}

namespace {

bool is_knapsack(TheoremId id) {
  return id == TheoremId::T10_RLS_Knapsack || id == TheoremId::T11_EA_Knapsack;
}

// Validates (n, alpha, t) and returns alpha*n for knapsack theorems (0 otherwise).
int check_arguments(TheoremId id, int n, const std::optional<Rational>& alpha, std::uint64_t t) {
  if (n < 2) throw std::invalid_argument("closed form needs n >= 2, got " + std::to_string(n));
  if (!is_knapsack(id)) {
    if (alpha) throw std::invalid_argument(std::string(to_string(id)) + " takes no alpha");
    return 0;
  }
  if (!alpha) throw std::invalid_argument(std::string(to_string(id)) + " requires alpha");
  if (id == TheoremId::T10_RLS_Knapsack && t == 0) {
    throw std::invalid_argument("T10 is stated for t >= 1 (it uses t-1 exponents)");
  }
  return ProblemInstance::knapsack(n, *alpha).knapsack_m();
}

// (1 - x)^t without losing the complement when x is tiny and t is large.
double pow1m(double x, std::uint64_t t) {
  if (t == 0) return 1.0;
  if (x >= 1.0) return x == 1.0 ? 0.0 : std::pow(1.0 - x, static_cast<double>(t));
  return std::exp(static_cast<double>(t) * std::log1p(-x));
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double sum_terms(std::initializer_list<double> terms) {
  Accumulator<double> acc;
  for (double x : terms) acc.add(x);
  return acc.value();
}

Rational rpow(const Rational& base, std::uint64_t t) { return pow_int(base, t); }
Rational half_pow(int k) { return rpow(ratio(1, 2), static_cast<std::uint64_t>(k)); }

}  // namespace

BoundResult closed_form_error(TheoremId id, int n, const std::optional<Rational>& alpha, std::uint64_t t,
                              T10Variant variant) {
  const int m = check_arguments(id, n, alpha, t);
  const double nd = n;
  const double inv_n = 1.0 / nd;
  const double two_n = std::ldexp(1.0, n);
  const double e = std::numbers::e;
  BoundResult r;
  r.theorem = id;
  switch (id) {
    case TheoremId::T4_RLS_OneMax:
      r.exact = nd / 2 * pow1m(inv_n, t);
      break;
    case TheoremId::T5_EA_OneMax:
      r.upper = nd / 2 * pow1m(1.0 / (nd * e), t);
      break;
    case TheoremId::T6_RLS_Peak:
      r.exact = sum_terms({1.0, -(nd + 1) / two_n, nd / two_n * pow1m(inv_n, t)});
      break;
    case TheoremId::T7_EA_Peak: {
      Accumulator<double> acc;
      const double stay_all = std::pow(1.0 - inv_n, nd);
      for (int i = 1; i <= n; ++i) {
        const double hit = std::pow(1.0 / (nd - 1), i) * stay_all;
        acc.add(pow1m(hit, t) * to_double(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i))) /
                two_n);
      }
      r.exact = acc.value();
      break;
    }
    case TheoremId::T8_RLS_Deceptive: {
      const double half = 2.0 / two_n;  // 1/2^(n-1)
      r.exact = sum_terms({1.0, -half, (nd / 2 - nd * half) * pow1m(inv_n, t)});
      break;
    }
    case TheoremId::T9_EA_Deceptive: {
      const double en2 = e * nd * nd / two_n;
      r.upper = sum_terms({(1.0 - (nd + 1) / two_n + en2) * pow1m(std::pow(inv_n, nd), t),
                           (nd / 2 - nd / two_n + en2) * pow1m(1.0 / (e * nd), t),
                           nd * nd / two_n * pow1m(1.0 / e, t)});
      break;
    }
    case TheoremId::T10_RLS_Knapsack: {
      const double md = m;
      const double a = md / nd;
      const double two_m = std::ldexp(1.0, m);
      const double third = sign_pow(m) * (nd - 1) * (md + 1) / md / two_m * pow1m(a, t);
      const double decay = pow1m(inv_n, t - 1);
      r.lower = sum_terms({(nd - md + 1) * (1.0 - 2.0 / two_m - 1.0 / two_n), (md - 2) / 4 * decay, third});
      const double head = (nd - md + 1) * (1.0 - 1.0 / two_m + 1.0 / two_n);
      const double mid = (md - 1) / 2 * decay;
      r.upper = variant == T10Variant::Statement ? sum_terms({head, mid, third}) : sum_terms({head, mid * third});
      break;
    }
    case TheoremId::T11_EA_Knapsack: {
      const double md = m;
      const double a = md / nd;
      const double x = 1.0 - std::pow(1.0 - inv_n, md - 1);
      const double jump = std::pow(inv_n, md);
      const double c1 = (1 - a) * nd + 1 + x / (a * (1 - a) * std::ldexp(1.0, m - 1));
      const double c2 = (std::ldexp(1.0, m - 2) - 1) * (md - 1) / std::ldexp(1.0, m - 1) +
                        (md - 1) * x / (std::ldexp(1.0, m - 2) * a * (1 - a));
      const double c3 = (nd - inv_n) / std::ldexp(1.0, m);
      r.upper = sum_terms({c1 * pow1m(jump, t),
                           c2 * pow1m(jump + inv_n * std::pow(1.0 - inv_n, md - 2), t),
                           c3 * pow1m(inv_n, static_cast<std::uint64_t>(m) * t)});
      break;
    }
  }
  return r;
}

ExactBoundResult closed_form_error_exact(TheoremId id, int n, const std::optional<Rational>& alpha,
                                         std::uint64_t t, T10Variant variant) {
  if (!has_rational_form(id)) {
    throw std::invalid_argument(std::string(to_string(id)) + " involves e and has no exact form");
  }
  const int m = check_arguments(id, n, alpha, t);
  const Rational N(n);
  const Rational inv_n = ratio(1, n);
  const Rational keep = Rational(1) - inv_n;
  const Rational two_n_inv = half_pow(n);
  ExactBoundResult r;
  r.theorem = id;
  switch (id) {
    case TheoremId::T4_RLS_OneMax:
      r.exact = N / 2 * rpow(keep, t);
      break;
    case TheoremId::T6_RLS_Peak:
      r.exact = Rational(1) - (N + 1) * two_n_inv + N * two_n_inv * rpow(keep, t);
      break;
    case TheoremId::T7_EA_Peak: {
      Rational acc = 0;
      const Rational stay_all = rpow(keep, static_cast<std::uint64_t>(n));
      for (int i = 1; i <= n; ++i) {
        const Rational hit = rpow(ratio(1, n - 1), static_cast<std::uint64_t>(i)) * stay_all;
        acc += rpow(Rational(1) - hit, t) *
               binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i)) * two_n_inv;
      }
      r.exact = acc;
      break;
    }
    case TheoremId::T8_RLS_Deceptive: {
      const Rational half = half_pow(n - 1);
      r.exact = Rational(1) - half + (N / 2 - N * half) * rpow(keep, t);
      break;
    }
    case TheoremId::T10_RLS_Knapsack: {
      const Rational M(m);
      const Rational a = M / N;
      const Rational third = Rational(m % 2 == 0 ? 1 : -1) * (N - 1) * (M + 1) / M * half_pow(m) *
                             rpow(Rational(1) - a, t);
      const Rational decay = rpow(keep, t - 1);
      r.lower = (N - M + 1) * (Rational(1) - half_pow(m - 1) - two_n_inv) + (M - 2) / 4 * decay + third;
      const Rational head = (N - M + 1) * (Rational(1) - half_pow(m) + two_n_inv);
      const Rational mid = (M - 1) / 2 * decay;
      r.upper = variant == T10Variant::Statement ? Rational(head + mid + third) : Rational(head + mid * third);
      break;
    }
    case TheoremId::T11_EA_Knapsack: {
      const Rational M(m);
      const Rational a = M / N;
      const Rational x = Rational(1) - rpow(keep, static_cast<std::uint64_t>(m - 1));
      const Rational jump = rpow(inv_n, static_cast<std::uint64_t>(m));
      const Rational c1 = (Rational(1) - a) * N + 1 + x * half_pow(m - 1) / (a * (Rational(1) - a));
      const Rational c2 = (Rational(1) - half_pow(m - 2)) * (M - 1) / 2 +
                          (M - 1) * x * half_pow(m - 2) / (a * (Rational(1) - a));
      const Rational c3 = (N - inv_n) * half_pow(m);
      r.upper = c1 * rpow(Rational(1) - jump, t) +
                c2 * rpow(Rational(1) - jump - inv_n * rpow(keep, static_cast<std::uint64_t>(m - 2)), t) +
                c3 * rpow(keep, static_cast<std::uint64_t>(m) * t);
      break;
    }
    default:
      break;
  }
  return r;
}

// ---- eigenvector inner products ----

std::string_view to_string(AppendixChain chain) {
  switch (chain) {
    case AppendixChain::OneMaxRls: return "onemax-rls";
    case AppendixChain::OneMaxEaAuxiliary: return "onemax-ea-auxiliary";
    case AppendixChain::DeceptiveRls: return "deceptive-rls";
    case AppendixChain::DeceptiveEaAuxiliary: return "deceptive-ea-auxiliary";
    case AppendixChain::KnapsackRls: return "knapsack-rls";
    case AppendixChain::KnapsackEaAuxiliary: return "knapsack-ea-auxiliary";
  }
  return "?";
}

namespace {

bool needs_alpha(AppendixChain chain) {
  return chain == AppendixChain::KnapsackRls || chain == AppendixChain::KnapsackEaAuxiliary;
}

ProblemInstance appendix_problem(AppendixChain chain, int n, const std::optional<Rational>& alpha) {
  if (needs_alpha(chain) != alpha.has_value()) {
    throw std::invalid_argument(std::string(to_string(chain)) +
                                (alpha ? " takes no alpha" : " requires alpha"));
  }
  switch (chain) {
    case AppendixChain::OneMaxRls:
    case AppendixChain::OneMaxEaAuxiliary:
      return ProblemInstance::onemax(n);
    case AppendixChain::DeceptiveRls:
    case AppendixChain::DeceptiveEaAuxiliary:
      return ProblemInstance::deceptive(n);
    default:
      return ProblemInstance::knapsack(n, *alpha);
  }
}

// Statuses 1..last-1 of the model, with the column of status `last` as r1.
AppendixBlock check_block(const StatusModel<Rational>& model, std::size_t last) {
  AppendixBlock b;
  b.errors.assign(model.errors.begin() + 1, model.errors.begin() + static_cast<std::ptrdiff_t>(last));
  b.initial.assign(model.initial.begin() + 1, model.initial.begin() + static_cast<std::ptrdiff_t>(last));
  b.transition = model.transition.block(1, last);
  Vector<Rational> r1;
  for (std::size_t i = 1; i < last; ++i) r1.push_back(model.transition(i, last));
  b.last_column = std::move(r1);
  return b;
}

AppendixBlock nonoptimal_block(const StatusModel<Rational>& model) {
  auto reduced = reduce_to_nonoptimal(model);
  return {std::move(reduced.errors), std::move(reduced.transition), std::move(reduced.initial), std::nullopt};
}

std::size_t block_size(AppendixChain chain, const ProblemInstance& p) {
  switch (chain) {
    case AppendixChain::OneMaxRls:
    case AppendixChain::OneMaxEaAuxiliary:
    case AppendixChain::DeceptiveRls:
      return static_cast<std::size_t>(p.n());
    case AppendixChain::DeceptiveEaAuxiliary:
      return static_cast<std::size_t>(p.n()) - 1;
    case AppendixChain::KnapsackRls:
      return static_cast<std::size_t>(p.knapsack_m());
    case AppendixChain::KnapsackEaAuxiliary:
      return static_cast<std::size_t>(p.knapsack_m()) - 1;
  }
  return 0;
}

Rational alternating_sign(long k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

Rational C(long n, long k) { return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)); }

}  // namespace

AppendixBlock appendix_block(AppendixChain chain, int n, const std::optional<Rational>& alpha) {
  const auto p = appendix_problem(chain, n, alpha);
  switch (chain) {
    case AppendixChain::OneMaxRls:
    case AppendixChain::DeceptiveRls:
      return nonoptimal_block(build_exact_chain(p, AlgorithmKind::RLS));
    case AppendixChain::OneMaxEaAuxiliary:
      return nonoptimal_block(build_auxiliary_chain(p, AlgorithmKind::OnePlusOneEA));
    case AppendixChain::KnapsackRls:
      return check_block(build_exact_chain(p, AlgorithmKind::RLS), static_cast<std::size_t>(p.knapsack_m()) + 1);
    case AppendixChain::DeceptiveEaAuxiliary:
    case AppendixChain::KnapsackEaAuxiliary: {
      const auto aux = build_auxiliary_chain(p, AlgorithmKind::OnePlusOneEA);
      return check_block(aux, aux.num_statuses() - 1);
    }
  }
  throw std::invalid_argument("appendix_block: bad chain");
}

AppendixValues appendix_inner_products(AppendixChain chain, int n, const std::optional<Rational>& alpha,
                                       std::size_t j) {
  const auto p = appendix_problem(chain, n, alpha);
  const std::size_t L = block_size(chain, p);
  if (j < 1 || j > L) {
    throw std::out_of_range("index j=" + std::to_string(j) + " outside 1.." + std::to_string(L) + " for " +
                            std::string(to_string(chain)));
  }
  const long J = static_cast<long>(j);
  const long N = n;
  const Rational inv_n = ratio(1, n);
  const Rational keep = Rational(1) - inv_n;
  AppendixValues v;
  switch (chain) {
    case AppendixChain::OneMaxRls:
    case AppendixChain::OneMaxEaAuxiliary:
      v.error_projection = Rational(j == 1 ? 1 : 0);
      if (j == 1) v.initial_projection = ratio(N, 2);
      break;
    case AppendixChain::DeceptiveRls:
      if (J < N) {
        v.error_projection = Rational(J <= 2 ? 1 : 0);
      } else {
        v.error_projection = alternating_sign(N) * ratio(N + 1, N);
      }
      v.initial_projection = C(N, J - 1) * (pow_int(Rational(2), static_cast<std::uint64_t>(N - J + 1)) - 2) *
                             half_pow(n);
      break;
    case AppendixChain::DeceptiveEaAuxiliary:
      v.error_projection = Rational(J <= 2 ? 1 : 0);
      v.initial_projection = C(N, J - 1) *
                             (pow_int(Rational(2), static_cast<std::uint64_t>(N - J + 1)) - (N - J + 2)) *
                             half_pow(n);
      v.residual_upper =
          C(N - 1, J - 1) * (Rational(1) - ratio(N + 1, N) * pow_int(keep, static_cast<std::uint64_t>(N - 1)));
      break;
    case AppendixChain::KnapsackRls: {
      const long M = p.knapsack_m();
      const Rational tail = half_pow(static_cast<int>(M)) - half_pow(n);
      if (J < M) {
        v.error_projection = Rational(J == 1 ? N - M + 1 : (J == 2 ? 1 : 0));
        v.initial_projection = C(M - 1, J - 1) * (half_pow(static_cast<int>(J - 1)) -
                                                  half_pow(static_cast<int>(M - 1)) + ratio(M - J, M + 1 - J) * tail);
        v.residual_lower = keep * C(N - 2, J - 1) * ratio(M - J, M + 1 - J);
        v.residual_upper = keep * C(N - 1, J - 1);
      } else {
        v.error_projection = alternating_sign(M) * (N - 1) * ratio(M + 1, M);
        v.initial_projection = tail;
        v.residual_exact = Rational(1) - *p.alpha();
      }
      break;
    }
    case AppendixChain::KnapsackEaAuxiliary: {
      const long M = p.knapsack_m();
      v.error_projection = Rational(J == 1 ? N - M + 1 : (J == 2 ? 1 : 0));
      v.initial_projection =
          C(M - 1, J - 1) * (half_pow(static_cast<int>(J - 1)) - half_pow(static_cast<int>(M - 1)));
      v.residual_upper =
          C(M - 1, J - 1) * (Rational(1) - pow_int(keep, static_cast<std::uint64_t>(M - 1)));
      break;
    }
  }
  return v;
}

DirectProducts direct_inner_products(const AppendixBlock& block, const SpectralDecomposition<Rational>& d,
                                     std::size_t j) {
  if (j < 1 || j > d.dim()) throw std::out_of_range("direct_inner_products: index out of range");
  const auto& pj = d.right_vectors[j - 1];
  const auto& qj = d.left_vectors[j - 1];
  DirectProducts out{dot(block.errors, pj), dot(qj, block.initial), std::nullopt};
  if (block.last_column) out.residual = dot(qj, *block.last_column);
  return out;
}

}  // namespace rsh
