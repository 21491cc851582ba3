#pragma once

#include "rsh/problems.hpp"
#include "rsh/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace rsh {

enum class TheoremId {
  T4_RLS_OneMax,
  T5_EA_OneMax,
  T6_RLS_Peak,
  T7_EA_Peak,
  T8_RLS_Deceptive,
  T9_EA_Deceptive,
  T10_RLS_Knapsack,
  T11_EA_Knapsack,
};

enum class BoundShape { Exact, Upper, LowerUpper };

std::string_view to_string(TheoremId id);
TheoremId parse_theorem_id(std::string_view text);
TheoremId theorem_for(ProblemKind problem, AlgorithmKind algorithm);
BoundShape bound_shape(TheoremId id);
// T5 and T9 involve Euler's number and have no exact form.
bool has_rational_form(TheoremId id);

// The knapsack RLS bound appears twice in the source with different last
// terms: a sum in the theorem statement, a product at the end of the proof.
enum class T10Variant { Statement, ProofFinal };

struct BoundResult {
  TheoremId theorem{};
  std::optional<double> lower;
  std::optional<double> exact;
  std::optional<double> upper;
};

struct ExactBoundResult {
  TheoremId theorem{};
  std::optional<Rational> lower;
  std::optional<Rational> exact;
  std::optional<Rational> upper;
};

// Float evaluation with compensated sums and log-space powers, so t = 10^6
// is fine. alpha is required for the knapsack theorems only; T10 needs t >= 1.
BoundResult closed_form_error(TheoremId id, int n, const std::optional<Rational>& alpha, std::uint64_t t,
                              T10Variant variant = T10Variant::Statement);

// Exact evaluation; throws std::invalid_argument for T5/T9.
ExactBoundResult closed_form_error_exact(TheoremId id, int n, const std::optional<Rational>& alpha,
                                         std::uint64_t t, T10Variant variant = T10Variant::Statement);

// ---- eigenvector inner products ----

// Which bidiagonal block the inner products refer to.
//  OneMaxRls, DeceptiveRls: non-optimal part of the exact RLS chain.
//  OneMaxEaAuxiliary: non-optimal part of the OneMax EA bounding chain.
//  DeceptiveEaAuxiliary, KnapsackEaAuxiliary: statuses 1..L-1 of the bounding
//    chain, with r1 the exact chain's last column restricted to them.
//  KnapsackRls: statuses 1..an of the exact RLS chain, r1 = column an+1.
enum class AppendixChain {
  OneMaxRls,
  OneMaxEaAuxiliary,
  DeceptiveRls,
  DeceptiveEaAuxiliary,
  KnapsackRls,
  KnapsackEaAuxiliary,
};

std::string_view to_string(AppendixChain chain);

struct AppendixBlock {
  Vector<Rational> errors;
  UpperTriMatrix<Rational> transition;
  Vector<Rational> initial;
  std::optional<Vector<Rational>> last_column;
};

AppendixBlock appendix_block(AppendixChain chain, int n, const std::optional<Rational>& alpha = std::nullopt);

// Closed-form values; j is 1-based within the block. Missing fields mean the
// source gives no formula for that index.
struct AppendixValues {
  std::optional<Rational> error_projection;    // e'p_j
  std::optional<Rational> initial_projection;  // q_j'p0
  std::optional<Rational> residual_exact;      // q_j'r1
  std::optional<Rational> residual_lower;
  std::optional<Rational> residual_upper;
};

AppendixValues appendix_inner_products(AppendixChain chain, int n, const std::optional<Rational>& alpha,
                                       std::size_t j);

// The same three numbers computed straight from bidiagonal_decompose.
struct DirectProducts {
  Rational error_projection;
  Rational initial_projection;
  std::optional<Rational> residual;
};

DirectProducts direct_inner_products(const AppendixBlock& block, const SpectralDecomposition<Rational>& d,
                                     std::size_t j);

}  // namespace rsh
