#pragma once

#include "rsh/chain.hpp"
#include "rsh/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsh {

enum class ProblemKind { OneMax, Peak, Deceptive, Knapsack };
enum class AlgorithmKind { RLS, OnePlusOneEA };

std::string_view to_string(ProblemKind kind);
std::string_view to_string(AlgorithmKind kind);
ProblemKind parse_problem_kind(std::string_view text);
AlgorithmKind parse_algorithm_kind(std::string_view text);

// One of OneMax(n), Peak(n), Deceptive(n) or the parametric knapsack
// Knapsack(n, alpha). Knapsack items are laid out as x1 = bit 0,
// x2 = bits 1..an-1, x3 = bits an..n-1 (an = alpha*n).
class ProblemInstance {
 public:
  static ProblemInstance onemax(int n);
  static ProblemInstance peak(int n);
  static ProblemInstance deceptive(int n);
  static ProblemInstance knapsack(int n, const Rational& alpha);
  // alpha must be given iff kind is Knapsack.
  static ProblemInstance make(ProblemKind kind, int n, const std::optional<Rational>& alpha = std::nullopt);

  ProblemKind kind() const { return kind_; }
  int n() const { return n_; }
  const std::optional<Rational>& alpha() const { return alpha_; }
  // alpha*n; only meaningful for Knapsack.
  int knapsack_m() const { return m_; }

  std::size_t num_statuses() const;
  Vector<Rational> errors() const;
  Rational optimal_fitness() const;
  std::string describe() const;

 private:
  ProblemInstance(ProblemKind kind, int n, std::optional<Rational> alpha, int m)
      : kind_(kind), n_(n), alpha_(std::move(alpha)), m_(m) {}

  ProblemKind kind_;
  int n_;
  std::optional<Rational> alpha_;
  int m_ = 0;
};

class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  // "1011" -> bits 1,0,1,1 (leftmost character is bit 0).
  static Bitstring from_string(std::string_view text);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }
  std::size_t count() const { return count_range(0, n_); }
  // Number of ones in [first, last).
  std::size_t count_range(std::size_t first, std::size_t last) const;
  std::size_t hamming_distance(const Bitstring& other) const;
  std::string to_string() const;

  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Ones per block: (|x|) for the first three problems, (|x1|,|x2|,|x3|) for Knapsack.
std::vector<int> block_sizes(const ProblemInstance& p);
std::vector<int> block_counts(const ProblemInstance& p, const Bitstring& x);

bool is_feasible(const ProblemInstance& p, const Bitstring& x);
bool is_feasible_counts(const ProblemInstance& p, const std::vector<int>& counts);

// Throws std::invalid_argument for infeasible Knapsack input or wrong length.
Rational fitness(const ProblemInstance& p, const Bitstring& x);
Rational fitness_of_counts(const ProblemInstance& p, const std::vector<int>& counts);
std::size_t status_of(const ProblemInstance& p, const Bitstring& x);
std::size_t status_of_counts(const ProblemInstance& p, const std::vector<int>& counts);

// Ratio-greedy repair. Drops x3 items, then x1, until feasible; a lone x3
// block with two or more items keeps one uniformly chosen survivor.
Bitstring knapsack_repair(const ProblemInstance& p, const Bitstring& x, Rng& rng);
// The same rule on block counts (which x3 item survives does not matter there).
std::vector<int> knapsack_repair_counts(const ProblemInstance& p, std::vector<int> counts);

Vector<Rational> initial_distribution(const ProblemInstance& p);

// Largest n accepted by the block-count enumerator used for (1+1)EA chains.
inline constexpr int kMaxEnumerationN = 32;

// Chain built from the paper's closed-form transition probabilities (RLS on
// all problems, EA on Peak) or, for EA on OneMax/Deceptive/Knapsack, from
// exhaustive enumeration of mutation outcomes over block counts.
StatusModel<Rational> build_exact_chain(const ProblemInstance& p, AlgorithmKind a);

// Enumeration of mutation outcomes for any (problem, algorithm); used to
// cross-check the closed-form builders.
StatusModel<Rational> enumerate_chain(const ProblemInstance& p, AlgorithmKind a);

// Knapsack only: lumps statuses an and an+1 into one status with error n.
// Throws if the two columns disagree on the statuses above them.
StatusModel<Rational> merge_knapsack_tail(const StatusModel<Rational>& exact, const ProblemInstance& p);

// Bounding chain for (1+1)EA on OneMax, Deceptive or Knapsack (merged
// statuses). For OneMax it is fully bidiagonal. For Deceptive and Knapsack
// the leading block (all statuses but the last) is bidiagonal and the last
// column is the exact chain's column; dominance applies to that leading block.
StatusModel<Rational> build_auxiliary_chain(const ProblemInstance& p, AlgorithmKind a);

// Number of leading statuses of build_auxiliary_chain's result that form the
// dominated bidiagonal block (all statuses for OneMax, all but the last otherwise).
std::size_t auxiliary_block_size(const ProblemInstance& p);

// The exact chain matching build_auxiliary_chain's state space: the exact
// chain itself for OneMax/Deceptive, the merged chain for Knapsack.
StatusModel<Rational> build_bounded_chain(const ProblemInstance& p);

}  // namespace rsh
