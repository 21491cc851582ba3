#include "rsh/problems.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace rsh {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::OneMax: return "onemax";
    case ProblemKind::Peak: return "peak";
    case ProblemKind::Deceptive: return "deceptive";
    case ProblemKind::Knapsack: return "knapsack";
  }
  return "unknown";
}

std::string_view to_string(AlgorithmKind kind) {
  return kind == AlgorithmKind::RLS ? "rls" : "ea";
}

ProblemKind parse_problem_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "onemax") return ProblemKind::OneMax;
  if (s == "peak") return ProblemKind::Peak;
  if (s == "deceptive") return ProblemKind::Deceptive;
  if (s == "knapsack") return ProblemKind::Knapsack;
  throw std::invalid_argument("unknown problem '" + std::string(text) +
                              "' (expected onemax, peak, deceptive or knapsack)");
}

AlgorithmKind parse_algorithm_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "rls") return AlgorithmKind::RLS;
  if (s == "ea" || s == "(1+1)ea" || s == "1+1ea" || s == "oneplusoneea") return AlgorithmKind::OnePlusOneEA;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected rls or ea)");
}

// ---- ProblemInstance ----

namespace {

void require_n(int n) {
  if (n < 2) throw std::invalid_argument("problem size n must be at least 2, got " + std::to_string(n));
}

}  // namespace

ProblemInstance ProblemInstance::onemax(int n) {
  require_n(n);
  return {ProblemKind::OneMax, n, std::nullopt, 0};
}

ProblemInstance ProblemInstance::peak(int n) {
  require_n(n);
  return {ProblemKind::Peak, n, std::nullopt, 0};
}

ProblemInstance ProblemInstance::deceptive(int n) {
  require_n(n);
  return {ProblemKind::Deceptive, n, std::nullopt, 0};
}

ProblemInstance ProblemInstance::knapsack(int n, const Rational& alpha) {
  require_n(n);
  if (alpha <= 0 || alpha >= 1) {
    throw std::invalid_argument("knapsack alpha must lie in (0,1), got " + format_rational(alpha));
  }
  const Rational an = alpha * n;
  if (an.get_den() != 1) {
    throw std::invalid_argument("knapsack needs alpha*n to be an integer; alpha=" + format_rational(alpha) +
                                ", n=" + std::to_string(n));
  }
  const long m = an.get_num().get_si();
  if (m < 2 || m > n - 1) {
    throw std::invalid_argument("knapsack needs 2 <= alpha*n <= n-1, got alpha*n=" + std::to_string(m));
  }
  return {ProblemKind::Knapsack, n, alpha, static_cast<int>(m)};
}

ProblemInstance ProblemInstance::make(ProblemKind kind, int n, const std::optional<Rational>& alpha) {
  if (kind == ProblemKind::Knapsack) {
    if (!alpha) throw std::invalid_argument("knapsack requires alpha");
    return knapsack(n, *alpha);
  }
  if (alpha) throw std::invalid_argument("alpha is only meaningful for knapsack");
  switch (kind) {
    case ProblemKind::OneMax: return onemax(n);
    case ProblemKind::Peak: return peak(n);
    default: return deceptive(n);
  }
}

std::size_t ProblemInstance::num_statuses() const {
  if (kind_ == ProblemKind::Knapsack) return static_cast<std::size_t>(m_) + 2;
  return static_cast<std::size_t>(n_) + 1;
}

Vector<Rational> ProblemInstance::errors() const {
  Vector<Rational> e(num_statuses());
  switch (kind_) {
    case ProblemKind::OneMax:
    case ProblemKind::Deceptive:
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<long>(i);
      break;
    case ProblemKind::Peak:
      e[0] = 0;
      for (std::size_t i = 1; i < e.size(); ++i) e[i] = 1;
      break;
    case ProblemKind::Knapsack:
      e[0] = 0;
      for (int k = 1; k < m_; ++k) e[static_cast<std::size_t>(k)] = n_ - m_ + k;
      e[static_cast<std::size_t>(m_)] = Rational(n_) - ratio(1, n_);
      e[static_cast<std::size_t>(m_) + 1] = n_;
      break;
  }
  return e;
}

Rational ProblemInstance::optimal_fitness() const {
  switch (kind_) {
    case ProblemKind::OneMax: return n_;
    case ProblemKind::Peak: return 1;
    case ProblemKind::Deceptive: return n_;
    case ProblemKind::Knapsack: return n_;
  }
  return 0;
}

std::string ProblemInstance::describe() const {
  std::string s = std::string(to_string(kind_)) + "(n=" + std::to_string(n_);
  if (alpha_) s += ", alpha=" + format_rational(*alpha_);
  return s + ")";
}

// ---- Bitstring ----

Bitstring Bitstring::from_string(std::string_view text) {
  Bitstring x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
    x.set(i, text[i] == '1');
  }
  return x;
}

void Bitstring::set(std::size_t i, bool value) {
  const std::uint64_t mask = 1ULL << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t Bitstring::count_range(std::size_t first, std::size_t last) const {
  std::size_t total = 0;
  while (first < last) {
    const std::size_t w = first >> 6;
    const std::size_t lo = first & 63;
    const std::size_t hi = std::min<std::size_t>(64, lo + (last - first));
    std::uint64_t word = words_[w] >> lo;
    const std::size_t width = hi - lo;
    if (width < 64) word &= (1ULL << width) - 1;
    total += static_cast<std::size_t>(std::popcount(word));
    first += width;
  }
  return total;
}

std::size_t Bitstring::hamming_distance(const Bitstring& other) const {
  if (other.n_ != n_) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) d += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  return d;
}

std::string Bitstring::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---- fitness and statuses ----

std::vector<int> block_sizes(const ProblemInstance& p) {
  if (p.kind() == ProblemKind::Knapsack) return {1, p.knapsack_m() - 1, p.n() - p.knapsack_m()};
  return {p.n()};
}

std::vector<int> block_counts(const ProblemInstance& p, const Bitstring& x) {
  if (x.size() != static_cast<std::size_t>(p.n())) {
    throw std::invalid_argument("bitstring length " + std::to_string(x.size()) + " does not match n=" +
                                std::to_string(p.n()));
  }
  if (p.kind() != ProblemKind::Knapsack) return {static_cast<int>(x.count())};
  const auto m = static_cast<std::size_t>(p.knapsack_m());
  const auto n = static_cast<std::size_t>(p.n());
  return {static_cast<int>(x.count_range(0, 1)), static_cast<int>(x.count_range(1, m)),
          static_cast<int>(x.count_range(m, n))};
}

bool is_feasible_counts(const ProblemInstance& p, const std::vector<int>& c) {
  if (p.kind() != ProblemKind::Knapsack) return true;
  // x1 and x3 items weigh n each; the whole x2 block weighs less than 1.
  const int heavy = c[0] + c[2];
  return heavy == 0 || (heavy == 1 && c[1] == 0);
}

bool is_feasible(const ProblemInstance& p, const Bitstring& x) {
  return is_feasible_counts(p, block_counts(p, x));
}

Rational fitness_of_counts(const ProblemInstance& p, const std::vector<int>& c) {
  const int n = p.n();
  switch (p.kind()) {
    case ProblemKind::OneMax: return c[0];
    case ProblemKind::Peak: return c[0] == n ? 1 : 0;
    case ProblemKind::Deceptive: return c[0] == n ? n : n - 1 - c[0];
    case ProblemKind::Knapsack:
      if (!is_feasible_counts(p, c)) throw std::invalid_argument("fitness: infeasible knapsack solution");
      return Rational(n * c[0] + c[1]) + ratio(c[2], n);
  }
  return 0;
}

Rational fitness(const ProblemInstance& p, const Bitstring& x) {
  return fitness_of_counts(p, block_counts(p, x));
}

std::size_t status_of_counts(const ProblemInstance& p, const std::vector<int>& c) {
  const int n = p.n();
  switch (p.kind()) {
    case ProblemKind::OneMax:
    case ProblemKind::Peak:
      return static_cast<std::size_t>(n - c[0]);
    case ProblemKind::Deceptive:
      return c[0] == n ? 0 : static_cast<std::size_t>(c[0] + 1);
    case ProblemKind::Knapsack: {
      if (!is_feasible_counts(p, c)) throw std::invalid_argument("status_of: infeasible knapsack solution");
      const int m = p.knapsack_m();
      if (c[0] == 1) return 0;
      if (c[1] > 0) return static_cast<std::size_t>(m - c[1]);
      if (c[2] == 1) return static_cast<std::size_t>(m);
      return static_cast<std::size_t>(m + 1);
    }
  }
  return 0;
}

std::size_t status_of(const ProblemInstance& p, const Bitstring& x) {
  return status_of_counts(p, block_counts(p, x));
}

std::vector<int> knapsack_repair_counts(const ProblemInstance& p, std::vector<int> c) {
  if (p.kind() != ProblemKind::Knapsack) return c;
  if (c[2] >= 1 && c[0] + c[1] >= 1) c[2] = 0;
  if (c[0] == 1 && c[1] >= 1) c[0] = 0;
  if (c[2] >= 2) c[2] = 1;
  return c;
}

Bitstring knapsack_repair(const ProblemInstance& p, const Bitstring& x, Rng& rng) {
  if (p.kind() != ProblemKind::Knapsack) return x;
  auto c = block_counts(p, x);
  if (is_feasible_counts(p, c)) return x;
  const auto m = static_cast<std::size_t>(p.knapsack_m());
  const auto n = static_cast<std::size_t>(p.n());
  Bitstring y = x;
  // Lowest profit-to-weight ratio first: the x3 block.
  if (c[0] + c[1] >= 1) {
    for (std::size_t i = m; i < n; ++i) y.set(i, false);
    c[2] = 0;
  }
  // Next the x1 item.
  if (c[0] == 1 && c[1] >= 1) y.set(0, false);
  // Only x3 items left: random deletions until one remains, i.e. a uniform survivor.
  if (c[0] + c[1] == 0 && c[2] >= 2) {
    const std::uint64_t keep = rng.below(static_cast<std::uint64_t>(c[2]));
    std::uint64_t seen = 0;
    for (std::size_t i = m; i < n; ++i) {
      if (!y.get(i)) continue;
      if (seen++ != keep) y.set(i, false);
    }
  }
  return y;
}

Vector<Rational> initial_distribution(const ProblemInstance& p) {
  const int n = p.n();
  const Rational all = pow_int(ratio(1, 2), static_cast<std::uint64_t>(n));
  Vector<Rational> dist(p.num_statuses());
  switch (p.kind()) {
    case ProblemKind::OneMax:
    case ProblemKind::Peak:
      for (int j = 0; j <= n; ++j) {
        dist[static_cast<std::size_t>(j)] = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)) * all;
      }
      break;
    case ProblemKind::Deceptive:
      dist[0] = all;
      for (int i = 1; i <= n; ++i) {
        dist[static_cast<std::size_t>(i)] =
            binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i - 1)) * all;
      }
      break;
    case ProblemKind::Knapsack: {
      const int m = p.knapsack_m();
      const Rational half_m = pow_int(ratio(1, 2), static_cast<std::uint64_t>(m));
      const Rational half_m1 = pow_int(ratio(1, 2), static_cast<std::uint64_t>(m - 1));
      dist[0] = half_m;
      for (int k = 1; k < m; ++k) {
        dist[static_cast<std::size_t>(k)] =
            binomial(static_cast<unsigned long>(m - 1), static_cast<unsigned long>(m - k)) * half_m1;
      }
      dist[static_cast<std::size_t>(m)] = half_m - all;
      dist[static_cast<std::size_t>(m) + 1] = all;
      break;
    }
  }
  return dist;
}

// ---- chain builders ----

namespace {

// Block counts of one solution in each status.
std::vector<int> representative(const ProblemInstance& p, std::size_t status) {
  const int n = p.n();
  const int s = static_cast<int>(status);
  switch (p.kind()) {
    case ProblemKind::OneMax:
    case ProblemKind::Peak:
      return {n - s};
    case ProblemKind::Deceptive:
      return {s == 0 ? n : s - 1};
    case ProblemKind::Knapsack: {
      const int m = p.knapsack_m();
      if (s == 0) return {1, 0, 0};
      if (s < m) return {0, m - s, 0};
      if (s == m) return {0, 0, 1};
      return {0, 0, 0};
    }
  }
  return {};
}

StatusModel<Rational> blank_model(const ProblemInstance& p) {
  StatusModel<Rational> model;
  model.errors = p.errors();
  model.initial = initial_distribution(p);
  model.transition = UpperTriMatrix<Rational>(p.num_statuses());
  return model;
}

using OutcomeSink = std::function<void(const std::vector<int>&, const Rational&)>;

void rls_outcomes(const ProblemInstance& p, const std::vector<int>& c, const OutcomeSink& sink) {
  const auto sizes = block_sizes(p);
  const int n = p.n();
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (c[b] > 0) {
      auto y = c;
      --y[b];
      sink(y, ratio(c[b], n));
    }
    if (sizes[b] - c[b] > 0) {
      auto y = c;
      ++y[b];
      sink(y, ratio(sizes[b] - c[b], n));
    }
  }
}

void ea_outcomes(const ProblemInstance& p, const std::vector<int>& c, const std::vector<Rational>& flip_prob,
                 const OutcomeSink& sink) {
  const auto sizes = block_sizes(p);
  std::vector<int> y = c;
  // Depth-first over blocks: a ones switched off, z zeros switched on.
  std::function<void(std::size_t, int, Rational)> walk = [&](std::size_t b, int flips, Rational weight) {
    if (b == sizes.size()) {
      sink(y, weight * flip_prob[static_cast<std::size_t>(flips)]);
      return;
    }
    const int ones = c[b];
    const int zeros = sizes[b] - c[b];
    for (int a = 0; a <= ones; ++a) {
      for (int z = 0; z <= zeros; ++z) {
        y[b] = ones - a + z;
        walk(b + 1, flips + a + z,
             weight * binomial(static_cast<unsigned long>(ones), static_cast<unsigned long>(a)) *
                 binomial(static_cast<unsigned long>(zeros), static_cast<unsigned long>(z)));
      }
    }
    y[b] = c[b];
  };
  walk(0, 0, Rational(1));
}

}  // namespace

StatusModel<Rational> enumerate_chain(const ProblemInstance& p, AlgorithmKind a) {
  const int n = p.n();
  if (a == AlgorithmKind::OnePlusOneEA && n > kMaxEnumerationN) {
    throw std::domain_error("exact (1+1)EA chain needs n <= " + std::to_string(kMaxEnumerationN) + ", got n=" +
                            std::to_string(n));
  }
  auto model = blank_model(p);
  std::vector<Rational> flip_prob;
  if (a == AlgorithmKind::OnePlusOneEA) {
    // Probability of one specific pattern of k flipped bits.
    const Rational q = ratio(1, n);
    for (int k = 0; k <= n; ++k) {
      flip_prob.push_back(pow_int(q, static_cast<std::uint64_t>(k)) *
                          pow_int(Rational(1) - q, static_cast<std::uint64_t>(n - k)));
    }
  }
  for (std::size_t j = 0; j < p.num_statuses(); ++j) {
    const auto c = representative(p, j);
    const Rational f = fitness_of_counts(p, c);
    std::vector<Rational> column(p.num_statuses(), Rational(0));
    const OutcomeSink sink = [&](const std::vector<int>& y, const Rational& prob) {
      const auto repaired = knapsack_repair_counts(p, y);
      if (fitness_of_counts(p, repaired) > f) {
        column[status_of_counts(p, repaired)] += prob;
      } else {
        column[j] += prob;
      }
    };
    if (a == AlgorithmKind::RLS) {
      rls_outcomes(p, c, sink);
    } else {
      ea_outcomes(p, c, flip_prob, sink);
    }
    for (std::size_t i = 0; i <= j; ++i) model.transition.set(i, j, column[i]);
    for (std::size_t i = j + 1; i < column.size(); ++i) {
      if (!is_zero(column[i])) throw std::logic_error("elitist chain moved to a worse status");
    }
  }
  return model;
}

StatusModel<Rational> build_exact_chain(const ProblemInstance& p, AlgorithmKind a) {
  const int n = p.n();
  const Rational inv_n = ratio(1, n);
  auto model = blank_model(p);
  auto& R = model.transition;
  R.set(0, 0, Rational(1));

  if (a == AlgorithmKind::OnePlusOneEA) {
    if (p.kind() != ProblemKind::Peak) return enumerate_chain(p, a);
    for (int j = 1; j <= n; ++j) {
      const Rational hit = pow_int(inv_n, static_cast<std::uint64_t>(j)) *
                           pow_int(Rational(1) - inv_n, static_cast<std::uint64_t>(n - j));
      R.set(0, static_cast<std::size_t>(j), hit);
      R.set(static_cast<std::size_t>(j), static_cast<std::size_t>(j), Rational(1) - hit);
    }
    return model;
  }

  switch (p.kind()) {
    case ProblemKind::OneMax:
      for (int j = 1; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        R.set(uj - 1, uj, ratio(j, n));
        R.set(uj, uj, Rational(1) - ratio(j, n));
      }
      break;
    case ProblemKind::Peak:
      R.set(0, 1, inv_n);
      R.set(1, 1, Rational(1) - inv_n);
      for (std::size_t j = 2; j <= static_cast<std::size_t>(n); ++j) R.set(j, j, Rational(1));
      break;
    case ProblemKind::Deceptive: {
      const auto un = static_cast<std::size_t>(n);
      R.set(1, 1, Rational(1));
      for (std::size_t s = 2; s < un; ++s) {
        const Rational down = ratio(static_cast<long>(s) - 1, n);
        R.set(s - 1, s, down);
        R.set(s, s, Rational(1) - down);
      }
      // From n-1 ones, flipping the last zero reaches the optimum.
      R.set(0, un, inv_n);
      R.set(un - 1, un, ratio(n - 1, n));
      R.set(un, un, Rational(0));
      break;
    }
    case ProblemKind::Knapsack: {
      const int m = p.knapsack_m();
      const auto um = static_cast<std::size_t>(m);
      R.set(1, 1, Rational(1));
      for (std::size_t k = 2; k < um; ++k) {
        const Rational up = ratio(static_cast<long>(k) - 1, n);
        R.set(k - 1, k, up);
        R.set(k, k, Rational(1) - up);
      }
      // One x3 item: adding any x1/x2 item is kept and the x3 item dropped.
      R.set(0, um, inv_n);
      R.set(um - 1, um, ratio(m - 1, n));
      R.set(um, um, Rational(1) - ratio(m, n));
      // Empty knapsack: every added item improves.
      R.set(0, um + 1, inv_n);
      R.set(um - 1, um + 1, ratio(m - 1, n));
      R.set(um, um + 1, ratio(n - m, n));
      R.set(um + 1, um + 1, Rational(0));
      break;
    }
  }
  return model;
}

StatusModel<Rational> merge_knapsack_tail(const StatusModel<Rational>& exact, const ProblemInstance& p) {
  if (p.kind() != ProblemKind::Knapsack) throw std::invalid_argument("merge_knapsack_tail: knapsack only");
  const auto m = static_cast<std::size_t>(p.knapsack_m());
  if (exact.num_statuses() != m + 2) throw std::invalid_argument("merge_knapsack_tail: wrong chain size");
  const auto& R = exact.transition;
  for (std::size_t i = 0; i < m; ++i) {
    if (R(i, m) != R(i, m + 1)) {
      throw std::invalid_argument("merge_knapsack_tail: statuses are not lumpable (row " + std::to_string(i) + ")");
    }
  }
  StatusModel<Rational> merged;
  merged.errors.assign(exact.errors.begin(), exact.errors.begin() + static_cast<std::ptrdiff_t>(m));
  merged.errors.push_back(exact.errors[m + 1]);
  merged.initial.assign(exact.initial.begin(), exact.initial.begin() + static_cast<std::ptrdiff_t>(m));
  merged.initial.push_back(exact.initial[m] + exact.initial[m + 1]);
  merged.transition = R.block(0, m + 1);
  merged.transition.set(m, m, R(m, m));
  return merged;
}

std::size_t auxiliary_block_size(const ProblemInstance& p) {
  switch (p.kind()) {
    case ProblemKind::OneMax: return static_cast<std::size_t>(p.n()) + 1;
    case ProblemKind::Deceptive: return static_cast<std::size_t>(p.n());
    case ProblemKind::Knapsack: return static_cast<std::size_t>(p.knapsack_m());
    case ProblemKind::Peak: break;
  }
  throw std::invalid_argument("no auxiliary chain for " + p.describe());
}

StatusModel<Rational> build_bounded_chain(const ProblemInstance& p) {
  auto exact = build_exact_chain(p, AlgorithmKind::OnePlusOneEA);
  if (p.kind() == ProblemKind::Knapsack) return merge_knapsack_tail(exact, p);
  return exact;
}

StatusModel<Rational> build_auxiliary_chain(const ProblemInstance& p, AlgorithmKind a) {
  if (a != AlgorithmKind::OnePlusOneEA || p.kind() == ProblemKind::Peak) {
    throw std::invalid_argument("no auxiliary chain for " + std::string(to_string(a)) + " on " + p.describe());
  }
  const int n = p.n();
  const Rational inv_n = ratio(1, n);
  const Rational keep = Rational(1) - inv_n;

  if (p.kind() == ProblemKind::OneMax) {
    auto model = blank_model(p);
    const Rational c = pow_int(keep, static_cast<std::uint64_t>(n - 1));
    model.transition.set(0, 0, Rational(1));
    for (int j = 1; j <= n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const Rational up = ratio(j, n) * c;
      model.transition.set(uj - 1, uj, up);
      model.transition.set(uj, uj, Rational(1) - up);
    }
    return model;
  }

  // Leading block of size L: a jump straight to the optimum with probability
  // `to_opt`, and one step down with probability (j-1)/n * (1-1/n)^power.
  auto model = build_bounded_chain(p);
  const std::size_t L = auxiliary_block_size(p);
  const auto jump = static_cast<std::uint64_t>(p.kind() == ProblemKind::Deceptive ? n : p.knapsack_m());
  const auto power = static_cast<std::uint64_t>(p.kind() == ProblemKind::Deceptive ? n - 1 : p.knapsack_m() - 2);
  const Rational to_opt = pow_int(inv_n, jump);
  const Rational c = pow_int(keep, power);
  auto& S = model.transition;
  for (std::size_t j = 1; j < L; ++j) {
    for (std::size_t i = 0; i <= j; ++i) S.set(i, j, Rational(0));
    S.set(0, j, to_opt);
    Rational stay = Rational(1) - to_opt;
    if (j >= 2) {
      const Rational down = ratio(static_cast<long>(j) - 1, n) * c;
      S.set(j - 1, j, down);
      stay -= down;
    }
    S.set(j, j, stay);
  }
  return model;
}

}  // namespace rsh
