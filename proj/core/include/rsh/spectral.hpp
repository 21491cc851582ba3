#pragma once

#include "rsh/chain.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsh {

// Two diagonal entries collide, so the closed-form eigenvectors do not exist
// (or are too ill-conditioned to trust in float mode).
class DuplicateDiagonal : public std::runtime_error {
 public:
  DuplicateDiagonal(std::size_t first, std::size_t second);
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

inline constexpr double kNearDuplicateTolerance = 1e-9;

// R = sum_j lambda_j p_j q_j' with p_j, q_j normalised so p_jj = q_jj = 1.
template <Scalar T>
struct SpectralDecomposition {
  Vector<T> eigenvalues;
  std::vector<Vector<T>> right_vectors;
  std::vector<Vector<T>> left_vectors;

  std::size_t dim() const { return eigenvalues.size(); }
};

template <Scalar T>
SpectralDecomposition<T> bidiagonal_decompose(const UpperTriMatrix<T>& R);

// True if R is diagonal, or bidiagonal with pairwise distinct diagonal entries.
template <Scalar T>
bool admits_closed_form(const UpperTriMatrix<T>& R);

template <Scalar T>
UpperTriMatrix<T> spectral_power(const SpectralDecomposition<T>& d, std::uint64_t t);

// e' R^t p0 = sum_j lambda_j^t (e'p_j)(q_j'p0). The scalar pairs are computed
// once, so each evaluation costs O(L).
template <Scalar T>
class SpectralErrorCurve {
 public:
  SpectralErrorCurve(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p0);
  SpectralErrorCurve(const SpectralDecomposition<T>& d, const Vector<T>& e, const Vector<T>& p0);

  T operator()(std::uint64_t t) const;

  const Vector<T>& eigenvalues() const { return lambda_; }
  const Vector<T>& error_projections() const { return ep_; }
  const Vector<T>& initial_projections() const { return qp_; }

 private:
  Vector<T> lambda_;
  Vector<T> ep_;
  Vector<T> qp_;
};

template <Scalar T>
T expected_error_spectral(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p0,
                          std::uint64_t t);

// ---- dominance (prefix-sum conditions C1-C3) ----

template <Scalar T>
struct DominanceViolation {
  std::string condition;
  std::size_t i = 0;
  std::size_t j = 0;
  T slack{};
  std::string message;
};

template <Scalar T>
class DominanceCertificate;
template <Scalar T>
struct DominanceReport;
// R_full and S_full include the absorbing status 0.
template <Scalar T>
DominanceReport<T> dominance_check(const UpperTriMatrix<T>& R_full, const UpperTriMatrix<T>& S_full);

// Only dominance_check can mint one, and only when all conditions hold.
template <Scalar T>
class DominanceCertificate {
 public:
  const UpperTriMatrix<T>& auxiliary() const { return auxiliary_; }

 private:
  explicit DominanceCertificate(UpperTriMatrix<T> s) : auxiliary_(std::move(s)) {}
  UpperTriMatrix<T> auxiliary_;

  template <Scalar U>
  friend DominanceReport<U> dominance_check(const UpperTriMatrix<U>&, const UpperTriMatrix<U>&);
};

template <Scalar T>
struct DominanceReport {
  bool passed = false;
  std::optional<DominanceViolation<T>> first_violation;
  std::size_t violation_count = 0;
  // Smallest slack over every inequality checked; negative means violated.
  T worst_slack{};
  std::optional<DominanceCertificate<T>> certificate;
};

// Upper bound e' R^t p0 <= e' S^t p0. S is the non-optimal block of the
// certified auxiliary matrix; e must be nonnegative and nondecreasing.
template <Scalar T>
T bound_via_auxiliary(const Vector<T>& e, const UpperTriMatrix<T>& S, const Vector<T>& p0, std::uint64_t t,
                      const DominanceCertificate<T>& certificate);

// Same, but refuses (std::logic_error) unless the report carries a certificate.
template <Scalar T>
T bound_via_auxiliary(const Vector<T>& e, const UpperTriMatrix<T>& S, const Vector<T>& p0, std::uint64_t t,
                      const DominanceReport<T>& report);

// ---- last-status partition ----

// R = [[R_hat, r_hat1], [0, r_LL]]; the hatted parts cover statuses 0..L-1.
template <Scalar T>
struct BlockPartition {
  Vector<T> e_hat;
  UpperTriMatrix<T> R_hat;
  Vector<T> p_hat0;
  Vector<T> r_hat1;
  T r_LL{};
  T p_L0{};
  T e_L{};
};

template <Scalar T>
BlockPartition<T> partition_last_status(const StatusModel<T>& model);

template <Scalar T>
class BlockErrorCurve {
 public:
  explicit BlockErrorCurve(BlockPartition<T> part);

  T operator()(std::uint64_t t) const;
  // True when the leading block was handled by the closed-form eigenvectors
  // rather than by repeated multiplication.
  bool uses_spectral() const { return spectral_; }

 private:
  T geometric(const T& lambda, std::uint64_t t) const;

  BlockPartition<T> part_;
  Vector<T> e_check_;
  UpperTriMatrix<T> R_check_;
  Vector<T> p_check_;
  Vector<T> r_check_;
  bool spectral_ = false;
  Vector<T> lambda_;
  Vector<T> ep_;
  Vector<T> qp_;
  Vector<T> qr_;
};

template <Scalar T>
T block_error(const Vector<T>& e_hat, const UpperTriMatrix<T>& R_hat, const Vector<T>& p_hat0,
              const Vector<T>& r_hat1, const T& r_LL, const T& p_L0, const T& e_L, std::uint64_t t);

}  // namespace rsh
