#include "rsh/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace rsh {

DuplicateDiagonal::DuplicateDiagonal(std::size_t first, std::size_t second)
    : std::runtime_error("diagonal entries " + std::to_string(first) + " and " + std::to_string(second) +
                         " coincide; the closed-form eigenvectors do not apply, use the matrix-power oracle"),
      first_(first),
      second_(second) {}

namespace {

template <Scalar T>
void require_distinct(const Vector<T>& lambda) {
  const std::size_t L = lambda.size();
  if constexpr (is_exact<T>) {
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j) {
        if (lambda[i] == lambda[j]) throw DuplicateDiagonal(i, j);
      }
    }
  } else {
    double scale = 0.0;
    for (double x : lambda) scale = std::max(scale, std::abs(x));
    const double tol = kNearDuplicateTolerance * scale;
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j) {
        if (std::abs(lambda[i] - lambda[j]) <= tol) throw DuplicateDiagonal(i, j);
      }
    }
  }
}

}  // namespace

template <Scalar T>
SpectralDecomposition<T> bidiagonal_decompose(const UpperTriMatrix<T>& R) {
  const SearchClass cls = classify_search(R);
  if (cls == SearchClass::Elitist) {
    throw std::invalid_argument("bidiagonal_decompose: matrix has nonzeros above the first superdiagonal");
  }
  const std::size_t L = R.dim();
  SpectralDecomposition<T> d;
  d.eigenvalues = R.diagonal_entries();
  d.right_vectors.assign(L, Vector<T>(L, T(0)));
  d.left_vectors.assign(L, Vector<T>(L, T(0)));
  for (std::size_t j = 0; j < L; ++j) {
    d.right_vectors[j][j] = T(1);
    d.left_vectors[j][j] = T(1);
  }
  if (cls == SearchClass::Diagonal) return d;

  require_distinct(d.eigenvalues);
  const auto& lambda = d.eigenvalues;
  for (std::size_t j = 0; j < L; ++j) {
    // p_{i,j} = prod_{k=i}^{j-1} r_{k,k+1} / (lambda_j - lambda_k), built from i = j-1 downwards.
    auto& p = d.right_vectors[j];
    for (std::size_t i = j; i-- > 0;) {
      p[i] = p[i + 1] * R(i, i + 1) / (lambda[j] - lambda[i]);
    }
    // q_{j,i} = prod_{k=j+1}^{i} r_{k-1,k} / (lambda_j - lambda_k), built from i = j+1 upwards.
    auto& q = d.left_vectors[j];
    for (std::size_t i = j + 1; i < L; ++i) {
      q[i] = q[i - 1] * R(i - 1, i) / (lambda[j] - lambda[i]);
    }
  }
  return d;
}

template <Scalar T>
bool admits_closed_form(const UpperTriMatrix<T>& R) {
  const SearchClass cls = classify_search(R);
  if (cls == SearchClass::Diagonal) return true;
  if (cls == SearchClass::Elitist) return false;
  try {
    require_distinct(R.diagonal_entries());
  } catch (const DuplicateDiagonal&) {
    return false;
  }
  return true;
}

template <Scalar T>
UpperTriMatrix<T> spectral_power(const SpectralDecomposition<T>& d, std::uint64_t t) {
  const std::size_t L = d.dim();
  if (t == 0) return UpperTriMatrix<T>::identity(L);
  Vector<T> lambda_t(L);
  for (std::size_t j = 0; j < L; ++j) lambda_t[j] = power(d.eigenvalues[j], t);
  // p_j vanishes below j and q_j before j, so entry (i,k) only sums j in [i,k].
  UpperTriMatrix<T> out(L);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t k = i; k < L; ++k) {
      Accumulator<T> acc;
      for (std::size_t j = i; j <= k; ++j) {
        const T& p = d.right_vectors[j][i];
        const T& q = d.left_vectors[j][k];
        if (is_zero(p) || is_zero(q) || is_zero(lambda_t[j])) continue;
        acc.add(lambda_t[j] * p * q);
      }
      out.set(i, k, acc.value());
    }
  }
  return out;
}

template <Scalar T>
SpectralErrorCurve<T>::SpectralErrorCurve(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p0)
    : SpectralErrorCurve(bidiagonal_decompose(R), e, p0) {}

template <Scalar T>
SpectralErrorCurve<T>::SpectralErrorCurve(const SpectralDecomposition<T>& d, const Vector<T>& e,
                                          const Vector<T>& p0) {
  const std::size_t L = d.dim();
  if (e.size() != L || p0.size() != L) throw std::invalid_argument("SpectralErrorCurve: dimension mismatch");
  lambda_ = d.eigenvalues;
  ep_.resize(L);
  qp_.resize(L);
  for (std::size_t j = 0; j < L; ++j) {
    ep_[j] = dot(e, d.right_vectors[j]);
    qp_[j] = dot(d.left_vectors[j], p0);
  }
}

template <Scalar T>
T SpectralErrorCurve<T>::operator()(std::uint64_t t) const {
  Accumulator<T> acc;
  for (std::size_t j = 0; j < lambda_.size(); ++j) {
    if (is_zero(ep_[j]) || is_zero(qp_[j])) continue;
    acc.add(power(lambda_[j], t) * ep_[j] * qp_[j]);
  }
  return acc.value();
}

template <Scalar T>
T expected_error_spectral(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p0,
                          std::uint64_t t) {
  return SpectralErrorCurve<T>(e, R, p0)(t);
}

// ---- dominance ----

template <Scalar T>
DominanceReport<T> dominance_check(const UpperTriMatrix<T>& R_full, const UpperTriMatrix<T>& S_full) {
  if (R_full.dim() != S_full.dim()) throw std::invalid_argument("dominance_check: dimension mismatch");
  const std::size_t n = R_full.dim();
  DominanceReport<T> report;
  bool have_slack = false;
  auto record = [&](const char* cond, std::size_t i, std::size_t j, const T& slack) {
    if (!have_slack || slack < report.worst_slack) {
      report.worst_slack = slack;
      have_slack = true;
    }
    bool violated;
    if constexpr (is_exact<T>) {
      violated = slack < 0;
    } else {
      violated = slack < -kStochasticTolerance;
    }
    if (!violated) return;
    ++report.violation_count;
    if (report.first_violation) return;
    std::string where = std::string("(") + cond + ") at ";
    if (std::string(cond) == "C1") {
      where += "j=" + std::to_string(j);
    } else {
      where += "i=" + std::to_string(i) + ", j=" + std::to_string(j);
    }
    report.first_violation = DominanceViolation<T>{cond, i, j, slack, where};
  };

  for (std::size_t j = 0; j < n; ++j) {
    record("C1", j, j, T(S_full(j, j) - R_full(j, j)));
    // C2: prefix sums of r - s over rows 0..i-1, for 1 <= i < j.
    Accumulator<T> c2;
    for (std::size_t i = 1; i < j; ++i) {
      c2.add(T(R_full(i - 1, j) - S_full(i - 1, j)));
      record("C2", i, j, c2.value());
    }
    // C3: prefix sums of s_{., j-1} - s_{., j} over rows 0..i, for i < j-1.
    if (j >= 2) {
      Accumulator<T> c3;
      for (std::size_t i = 0; i + 1 < j; ++i) {
        c3.add(T(S_full(i, j - 1) - S_full(i, j)));
        record("C3", i, j, c3.value());
      }
    }
  }
  report.passed = report.violation_count == 0;
  if (report.passed) report.certificate = DominanceCertificate<T>(S_full);
  return report;
}

template <Scalar T>
T bound_via_auxiliary(const Vector<T>& e, const UpperTriMatrix<T>& S, const Vector<T>& p0, std::uint64_t t,
                      const DominanceCertificate<T>& certificate) {
  const auto& full = certificate.auxiliary();
  if (full.dim() != S.dim() + 1 || !(full.block(1, full.dim()) == S)) {
    throw std::logic_error("bound_via_auxiliary: the certificate was issued for a different auxiliary matrix");
  }
  if (e.size() != S.dim() || p0.size() != S.dim()) {
    throw std::invalid_argument("bound_via_auxiliary: dimension mismatch");
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || (i > 0 && e[i] < e[i - 1])) {
      throw std::invalid_argument("bound_via_auxiliary: errors must be nonnegative and nondecreasing (index " +
                                  std::to_string(i) + ")");
    }
    if (p0[i] < 0) {
      throw std::invalid_argument("bound_via_auxiliary: initial vector must be nonnegative (index " +
                                  std::to_string(i) + ")");
    }
  }
  return expected_error_spectral(e, S, p0, t);
}

template <Scalar T>
T bound_via_auxiliary(const Vector<T>& e, const UpperTriMatrix<T>& S, const Vector<T>& p0, std::uint64_t t,
                      const DominanceReport<T>& report) {
  if (!report.passed || !report.certificate) {
    throw std::logic_error("bound_via_auxiliary: no passed dominance certificate attached" +
                           (report.first_violation ? ", first violation " + report.first_violation->message
                                                   : std::string()));
  }
  return bound_via_auxiliary(e, S, p0, t, *report.certificate);
}

// ---- partition ----

template <Scalar T>
BlockPartition<T> partition_last_status(const StatusModel<T>& model) {
  const std::size_t n = model.num_statuses();
  if (n < 2) throw std::invalid_argument("partition_last_status: need at least 2 statuses");
  BlockPartition<T> part;
  const std::size_t L = n - 1;
  part.e_hat.assign(model.errors.begin(), model.errors.begin() + static_cast<std::ptrdiff_t>(L));
  part.p_hat0.assign(model.initial.begin(), model.initial.begin() + static_cast<std::ptrdiff_t>(L));
  part.R_hat = model.transition.block(0, L);
  part.r_hat1.resize(L);
  for (std::size_t i = 0; i < L; ++i) part.r_hat1[i] = model.transition(i, L);
  part.r_LL = model.transition(L, L);
  part.p_L0 = model.initial[L];
  part.e_L = model.errors[L];
  return part;
}

template <Scalar T>
BlockErrorCurve<T>::BlockErrorCurve(BlockPartition<T> part) : part_(std::move(part)) {
  const std::size_t L = part_.R_hat.dim();
  if (L == 0 || part_.e_hat.size() != L || part_.p_hat0.size() != L || part_.r_hat1.size() != L) {
    throw std::invalid_argument("block_error: inconsistent partition dimensions");
  }
  // Strip an absorbing optimum from the leading block when it is present.
  const bool strip = part_.R_hat(0, 0) == 1 && is_zero(part_.e_hat[0]);
  const std::size_t first = strip ? 1 : 0;
  e_check_.assign(part_.e_hat.begin() + static_cast<std::ptrdiff_t>(first), part_.e_hat.end());
  p_check_.assign(part_.p_hat0.begin() + static_cast<std::ptrdiff_t>(first), part_.p_hat0.end());
  r_check_.assign(part_.r_hat1.begin() + static_cast<std::ptrdiff_t>(first), part_.r_hat1.end());
  R_check_ = part_.R_hat.block(first, L);

  if (R_check_.dim() > 0 && admits_closed_form(R_check_)) {
    const auto d = bidiagonal_decompose(R_check_);
    spectral_ = true;
    lambda_ = d.eigenvalues;
    const std::size_t m = d.dim();
    ep_.resize(m);
    qp_.resize(m);
    qr_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      ep_[j] = dot(e_check_, d.right_vectors[j]);
      qp_[j] = dot(d.left_vectors[j], p_check_);
      qr_[j] = dot(d.left_vectors[j], r_check_);
    }
  }
}

template <Scalar T>
T BlockErrorCurve<T>::geometric(const T& lambda, std::uint64_t t) const {
  // sum_{k=0}^{t-1} r_LL^k lambda^{t-1-k}
  if (t == 0) return T(0);
  const T& r = part_.r_LL;
  if constexpr (!is_exact<T>) {
    const double scale = std::max(std::abs(lambda), std::abs(r));
    if (std::abs(lambda - r) > 1e-4 * scale) {
      return (power(lambda, t) - power(r, t)) / (lambda - r);
    }
  }
  T acc(0);
  T r_k(1);
  for (std::uint64_t k = 0; k < t; ++k) {
    acc = acc * lambda + r_k;
    r_k *= r;
  }
  return acc;
}

template <Scalar T>
T BlockErrorCurve<T>::operator()(std::uint64_t t) const {
  Accumulator<T> acc;
  acc.add(part_.p_L0 * part_.e_L * power(part_.r_LL, t));
  if (R_check_.dim() == 0) return acc.value();
  if (spectral_) {
    for (std::size_t j = 0; j < lambda_.size(); ++j) {
      if (is_zero(ep_[j])) continue;
      acc.add(power(lambda_[j], t) * ep_[j] * qp_[j]);
      if (!is_zero(qr_[j]) && !is_zero(part_.p_L0)) acc.add(part_.p_L0 * ep_[j] * qr_[j] * geometric(lambda_[j], t));
    }
    return acc.value();
  }
  // Repeated multiplication: w_m = e' R^m, s_m = w_m r, Horner over m.
  Vector<T> w = e_check_;
  T mixed(0);
  for (std::uint64_t m = 0; m < t; ++m) {
    mixed = mixed * part_.r_LL + dot(w, r_check_);
    w = R_check_.apply_left(w);
    if constexpr (is_exact<T>) {
      for (const auto& x : w) check_capacity(x);
    }
  }
  acc.add(dot(w, p_check_));
  acc.add(part_.p_L0 * mixed);
  return acc.value();
}

template <Scalar T>
T block_error(const Vector<T>& e_hat, const UpperTriMatrix<T>& R_hat, const Vector<T>& p_hat0,
              const Vector<T>& r_hat1, const T& r_LL, const T& p_L0, const T& e_L, std::uint64_t t) {
  return BlockErrorCurve<T>(BlockPartition<T>{e_hat, R_hat, p_hat0, r_hat1, r_LL, p_L0, e_L})(t);
}

#define RSH_INSTANTIATE_SPECTRAL(T)                                                                      \
  template SpectralDecomposition<T> bidiagonal_decompose(const UpperTriMatrix<T>&);                      \
  template bool admits_closed_form(const UpperTriMatrix<T>&);                                            \
  template UpperTriMatrix<T> spectral_power(const SpectralDecomposition<T>&, std::uint64_t);             \
  template class SpectralErrorCurve<T>;                                                                  \
  template T expected_error_spectral(const Vector<T>&, const UpperTriMatrix<T>&, const Vector<T>&,       \
                                     std::uint64_t);                                                     \
  template DominanceReport<T> dominance_check(const UpperTriMatrix<T>&, const UpperTriMatrix<T>&);       \
  template T bound_via_auxiliary(const Vector<T>&, const UpperTriMatrix<T>&, const Vector<T>&,           \
                                 std::uint64_t, const DominanceCertificate<T>&);                         \
  template T bound_via_auxiliary(const Vector<T>&, const UpperTriMatrix<T>&, const Vector<T>&,           \
                                 std::uint64_t, const DominanceReport<T>&);                              \
  template BlockPartition<T> partition_last_status(const StatusModel<T>&);                               \
  template class BlockErrorCurve<T>;                                                                     \
  template T block_error(const Vector<T>&, const UpperTriMatrix<T>&, const Vector<T>&, const Vector<T>&, \
                         const T&, const T&, const T&, std::uint64_t);

RSH_INSTANTIATE_SPECTRAL(double)
RSH_INSTANTIATE_SPECTRAL(Rational)

#undef RSH_INSTANTIATE_SPECTRAL

}  // namespace rsh
