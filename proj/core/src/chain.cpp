#include "rsh/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace rsh {

std::string_view to_string(SearchClass c) {
  switch (c) {
    case SearchClass::Diagonal: return "diagonal";
    case SearchClass::BiDiagonal: return "bidiagonal";
    case SearchClass::Elitist: return "elitist";
  }
  return "unknown";
}

namespace {

template <Scalar T>
bool sums_to_one(const T& s) {
  if constexpr (is_exact<T>) {
    return s == 1;
  } else {
    return std::abs(s - 1.0) <= kStochasticTolerance;
  }
}

template <Scalar T>
std::string show(const T& x) {
  return format_scalar(x);
}

}  // namespace

template <Scalar T>
std::vector<Violation> validate_model(const StatusModel<T>& model) {
  std::vector<Violation> out;
  const std::size_t n = model.errors.size();
  if (n < 2) {
    out.push_back({"size", n, "a model needs at least 2 statuses"});
    return out;
  }
  if (model.initial.size() != n || model.transition.dim() != n) {
    out.push_back({"size", n, "errors, initial and transition dimensions differ"});
    return out;
  }

  if (!is_zero(model.errors[0])) {
    out.push_back({"optimal error", 0, "error of status 0 is " + show(model.errors[0]) + ", expected 0"});
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (model.errors[i] < model.errors[i - 1]) {
      out.push_back({"monotone errors", i, "errors not monotone at index " + std::to_string(i)});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (model.initial[i] < 0) {
      out.push_back({"initial nonnegative", i, "initial probability negative at index " + std::to_string(i)});
    }
  }
  if (!sums_to_one(sum(model.initial))) {
    out.push_back({"initial stochastic", 0, "initial distribution sums to " + show(sum(model.initial))});
  }

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const T& v = model.transition(i, j);
      if (v < 0 || v > 1) {
        out.push_back({"entry range", j,
                       "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + show(v) +
                           " outside [0,1]"});
      }
    }
    if (!sums_to_one(model.transition.column_sum(j))) {
      out.push_back({"column stochastic", j, "column " + std::to_string(j) + " not stochastic (sum " +
                                                  show(model.transition.column_sum(j)) + ")"});
    }
  }
  if (model.transition(0, 0) != 1) {
    out.push_back({"absorbing optimum", 0, "entry (0,0) is " + show(model.transition(0, 0)) + ", expected 1"});
  }
  return out;
}

template <Scalar T>
void require_valid(const StatusModel<T>& model) {
  const auto report = validate_model(model);
  if (!report.empty()) {
    throw std::invalid_argument("invalid status model: " + report.front().message);
  }
}

template <Scalar T>
SearchClass classify_search(const UpperTriMatrix<T>& m) {
  bool diagonal = true;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i + 1; j < m.dim(); ++j) {
      if (is_zero(m(i, j))) continue;
      if (j > i + 1) return SearchClass::Elitist;
      diagonal = false;
    }
  }
  return diagonal ? SearchClass::Diagonal : SearchClass::BiDiagonal;
}

namespace {

template <Scalar T>
void check_vector_capacity(const Vector<T>& v) {
  if constexpr (is_exact<T>) {
    for (const auto& x : v) check_capacity(x);
  }
}

void check_horizon(std::uint64_t t) {
  if (t > kMaxOracleHorizon) {
    throw std::out_of_range("matrix-power oracle horizon " + std::to_string(t) + " exceeds " +
                            std::to_string(kMaxOracleHorizon) + "; use the spectral path");
  }
}

}  // namespace

template <Scalar T>
T error_power(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p, std::uint64_t t) {
  check_horizon(t);
  if (e.size() != R.dim() || p.size() != R.dim()) {
    throw std::invalid_argument("error_power: dimension mismatch");
  }
  // Propagating the row vector e' keeps each step a single pass.
  Vector<T> w = e;
  for (std::uint64_t k = 0; k < t; ++k) {
    w = R.apply_left(w);
    check_vector_capacity(w);
  }
  return dot(w, p);
}

template <Scalar T>
Vector<T> error_power_curve(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p,
                            std::uint64_t t_max) {
  check_horizon(t_max);
  if (e.size() != R.dim() || p.size() != R.dim()) {
    throw std::invalid_argument("error_power_curve: dimension mismatch");
  }
  Vector<T> out;
  out.reserve(t_max + 1);
  Vector<T> v = p;
  out.push_back(dot(e, v));
  for (std::uint64_t k = 0; k < t_max; ++k) {
    v = R.apply(v);
    check_vector_capacity(v);
    out.push_back(dot(e, v));
  }
  return out;
}

template <Scalar T>
T expected_error_power(const StatusModel<T>& model, std::uint64_t t) {
  return error_power(model.errors, model.transition, model.initial, t);
}

template <Scalar T>
Vector<T> expected_error_power_curve(const StatusModel<T>& model, std::uint64_t t_max) {
  return error_power_curve(model.errors, model.transition, model.initial, t_max);
}

template <Scalar T>
ReducedModel<T> reduce_to_nonoptimal(const StatusModel<T>& model) {
  if (model.errors.empty() || !is_zero(model.errors[0])) {
    throw std::invalid_argument("reduce_to_nonoptimal: error of status 0 must be 0");
  }
  const std::size_t n = model.num_statuses();
  ReducedModel<T> out;
  out.errors.assign(model.errors.begin() + 1, model.errors.end());
  out.initial.assign(model.initial.begin() + 1, model.initial.end());
  out.transition = model.transition.block(1, n);
  return out;
}

StatusModel<double> to_float(const StatusModel<Rational>& model) {
  return {to_float(model.errors), to_float(model.initial), to_float(model.transition)};
}

#define RSH_INSTANTIATE_CHAIN(T)                                                                     \
  template std::vector<Violation> validate_model(const StatusModel<T>&);                             \
  template void require_valid(const StatusModel<T>&);                                                \
  template SearchClass classify_search(const UpperTriMatrix<T>&);                                    \
  template T error_power(const Vector<T>&, const UpperTriMatrix<T>&, const Vector<T>&, std::uint64_t); \
  template Vector<T> error_power_curve(const Vector<T>&, const UpperTriMatrix<T>&, const Vector<T>&, \
                                       std::uint64_t);                                               \
  template T expected_error_power(const StatusModel<T>&, std::uint64_t);                             \
  template Vector<T> expected_error_power_curve(const StatusModel<T>&, std::uint64_t);               \
  template ReducedModel<T> reduce_to_nonoptimal(const StatusModel<T>&);

RSH_INSTANTIATE_CHAIN(double)
RSH_INSTANTIATE_CHAIN(Rational)

#undef RSH_INSTANTIATE_CHAIN

}  // namespace rsh
