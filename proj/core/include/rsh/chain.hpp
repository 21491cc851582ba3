#pragma once

#include "rsh/matrix.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rsh {

// Status 0 is the optimum. errors[i] is the approximation error of status i,
// initial[i] the probability of starting there.
template <Scalar T>
struct StatusModel {
  Vector<T> errors;
  Vector<T> initial;
  UpperTriMatrix<T> transition;

  std::size_t num_statuses() const { return errors.size(); }
  friend bool operator==(const StatusModel&, const StatusModel&) = default;
};

// The chain restricted to the non-optimal statuses 1..L.
template <Scalar T>
struct ReducedModel {
  Vector<T> errors;
  UpperTriMatrix<T> transition;
  Vector<T> initial;
};

struct Violation {
  std::string invariant;
  std::size_t index = 0;
  std::string message;
};

enum class SearchClass { Diagonal, BiDiagonal, Elitist };
std::string_view to_string(SearchClass c);

inline constexpr double kStochasticTolerance = 1e-12;
inline constexpr std::uint64_t kMaxOracleHorizon = 10'000'000;

template <Scalar T>
std::vector<Violation> validate_model(const StatusModel<T>& model);

// Throws std::invalid_argument listing the first violation.
template <Scalar T>
void require_valid(const StatusModel<T>& model);

template <Scalar T>
SearchClass classify_search(const UpperTriMatrix<T>& m);

// e' R^t p by t vector-matrix products. Works on full or reduced chains.
template <Scalar T>
T error_power(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p, std::uint64_t t);

// Values e' R^t p for t = 0..t_max in one sweep.
template <Scalar T>
Vector<T> error_power_curve(const Vector<T>& e, const UpperTriMatrix<T>& R, const Vector<T>& p,
                            std::uint64_t t_max);

template <Scalar T>
T expected_error_power(const StatusModel<T>& model, std::uint64_t t);

template <Scalar T>
Vector<T> expected_error_power_curve(const StatusModel<T>& model, std::uint64_t t_max);

template <Scalar T>
ReducedModel<T> reduce_to_nonoptimal(const StatusModel<T>& model);

StatusModel<double> to_float(const StatusModel<Rational>& model);

}  // namespace rsh
