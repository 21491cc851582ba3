#pragma once

#include "rsh/numeric.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rsh {

template <Scalar T>
using Vector = std::vector<T>;

// Dense square matrix whose strict lower triangle is identically zero.
// Element (i, j) of a transition matrix is Pr{next = i | current = j}.
template <Scalar T>
class UpperTriMatrix {
 public:
  using value_type = T;
  static constexpr NumericMode numeric_mode = numeric_mode_of<T>;

  UpperTriMatrix() = default;
  explicit UpperTriMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, T(0)) {}

  static UpperTriMatrix identity(std::size_t dim);
  static UpperTriMatrix diagonal(const Vector<T>& values);
  // Throws std::invalid_argument on ragged input or a nonzero below the diagonal.
  static UpperTriMatrix from_rows(const std::vector<Vector<T>>& rows);

  std::size_t dim() const { return dim_; }

  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  const T& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const T& value);
  void add(std::size_t i, std::size_t j, const T& value);

  std::vector<Vector<T>> rows() const;
  Vector<T> column(std::size_t j) const;
  Vector<T> diagonal_entries() const;
  T column_sum(std::size_t j) const;

  // Principal submatrix over indices [first, last).
  UpperTriMatrix block(std::size_t first, std::size_t last) const;

  // y = M x
  Vector<T> apply(const Vector<T>& x) const;
  // y' = x' M
  Vector<T> apply_left(const Vector<T>& x) const;

  friend bool operator==(const UpperTriMatrix&, const UpperTriMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  Vector<T> data_;
};

template <Scalar T>
UpperTriMatrix<T> operator*(const UpperTriMatrix<T>& a, const UpperTriMatrix<T>& b);

template <Scalar T>
UpperTriMatrix<T> operator-(const UpperTriMatrix<T>& a, const UpperTriMatrix<T>& b);

template <Scalar T>
T max_abs_entry(const UpperTriMatrix<T>& m);

template <Scalar T>
UpperTriMatrix<T> matrix_power(const UpperTriMatrix<T>& m, std::uint64_t t);

UpperTriMatrix<double> to_float(const UpperTriMatrix<Rational>& m);
Vector<double> to_float(const Vector<Rational>& v);

extern template class UpperTriMatrix<double>;
extern template class UpperTriMatrix<Rational>;

}  // namespace rsh
