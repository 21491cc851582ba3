#include "rsh/matrix.hpp"

#include <cmath>
#include <string>

namespace rsh {

template <Scalar T>
UpperTriMatrix<T> UpperTriMatrix<T>::identity(std::size_t dim) {
  UpperTriMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.data_[i * dim + i] = T(1);
  return m;
}

template <Scalar T>
UpperTriMatrix<T> UpperTriMatrix<T>::diagonal(const Vector<T>& values) {
  UpperTriMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i * m.dim_ + i] = values[i];
  return m;
}

template <Scalar T>
UpperTriMatrix<T> UpperTriMatrix<T>::from_rows(const std::vector<Vector<T>>& rows) {
  UpperTriMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("matrix row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i > j && !is_zero(rows[i][j])) {
        throw std::invalid_argument("matrix is not upper triangular: entry (" + std::to_string(i) +
                                    "," + std::to_string(j) + ") is nonzero");
      }
      m.data_[i * m.dim_ + j] = rows[i][j];
    }
  }
  return m;
}

template <Scalar T>
const T& UpperTriMatrix<T>::at(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw std::out_of_range("matrix index out of range");
  return data_[i * dim_ + j];
}

template <Scalar T>
void UpperTriMatrix<T>::set(std::size_t i, std::size_t j, const T& value) {
  if (i >= dim_ || j >= dim_) throw std::out_of_range("matrix index out of range");
  if (i > j && !is_zero(value)) {
    throw std::invalid_argument("cannot set a nonzero below the diagonal at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
  }
  data_[i * dim_ + j] = value;
}

template <Scalar T>
void UpperTriMatrix<T>::add(std::size_t i, std::size_t j, const T& value) {
  T updated = at(i, j);
  updated += value;
  set(i, j, updated);
}

template <Scalar T>
std::vector<Vector<T>> UpperTriMatrix<T>::rows() const {
  std::vector<Vector<T>> out(dim_, Vector<T>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

template <Scalar T>
Vector<T> UpperTriMatrix<T>::column(std::size_t j) const {
  Vector<T> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = at(i, j);
  return out;
}

template <Scalar T>
Vector<T> UpperTriMatrix<T>::diagonal_entries() const {
  Vector<T> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, i);
  return out;
}

template <Scalar T>
T UpperTriMatrix<T>::column_sum(std::size_t j) const {
  Accumulator<T> acc;
  for (std::size_t i = 0; i <= j; ++i) acc.add(at(i, j));
  return acc.value();
}

template <Scalar T>
UpperTriMatrix<T> UpperTriMatrix<T>::block(std::size_t first, std::size_t last) const {
  if (first > last || last > dim_) throw std::out_of_range("block range out of range");
  UpperTriMatrix out(last - first);
  for (std::size_t i = first; i < last; ++i) {
    for (std::size_t j = i; j < last; ++j) out.data_[(i - first) * out.dim_ + (j - first)] = (*this)(i, j);
  }
  return out;
}

template <Scalar T>
Vector<T> UpperTriMatrix<T>::apply(const Vector<T>& x) const {
  if (x.size() != dim_) throw std::invalid_argument("apply: dimension mismatch");
  Vector<T> y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Accumulator<T> acc;
    for (std::size_t j = i; j < dim_; ++j) {
      if (!is_zero((*this)(i, j))) acc.add((*this)(i, j) * x[j]);
    }
    y[i] = acc.value();
  }
  return y;
}

template <Scalar T>
Vector<T> UpperTriMatrix<T>::apply_left(const Vector<T>& x) const {
  if (x.size() != dim_) throw std::invalid_argument("apply_left: dimension mismatch");
  Vector<T> y(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Accumulator<T> acc;
    for (std::size_t i = 0; i <= j; ++i) {
      if (!is_zero((*this)(i, j))) acc.add(x[i] * (*this)(i, j));
    }
    y[j] = acc.value();
  }
  return y;
}

template <Scalar T>
UpperTriMatrix<T> operator*(const UpperTriMatrix<T>& a, const UpperTriMatrix<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix product: dimension mismatch");
  const std::size_t n = a.dim();
  UpperTriMatrix<T> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Accumulator<T> acc;
      for (std::size_t k = i; k <= j; ++k) {
        if (!is_zero(a(i, k)) && !is_zero(b(k, j))) acc.add(a(i, k) * b(k, j));
      }
      c.set(i, j, acc.value());
    }
  }
  return c;
}

template <Scalar T>
UpperTriMatrix<T> operator-(const UpperTriMatrix<T>& a, const UpperTriMatrix<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix difference: dimension mismatch");
  UpperTriMatrix<T> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) c.set(i, j, T(a(i, j) - b(i, j)));
  }
  return c;
}

template <Scalar T>
T max_abs_entry(const UpperTriMatrix<T>& m) {
  T best(0);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      T v = m(i, j);
      if (v < 0) v = -v;
      if (v > best) best = v;
    }
  }
  return best;
}

template <Scalar T>
UpperTriMatrix<T> matrix_power(const UpperTriMatrix<T>& m, std::uint64_t t) {
  UpperTriMatrix<T> result = UpperTriMatrix<T>::identity(m.dim());
  for (std::uint64_t k = 0; k < t; ++k) result = result * m;
  return result;
}

UpperTriMatrix<double> to_float(const UpperTriMatrix<Rational>& m) {
  UpperTriMatrix<double> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) out.set(i, j, to_double(m(i, j)));
  }
  return out;
}

Vector<double> to_float(const Vector<Rational>& v) {
  Vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

template class UpperTriMatrix<double>;
template class UpperTriMatrix<Rational>;

template UpperTriMatrix<double> operator*(const UpperTriMatrix<double>&, const UpperTriMatrix<double>&);
template UpperTriMatrix<Rational> operator*(const UpperTriMatrix<Rational>&, const UpperTriMatrix<Rational>&);
template UpperTriMatrix<double> operator-(const UpperTriMatrix<double>&, const UpperTriMatrix<double>&);
template UpperTriMatrix<Rational> operator-(const UpperTriMatrix<Rational>&, const UpperTriMatrix<Rational>&);
template double max_abs_entry(const UpperTriMatrix<double>&);
template Rational max_abs_entry(const UpperTriMatrix<Rational>&);
template UpperTriMatrix<double> matrix_power(const UpperTriMatrix<double>&, std::uint64_t);
template UpperTriMatrix<Rational> matrix_power(const UpperTriMatrix<Rational>&, std::uint64_t);

}  // namespace rsh
