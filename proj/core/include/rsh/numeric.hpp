#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace rsh {

using Rational = mpq_class;

enum class NumericMode { Float64, ExactRational };

template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, Rational>;

template <Scalar T>
inline constexpr NumericMode numeric_mode_of =
    std::is_same_v<T, double> ? NumericMode::Float64 : NumericMode::ExactRational;

template <Scalar T>
inline constexpr bool is_exact = std::is_same_v<T, Rational>;

std::string_view to_string(NumericMode mode);
NumericMode parse_numeric_mode(std::string_view text);

// Raised when an exact computation grows past kRationalBitLimit instead of
// silently eating all memory.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kRationalBitLimit = std::size_t{1} << 24;

// num/den in lowest terms. mpq_class's two-argument constructor does not
// canonicalize, and comparisons on non-canonical values are wrong.
Rational ratio(long num, long den);

std::size_t bit_size(const Rational& q);
void check_capacity(const Rational& q);

// Accepts "p/q", integers and plain decimals such as "0.5" (converted exactly).
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);
std::string format_double(double x);

Rational pow_int(const Rational& base, std::uint64_t exponent);
double pow_int(double base, std::uint64_t exponent);
Rational binomial(unsigned long n, unsigned long k);

// x^t with 0^0 = 1; libm pow in float mode, exact otherwise.
inline double power(double base, std::uint64_t t) { return std::pow(base, static_cast<double>(t)); }
inline Rational power(const Rational& base, std::uint64_t t) { return pow_int(base, t); }

inline double to_double(double x) { return x; }
double to_double(const Rational& q);

template <Scalar T>
T from_rational(const Rational& q) {
  if constexpr (is_exact<T>) {
    return q;
  } else {
    return to_double(q);
  }
}

inline std::string format_scalar(double x) { return format_double(x); }
inline std::string format_scalar(const Rational& q) { return format_rational(q); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Neumaier-compensated accumulator in float mode, plain exact sum otherwise.
template <Scalar T>
class Accumulator {
 public:
  void add(const T& x) {
    if constexpr (is_exact<T>) {
      sum_ += x;
    } else {
      const double t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
      sum_ = t;
    }
  }

  T value() const {
    if constexpr (is_exact<T>) {
      return sum_;
    } else {
      return sum_ + comp_;
    }
  }

 private:
  T sum_{0};
  double comp_{0.0};
};

template <Scalar T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  Accumulator<T> acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc.add(a[i] * b[i]);
  }
  return acc.value();
}

template <Scalar T>
T sum(const std::vector<T>& a) {
  Accumulator<T> acc;
  for (const auto& x : a) acc.add(x);
  return acc.value();
}

}  // namespace rsh
