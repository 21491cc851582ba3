#include "rsh/numeric.hpp"

#include <cctype>
#include <cstdio>

namespace rsh {

std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::Float64 ? "float64" : "rational";
}

NumericMode parse_numeric_mode(std::string_view text) {
  if (text == "float64" || text == "float") return NumericMode::Float64;
  if (text == "rational" || text == "exact") return NumericMode::ExactRational;
  throw std::invalid_argument("unknown numeric mode '" + std::string(text) +
                              "' (expected float64 or rational)");
}

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

void check_capacity(const Rational& q) {
  const std::size_t bits = bit_size(q);
  if (bits > kRationalBitLimit) {
    throw CapacityError("exact rational grew to " + std::to_string(bits) +
                        " bits, above the limit of " + std::to_string(kRationalBitLimit) +
                        "; use float64 mode or a shorter horizon");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const std::string original(text);
  try {
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
      const mpz_class num = parse_integer(trim(s.substr(0, slash)));
      const mpz_class den = parse_integer(trim(s.substr(slash + 1)));
      if (den == 0) throw std::invalid_argument("zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view whole = s.substr(0, dot);
      const std::string_view frac = s.substr(dot + 1);
      bool negative = false;
      if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
        negative = whole.front() == '-';
        whole.remove_prefix(1);
      }
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty())) {
        throw std::invalid_argument("bad decimal");
      }
      mpz_class digits(std::string(whole) + std::string(frac), 10);
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      Rational q(negative ? mpz_class(-digits) : digits, scale);
      q.canonicalize();
      return q;
    }
    return Rational(parse_integer(s));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational '" + original + "'");
  }
}

std::string format_rational(const Rational& q) {
  return q.get_str(10);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational pow_int(const Rational& base, std::uint64_t exponent) {
  const std::size_t base_bits = bit_size(base);
  if (exponent > 1 && base_bits > 2 && exponent > kRationalBitLimit / (base_bits - 2)) {
    throw CapacityError("exact power would exceed " + std::to_string(kRationalBitLimit) +
                        " bits; use float64 mode or a shorter horizon");
  }
  // Powers of a canonical fraction stay canonical.
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  check_capacity(r);
  return r;
}

double pow_int(double base, std::uint64_t exponent) {
  double result = 1.0;
  double b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

Rational binomial(unsigned long n, unsigned long k) {
  if (k > n) return Rational(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return Rational(z);
}

double to_double(const Rational& q) {
  return q.get_d();
}

}  // namespace rsh
