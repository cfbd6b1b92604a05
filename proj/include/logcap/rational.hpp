#pragma once

// Exact rational scalars backed by GMP, plus the handful of conversions the
// rest of the library needs (parsing, logarithms, factorials, powers).

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logcap {

using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or a plain decimal such as "-0.125" / "3.5e-2".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }

  // Decimal with optional exponent.
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) ++scale;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ParseError("malformed number '" + s + "'");
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw ParseError("malformed number '" + s + "'");
    std::string exp_part = s.substr(pos + 1);
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_part, &used);
      if (used != exp_part.size()) throw ParseError("malformed exponent in '" + s + "'");
    } catch (const std::logic_error&) {
      throw ParseError("malformed exponent in '" + s + "'");
    }
  }
  Integer mantissa(digits, 10);
  long shift = exponent - scale;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Natural log of an integer of arbitrary size.
inline double log_integer(const Integer& z) {
  if (z <= 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

/// log(r) without overflow; -inf for r == 0.
inline double log_rational(const Rational& r) {
  if (sgn(r) < 0) throw std::domain_error("log of a negative rational");
  if (sgn(r) == 0) return -std::numeric_limits<double>::infinity();
  return log_integer(r.get_num()) - log_integer(r.get_den());
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// base^e for signed e; base must be nonzero when e < 0.
inline Rational pow_signed(const Rational& base, long e) {
  if (e >= 0) return pow(base, static_cast<unsigned long>(e));
  if (sgn(base) == 0) throw std::domain_error("zero to a negative power");
  Rational inv = 1 / base;
  return pow(inv, static_cast<unsigned long>(-e));
}

}  // namespace logcap
