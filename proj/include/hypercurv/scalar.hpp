#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "hypercurv/error.hpp"

namespace hypercurv {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Equality tolerance used by the float path when the caller does not supply one.
inline constexpr double kDefaultTolerance = 1e-9;

/// Uniform access to the two supported scalar fields. Comparisons in the exact
/// field ignore the tolerance argument.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode = "exact";

  static Rational from_rational(const Rational& r) { return r; }
  static double to_double(const Rational& r) { return r.convert_to<double>(); }
  static bool eq(const Rational& a, const Rational& b, double = 0) { return a == b; }
  static bool le(const Rational& a, const Rational& b, double = 0) { return a <= b; }
  static bool is_zero(const Rational& a, double = 0) { return a == 0; }
  static Rational floor(const Rational& a) {
    Integer q = boost::multiprecision::numerator(a) / boost::multiprecision::denominator(a);
    if (a < 0 && Rational(q) != a) q -= 1;
    return Rational(q);
  }

  static std::string format(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode = "float";

  static double from_rational(const Rational& r) { return r.convert_to<double>(); }
  static double to_double(double r) { return r; }
  static double scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }
  static bool eq(double a, double b, double tol = kDefaultTolerance) {
    return std::abs(a - b) <= tol * scale(a, b);
  }
  static bool le(double a, double b, double tol = kDefaultTolerance) { return a <= b + tol * scale(a, b); }
  static bool is_zero(double a, double tol = kDefaultTolerance) { return std::abs(a) <= tol; }
  static double floor(double a) { return std::floor(a); }

  // Shortest representation that round-trips, so output is reproducible.
  static std::string format(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
  }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents plus the final semiconvergent).
inline Rational rationalize(double x, std::uint64_t max_den = (std::uint64_t{1} << 32)) {
  if (!std::isfinite(x)) throw Error(ErrorCode::ParseError, "non-finite number");
  const bool neg = x < 0;
  double rem = std::abs(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(rem);
    Integer a = Integer(fl);
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) {
      Integer k = (Integer(max_den) - q0) / q1;
      Integer ps = k * p1 + p0, qs = k * q1 + q0;
      Rational semi(ps, qs), conv(p1, q1), target = Rational(std::abs(x));
      if (boost::multiprecision::abs(semi - target) < boost::multiprecision::abs(conv - target)) {
        p1 = ps;
        q1 = qs;
      }
      break;
    }
    Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = rem - fl;
    if (frac == 0.0) break;
    rem = 1.0 / frac;
    if (!std::isfinite(rem)) break;
  }
  Rational r(p1, q1);
  return neg ? Rational(-r) : r;
}

namespace detail {

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
  for (char c : s)
    if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
  // a leading 0 would make the string constructor read octal
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(s.substr(first)));
}

}  // namespace detail

/// Parses "p/q", an integer, or a decimal with optional exponent, exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(s.substr(0, slash), text);
    Integer den = detail::parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    out = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp = s.substr(e + 1);
      bool eneg = false;
      if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
        eneg = exp.front() == '-';
        exp.remove_prefix(1);
      }
      auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
      if (ec != std::errc{} || ptr != exp.data() + exp.size() || exponent > 4096)
        throw Error(ErrorCode::ParseError, "malformed exponent in '" + std::string(text) + "'");
      if (eneg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      frac_digits = static_cast<long>(s.size() - dot - 1);
      if (digits.empty()) throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
    } else {
      digits = std::string(s);
    }
    Integer mant = detail::parse_integer(digits, text);
    long shift = exponent - frac_digits;
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(shift)));
    out = shift >= 0 ? Rational(mant * ten_pow) : Rational(mant, ten_pow);
  }
  return neg ? Rational(-out) : out;
}

}  // namespace hypercurv
