#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace forestcalc {

// Exact scalar field used by default everywhere. cpp_rational keeps values
// reduced, so equality really is equality.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Domain errors: bad input, out-of-contract parameters. CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input document could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A matrix that had to be invertible was singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// An identity the math guarantees failed to hold: arithmetic bug, not bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Accepts "3", "-7", "p/q", and finite decimals like "0.25" or "-1.5e0" minus
// the exponent part (plain decimals only).
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string rational_string(const Rational& x);

inline double rational_to_double(const Rational& x) { return x.convert_to<double>(); }

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& x) { return x; }
  static Rational from_int(long long v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool near(const Rational& a, const Rational& b) { return a == b; }
  static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }
  static double to_double(const Rational& x) { return rational_to_double(x); }
  static std::string to_string(const Rational& x) { return rational_string(x); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  // Tolerance for identity checks in float mode (spec: 1e-9 max-entry agreement).
  static constexpr double near_tol = 1e-9;
  // Pivot magnitudes below this count as zero during elimination.
  static constexpr double singular_tol = 1e-12;
  static double from_rational(const Rational& x) { return rational_to_double(x); }
  static double from_int(long long v) { return static_cast<double>(v); }
  static bool is_zero(double x) { return x == 0.0; }
  static bool near(double a, double b) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= near_tol * scale;
  }
  static double abs(double x) { return std::abs(x); }
  static double to_double(double x) { return x; }
  static std::string to_string(double x);
};

}  // namespace forestcalc
