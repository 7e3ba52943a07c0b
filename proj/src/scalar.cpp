#include "forestcalc/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace forestcalc {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_digits(std::string_view s, std::string_view whole) {
  if (!all_digits(s)) throw ParseError("bad rational literal: \"" + std::string(whole) + "\"");
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("bad rational literal: \"" + std::string(text) + "\"");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_digits(s.substr(0, slash), text);
    BigInt den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    value = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw ParseError("bad rational literal: \"" + std::string(text) + "\"");
    BigInt num = whole.empty() ? BigInt(0) : parse_digits(whole, text);
    BigInt den = 1;
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("bad rational literal: \"" + std::string(text) + "\"");
      num = num * 10 + (c - '0');
      den *= 10;
    }
    value = Rational(num, den);
  } else {
    value = Rational(parse_digits(s, text));
  }
  return negative ? -value : value;
}

std::string rational_string(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) {
    s += '/';
    s += denominator(x).str();
  }
  return s;
}

std::string scalar_traits<double>::to_string(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace forestcalc
