#pragma once

#include <sds/errors.hpp>

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sds {

// Exact rational; always kept in canonical (reduced) form.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Fixed-point rendering with `digits` fractional digits, round half to even.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(r) * scale;
  mpz_class q = scaled.get_num() / scaled.get_den();
  Rational frac = scaled - Rational(q);
  const Rational half(1, 2);
  if (frac > half || (frac == half && q % 2 != 0)) q += 1;

  std::string digits_str = q.get_str();
  if (static_cast<int>(digits_str.size()) <= digits)
    digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
  std::string out = (r < 0 && q != 0) ? "-" : "";
  out += digits_str.substr(0, digits_str.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out += '.';
    out += digits_str.substr(digits_str.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

// Accepts "p", "p/q" and finite decimals "x.yyy" (converted exactly).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return InvalidArgument("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();

  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto all_digits = [](std::string_view v) {
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  Rational value;
  std::string_view body = std::string_view(s).substr(start);
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw bad();
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) throw bad();
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = Rational(num, den);
  } else {
    if (!all_digits(body)) throw bad();
    value = Rational(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (s[0] == '-') value = -value;
  return value;
}

}  // namespace sds
