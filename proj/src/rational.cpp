#include "carpet/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "carpet/error.hpp"

namespace carpet {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational rational_from_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw Error(Errc::InputParse, "not a decimal number: '" + std::string(text) + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const auto* first = text.data() + pos;
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) {
      throw Error(Errc::InputParse, "bad exponent in '" + std::string(text) + "'");
    }
    pos = text.size();
  }
  if (pos != text.size()) throw Error(Errc::InputParse, "trailing characters in '" + std::string(text) + "'");

  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long shift = exponent - frac_digits;
  Rational q;
  if (shift >= 0) {
    q = Rational(mantissa * pow10(static_cast<unsigned long>(shift)));
  } else {
    q = Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
  }
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw Error(Errc::InputParse, "non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(Errc::InputParse, "cannot format number");
  return rational_from_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d) || Rational(d) == q) return d;
  const double away = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return d;
  const Rational e1 = abs(q - Rational(d)), e2 = abs(q - Rational(away));
  if (e1 != e2) return e1 < e2 ? d : away;
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  return (bits & 1) == 0 ? d : away;
}

}  // namespace carpet
