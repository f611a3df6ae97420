#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace carpet {

using Rational = mpq_class;

// Exact value of a decimal literal such as "-0.125" or "3e-2".
Rational rational_from_decimal(std::string_view text);

// Exact rational for the shortest decimal that round-trips the double, so
// 0.2 becomes 1/5 rather than its binary expansion.
Rational rational_from_double(double value);

// Correctly rounded (mpq_get_d truncates toward zero).
double to_double(const Rational& q);
inline double to_double(double v) { return v; }

std::string to_string(const Rational& q);

}  // namespace carpet
