#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace oddstop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "n/d" for proper fractions, plain "n" for integers. Lossless either way.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

// Accepts "n/d", plain integers, and decimal strings with an optional
// exponent ("0.251", "-3", "1e-3", "2.5e2"). The conversion is exact.
Rational parse_rational(std::string_view text);

}  // namespace oddstop
