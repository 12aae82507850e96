#include "oddstop/rational.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>

#include "oddstop/errors.hpp"

namespace oddstop {

std::string format_rational(const Rational& r) {
  if (is_integer(r)) {
    return numerator(r).str();
  }
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

BigInt parse_big_int(std::string_view text) {
  if (text.empty()) {
    throw InputError("empty integer in number literal");
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) {
    throw InputError("sign without digits in number literal");
  }
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw InputError("invalid digit '" + std::string(1, text[i]) +
                        "' in number literal");
    }
    value *= 10;
    value += text[i] - '0';
  }
  return negative ? BigInt(-value) : value;
}

BigInt pow10(std::int64_t e) {
  BigInt p = 1;
  for (std::int64_t i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) {
    throw InputError("empty number literal");
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_big_int(text.substr(0, slash));
    BigInt den = parse_big_int(text.substr(slash + 1));
    if (den == 0) {
      throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }

  // Decimal form: [sign] digits [. digits] [e|E [sign] digits]
  std::string_view mantissa = text;
  std::int64_t exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    BigInt exp_big = parse_big_int(text.substr(e + 1));
    if (exp_big > 4096 || exp_big < -4096) {
      throw InputError("exponent out of range in '" + std::string(text) + "'");
    }
    exponent = exp_big.convert_to<std::int64_t>();
    mantissa = text.substr(0, e);
  }

  std::string digits;
  digits.reserve(mantissa.size());
  std::int64_t frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    digits.push_back(mantissa[0]);
    i = 1;
  }
  for (; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (c == '.') {
      if (seen_point) {
        throw InputError("multiple decimal points in '" + std::string(text) + "'");
      }
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else {
      throw InputError("invalid character '" + std::string(1, c) + "' in '" +
                        std::string(text) + "'");
    }
  }
  if (!seen_digit) {
    throw InputError("no digits in number literal '" + std::string(text) + "'");
  }

  const BigInt scaled = parse_big_int(digits);
  const std::int64_t net = exponent - frac_digits;
  if (net >= 0) {
    return Rational(scaled * pow10(net), 1);
  }
  return Rational(scaled, pow10(-net));
}

}  // namespace oddstop
