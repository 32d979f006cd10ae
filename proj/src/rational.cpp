#include "hyperham/rational.hpp"

#include "hyperham/errors.hpp"

#include <cctype>
#include <limits>

namespace hyperham {

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt result = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

std::uint64_t small_binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 result = 1;
  for (int i = 0; i < r; ++i) {
    result = result * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw DomainError("binomial C(" + std::to_string(n) + "," + std::to_string(r) +
                        ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

Rational generalized_binomial(const Rational& x, int r) {
  if (r < 0) return 0;
  Rational numerator = 1;
  BigInt factorial = 1;
  for (int i = 0; i < r; ++i) {
    numerator *= (x - i);
    factorial *= (i + 1);
  }
  return numerator / Rational(factorial);
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt power(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt floor_of(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

std::string to_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_decimal(const Rational& x, int digits) {
  const bool negative = x < 0;
  const Rational magnitude = negative ? Rational(-x) : x;
  const BigInt scale = power(BigInt(10), static_cast<unsigned>(digits));
  const BigInt scaled = floor_of(magnitude * Rational(scale) + Rational(1, 2));
  const BigInt whole = scaled / scale;
  const BigInt frac = scaled % scale;
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole.str();
  if (digits > 0) {
    std::string frac_text = frac.str();
    out += '.';
    out.append(static_cast<std::size_t>(digits) - frac_text.size(), '0');
    out += frac_text;
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError(0, "not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view part) -> BigInt {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) fail();
    for (std::size_t j = i; j < part.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(part[j]))) fail();
    }
    BigInt value(std::string(part.substr(part[0] == '+' ? 1 : 0)));
    return value;
  };
  if (slash != std::string_view::npos) {
    const BigInt num = parse_int(text.substr(0, slash));
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  const bool negative = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
  if (whole.empty() && frac.empty()) fail();
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) fail();
  }
  const BigInt whole_value = whole.empty() ? BigInt(0) : parse_int(whole);
  const BigInt frac_value = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
  Rational value = Rational(whole_value) +
                   Rational(frac_value, power(BigInt(10), static_cast<unsigned>(frac.size())));
  return negative ? Rational(-value) : value;
}

}  // namespace hyperham
