#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hyperham {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// C(n, r) for integers; zero when r < 0, n < 0 or r > n.
BigInt binomial(std::int64_t n, std::int64_t r);

// C(n, r) in 64 bits for desk-scale table work. Throws DomainError on overflow.
std::uint64_t small_binomial(int n, int r);

// Generalized binomial x(x-1)...(x-r+1)/r! for rational x.
Rational generalized_binomial(const Rational& x, int r);

Rational power(const Rational& base, unsigned exponent);
BigInt power(const BigInt& base, unsigned exponent);

BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

// Decimal expansion rounded half-up to `digits` fractional digits.
std::string to_decimal(const Rational& x, int digits = 12);

// Accepts "p", "p/q", or a finite decimal such as "0.9" or "-1.25".
Rational parse_rational(std::string_view text);

}  // namespace hyperham
