#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hyperchrom {

using BigInt = mpz_class;
using Rational = mpq_class;

// p/q in lowest terms; mpq_class(p, q) alone leaves the value uncanonicalized.
Rational frac(const BigInt& p, const BigInt& q);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt power(const BigInt& base, std::uint64_t exp);
Rational power(const Rational& base, std::uint64_t exp);

// "p/q" or "p" (also accepts decimals like "0.125").
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);
double to_double(const Rational& q);

// Decimal rendering with a fixed number of significant digits, for reports only.
std::string to_decimal(const Rational& q, int digits = 10);

} // namespace hyperchrom
