#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ramforge {

using BigInt = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den = 1);

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);
bool is_integer(const Rational& x);

BigInt ipow(const BigInt& base, unsigned long exp);
Rational rpow(long base, unsigned long exp);

// p-adic valuation of a nonzero integer.
int valuation(const BigInt& x, unsigned long p);

// Canonical text form: "n" for integers, "n/d" otherwise (d > 0, reduced).
std::string to_string(const Rational& x);
// Accepts "n", "n/d", "-n/d" with optional surrounding spaces.
Rational parse_rational(std::string_view text);

// Exact conversion; throws InputError if the value does not fit.
std::int64_t to_int64(const BigInt& x);
std::int64_t to_int64(const Rational& x);

}  // namespace ramforge
