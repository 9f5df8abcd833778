#include "ramforge/rational.hpp"

#include "ramforge/errors.hpp"

#include <cctype>

namespace ramforge {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rpow(long base, unsigned long exp) { return Rational(ipow(BigInt(base), exp)); }

int valuation(const BigInt& x, unsigned long p) {
  if (x == 0) throw InputError("valuation of zero is infinite");
  BigInt y = abs(x);
  int v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::string to_string(const Rational& x) {
  if (is_integer(x)) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InputError("malformed rational '" + std::string(text) + "'");
    }
    std::string owned(s.front() == '+' ? s.substr(1) : s);
    return BigInt(owned, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::int64_t to_int64(const BigInt& x) {
  if (!x.fits_slong_p()) throw InputError("integer " + x.get_str() + " out of 64-bit range");
  return x.get_si();
}

std::int64_t to_int64(const Rational& x) {
  if (!is_integer(x)) throw InputError("expected an integer, got " + to_string(x));
  return to_int64(x.get_num());
}

}  // namespace ramforge
