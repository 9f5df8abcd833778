#pragma once

// Finite fields F_{p^w} and truncated power series over them.
//
// A series is stored as N coefficients, each a polynomial of degree < w over
// F_p, flattened into one contiguous buffer. All arithmetic is exact; binary
// operations return the smaller of the two truncations.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace ramforge {

class FiniteField;
using FieldRef = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  // Prime field F_p.
  static FieldRef prime(std::uint32_t p);
  // F_p[t]/(modulus); modulus is monic of degree w, coefficients low to high
  // (length w + 1). Irreducibility is verified.
  static FieldRef extension(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const noexcept { return p_; }
  int w() const noexcept { return w_; }
  // Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  bool same_as(const FiniteField& other) const noexcept;

  // Element kernels on spans of length w.
  void add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
           std::span<std::uint32_t> out) const;
  void sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
           std::span<std::uint32_t> out) const;
  void mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
           std::span<std::uint32_t> out) const;
  // Reduces a product polynomial of length 2w - 1 (entries already < p) modulo the modulus.
  void reduce_product(std::span<std::uint64_t> poly, std::span<std::uint32_t> out) const;
  void inverse(std::span<const std::uint32_t> a, std::span<std::uint32_t> out) const;
  void pow(std::span<const std::uint32_t> a, std::uint64_t e, std::span<std::uint32_t> out) const;
  // x -> x^{p^j} with j taken modulo w (negative j is the inverse automorphism).
  void frobenius(std::span<const std::uint32_t> a, long j, std::span<std::uint32_t> out) const;

  std::uint32_t mod(std::uint64_t x) const noexcept { return static_cast<std::uint32_t>(x % p_); }

 private:
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p_;
  int w_;
  std::vector<std::uint32_t> modulus_;
};

void require_same_field(const FieldRef& a, const FieldRef& b);

// A single element of F_{p^w}.
class FFElem {
 public:
  FFElem(FieldRef field, std::vector<std::uint32_t> rep);
  static FFElem zero(FieldRef field);
  static FFElem one(FieldRef field);
  static FFElem from_int(FieldRef field, std::int64_t value);

  const FieldRef& field() const noexcept { return field_; }
  std::span<const std::uint32_t> rep() const noexcept { return rep_; }
  bool is_zero() const noexcept;

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator*(const FFElem& o) const;
  FFElem inverse() const;
  FFElem frobenius(long j) const;

  bool operator==(const FFElem& o) const;

 private:
  FieldRef field_;
  std::vector<std::uint32_t> rep_;
};

class TruncSeries {
 public:
  // All-zero series known modulo X^trunc.
  TruncSeries(FieldRef field, int trunc);

  // Prime-field convenience: coefficients c_0, c_1, ... (missing ones are zero,
  // extra ones beyond trunc are dropped).
  static TruncSeries from_ints(FieldRef field, int trunc, std::initializer_list<std::int64_t> coeffs);
  static TruncSeries from_ints(FieldRef field, int trunc, std::span<const std::int64_t> coeffs);
  static TruncSeries identity(FieldRef field, int trunc);  // X
  static TruncSeries constant(const FFElem& c, int trunc);

  const FieldRef& field() const noexcept { return field_; }
  int trunc() const noexcept { return trunc_; }
  int w() const noexcept { return field_->w(); }

  FFElem coeff(int i) const;
  void set_coeff(int i, const FFElem& c);
  std::span<const std::uint32_t> raw(int i) const;
  std::span<std::uint32_t> raw(int i);
  bool coeff_is_zero(int i) const;
  // First index with a nonzero coefficient, or trunc() if none.
  int valuation() const;

  TruncSeries truncated(int n) const;  // n <= trunc()

  bool operator==(const TruncSeries& o) const;

 private:
  FieldRef field_;
  int trunc_;
  std::vector<std::uint32_t> data_;
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const TruncSeries& a, const FFElem& c);

// outer(inner(X)); inner must have zero constant term.
TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner);
// Evaluates the first `outer.trunc()` coefficients of outer as an exact
// polynomial at inner, working modulo X^out_trunc. Used where the caller knows
// inner^outer.trunc() vanishes modulo X^out_trunc (ring maps between truncated rings).
TruncSeries substitute_polynomial(const TruncSeries& outer, const TruncSeries& inner, int out_trunc);
// h with g(h) = h(g) = X mod X^N; requires c_0 = 0, c_1 != 0.
TruncSeries compositional_inverse(const TruncSeries& g);
TruncSeries frobenius_twist(const TruncSeries& g, long j);

// Composition power g^{∘k}, k >= 0, by binary powering.
TruncSeries compose_power(const TruncSeries& g, std::uint64_t k);

bool is_prime(std::uint64_t n);

}  // namespace ramforge
