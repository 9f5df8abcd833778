#pragma once

// Power series over Z_p known modulo (p^P, X^M), and the periodic-point data
// of a dynamical series u(X) = a_0 X + a_1 X^2 + ... with a_0 a 1-unit.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramforge/gfseries.hpp"
#include "ramforge/nottingham.hpp"
#include "ramforge/rational.hpp"

namespace ramforge {

class PadicSeries {
 public:
  // Zero series; every coefficient certified to all P digits.
  PadicSeries(std::uint32_t p, int prec, int trunc);
  static PadicSeries from_coeffs(std::uint32_t p, int prec, int trunc, const std::vector<BigInt>& coeffs);
  static PadicSeries identity(std::uint32_t p, int prec, int trunc);  // X

  std::uint32_t p() const noexcept { return p_; }
  int prec() const noexcept { return prec_; }
  int trunc() const noexcept { return trunc_; }
  std::uint64_t modulus() const noexcept { return mod_; }  // p^P

  std::uint64_t coeff(int i) const { return c_.at(i); }
  void set_coeff(int i, const BigInt& v);
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }

  // Number of p-adic digits of coefficient i that are known (<= prec).
  int certified(int i) const { return cert_.at(i); }
  const std::vector<int>& certified_digits() const noexcept { return cert_; }
  void set_certified(std::vector<int> digits);
  bool fully_certified() const;

  // v_p of coefficient i when it is certified nonzero, else nullopt
  // (the valuation is then only known to be >= certified(i)).
  std::optional<int> valuation(int i) const;

  PadicSeries truncated(int m) const;
  bool operator==(const PadicSeries& o) const;

 private:
  std::uint32_t p_;
  int prec_, trunc_;
  std::uint64_t mod_;
  std::vector<std::uint64_t> c_;
  std::vector<int> cert_;
};

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b);
PadicSeries operator-(const PadicSeries& a, const PadicSeries& b);
PadicSeries operator*(const PadicSeries& a, const PadicSeries& b);

PadicSeries pad_compose(const PadicSeries& outer, const PadicSeries& inner);
PadicSeries pad_iterate(const PadicSeries& u, std::uint64_t k);
TruncSeries reduce_mod_p(const PadicSeries& u);
// Index of the first coefficient that is a p-adic unit; nullopt if it cannot be
// located among the certified coefficients.
std::optional<int> weierstrass_degree(const PadicSeries& f);

// q_n = (u^{p^n} - X)/(u^{p^{n-1}} - X) computed on the X-shifted quotient
// (both sides divided by X first). Coefficient k of the result is certified
// to min(P, floor((M - 1 - w - 1 - k)/w) + 1) digits, w the Weierstrass degree
// of the shifted denominator.
PadicSeries qn_divide(const PadicSeries& u, int n);
// Exact division num/den of X-shifted series with the certification rule above.
PadicSeries series_divide(const PadicSeries& num, const PadicSeries& den);

struct NPSegment {
  Rational slope;  // root valuation is -slope
  int length = 0;
  Rational root_valuation() const { return -slope; }
};

struct NewtonPolygon {
  std::vector<std::pair<int, int>> vertices;
  std::vector<NPSegment> segments;
  std::vector<int> flagged;  // indices whose valuation is only bounded below
  int degree = 0;
};

NewtonPolygon newton_polygon(const PadicSeries& f, int degree);

struct RnValue {
  int n = 0;
  long i_n = 0;
  BigInt r_n;
  std::optional<bool> snbound;  // r_n > d (p^n - 1), when d is known
};

std::vector<RnValue> rn_values(std::uint32_t p, const std::vector<long>& lower, std::optional<BigInt> d = std::nullopt);

struct ExtQuantities {
  BigInt t;  // d! e / d
  bool admissible = false;
  std::string reason;
};

ExtQuantities ext_quantities(long p, long d, long e);
Rational predicted_valuation(long p, const BigInt& d, int n);  // 1/(d p^n)

struct LevelReport {
  int n = 0;
  bool qn_available = false;
  std::string qn_note;
  std::optional<int> wd;
  std::optional<long> expected_wd;  // i_n - i_{n-1}
  std::optional<bool> wd_matches;
  std::optional<NewtonPolygon> polygon;
  std::string polygon_note;
  std::optional<Rational> predicted_valuation;  // 1/(d p^n)
  std::optional<bool> single_segment;
  std::optional<bool> matches_prediction;
  std::optional<int> constant_valuation;
  int expected_constant_valuation = 1;
  std::optional<bool> constant_matches;
  std::optional<Rational> valuation_sum;  // sum of root valuations over the polygon
  std::optional<int> fixed_point_wd;      // wd(u^{p^n} - X)
  std::optional<bool> fixed_points_match; // == i_n + 1
};

struct DynamicsReport {
  std::uint32_t p = 0;
  int prec = 0, trunc = 0, n_max = 0;
  std::vector<Depth> depths;  // for n = 0..n_max; the first uncertified one ends the certified range
  std::vector<long> lower;    // certified prefix
  std::vector<Rational> upper;
  std::string upper_note;
  std::optional<IndexReport> index;
  std::optional<int> fixed_point_wd0;  // wd(u - X), expected i_0 + 1
  std::vector<LevelReport> levels;     // n = 1..n_max
  std::vector<RnValue> rn;
  std::vector<bool> reduction_commutes;  // reduce(u^{p^n}) == reduce(u)^{p^n}, n = 0..n_max
  std::vector<std::string> markers;      // every quantity left uncertified
};

DynamicsReport analyze(const PadicSeries& u, int n_max);

}  // namespace ramforge
