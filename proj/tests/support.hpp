#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ramforge/gfseries.hpp"
#include "ramforge/herbrand.hpp"
#include "ramforge/pdyn.hpp"
#include "ramforge/truncation.hpp"

namespace testing {

using namespace ramforge;

inline TruncSeries poly(std::uint32_t p, int trunc, std::initializer_list<std::int64_t> c) {
  return TruncSeries::from_ints(FiniteField::prime(p), trunc, c);
}

inline TruncSeries random_series(const FieldRef& f, int trunc, std::mt19937_64& rng, int from = 0) {
  TruncSeries s(f, trunc);
  std::uniform_int_distribution<std::uint32_t> d(0, f->p() - 1);
  for (int i = from; i < trunc; ++i)
    for (auto& x : s.raw(i)) x = d(rng);
  return s;
}

// Random element of A(k): zero constant term, nonzero linear term.
inline TruncSeries random_unit_series(const FieldRef& f, int trunc, std::mt19937_64& rng, bool one_unit = false) {
  TruncSeries s = random_series(f, trunc, rng, 1);
  if (one_unit) {
    auto r = s.raw(1);
    std::fill(r.begin(), r.end(), 0);
    r[0] = 1;
  } else {
    while (s.coeff_is_zero(1)) s.raw(1)[0] = std::uniform_int_distribution<std::uint32_t>(1, f->p() - 1)(rng);
  }
  return s;
}

// u = (1+X)^{p+1} - 1 over Z_p.
inline PadicSeries cyclotomic(std::uint32_t p, int prec, int trunc) {
  std::vector<BigInt> c(p + 2, 0);
  BigInt b = 1;
  for (std::uint32_t k = 1; k <= p + 1; ++k) {
    b = b * (p + 2 - k) / k;
    c[k] = b;
  }
  return PadicSeries::from_coeffs(p, prec, trunc, c);
}

// Integer upper breaks obeying rules (a)-(c); below pe/(p-1) breaks prime to p
// are preferred, as for genuine extensions.
inline BreakData random_breaks(std::uint32_t p, long e, int n, std::mt19937_64& rng) {
  BreakData bd{p, Rational(e), {}};
  const Rational tau = make_rational(e, static_cast<long>(p) - 1);
  const long top = to_int64(floor(make_rational(static_cast<long>(p) * e, static_cast<long>(p) - 1)));
  auto pick = [&](long lo, long hi) {
    std::vector<long> good;
    for (long b = lo; b <= hi; ++b)
      if (b % static_cast<long>(p) != 0 || b == hi) good.push_back(b);
    return good[rng() % good.size()];
  };
  bd.upper.push_back(Rational(pick(1, top)));
  while (static_cast<int>(bd.upper.size()) < n) {
    const Rational b = bd.upper.back();
    if (b >= tau) bd.upper.push_back(b + e);
    else bd.upper.push_back(Rational(pick(to_int64(ceil(b * p)), top)));
  }
  return bd;
}

inline FieldRef f4() { return FiniteField::extension(2, {1, 1, 1}); }  // F_2[t]/(t^2+t+1)

// Random morphism src -> (field, e2) with a random admissible r, twist and unit eta.
inline TruncMorphism random_morphism(const TruncObject& src, int e2, std::mt19937_64& rng) {
  const int rmin = (e2 + src.e - 1) / src.e;
  const int r = rmin + static_cast<int>(rng() % 3);
  const TruncObject dst = make_object(src.field, e2);
  TruncSeries eta = random_series(src.field, e2, rng);
  while (eta.coeff_is_zero(0)) eta.raw(0)[0] = 1 + static_cast<std::uint32_t>(rng() % (src.field->p() - 1));
  return TruncMorphism::from_eta(src, dst, r, static_cast<long>(rng() % 5), eta);
}

}  // namespace testing
