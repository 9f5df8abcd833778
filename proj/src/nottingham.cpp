#include "ramforge/nottingham.hpp"

#include <algorithm>

namespace ramforge {

std::string to_string(const Depth& d) {
  return d.certified ? std::to_string(d.value) : "at_least(" + std::to_string(d.value) + ")";
}

std::string to_string(IndexStatus s) {
  switch (s) {
    case IndexStatus::determined: return "determined";
    case IndexStatus::candidate: return "candidate";
    case IndexStatus::undetermined: return "undetermined";
  }
  return "?";
}

void require_in_A(const TruncSeries& g) {
  if (g.trunc() < 2) throw PrecisionError("series must be known at least modulo X^2", "trunc");
  if (!g.coeff_is_zero(0)) throw InputError("series has a nonzero constant term");
  if (g.coeff_is_zero(1)) throw InputError("series has a vanishing linear coefficient");
}

void require_in_N(const TruncSeries& g) {
  require_in_A(g);
  if (!(g.coeff(1) == FFElem::one(g.field()))) throw InputError("series is not of the form X + higher terms");
}

Depth depth(const TruncSeries& g) {
  require_in_A(g);
  // (g - X)/X has coefficients c_1 - 1, c_2, ..., c_{N-1}
  const int n = g.trunc();
  if (!(g.coeff(1) == FFElem::one(g.field()))) return Depth::exact(0);
  for (int i = 2; i < n; ++i)
    if (!g.coeff_is_zero(i)) return Depth::exact(i - 1);
  return Depth::at_least(n - 1);
}

TruncSeries p_iterate(const TruncSeries& g, int n) {
  if (n < 0) throw InputError("iterate exponent must be nonnegative");
  require_in_A(g);
  TruncSeries cur = g;
  for (int i = 0; i < n; ++i) cur = compose_power(cur, g.field()->p());
  return cur;
}

std::vector<long> certified_lower_breaks(const TruncSeries& g, int n_max) {
  require_in_N(g);
  std::vector<long> out;
  TruncSeries cur = g;
  for (int n = 0; n <= n_max; ++n) {
    const Depth d = depth(cur);
    if (!d.certified) break;
    out.push_back(d.value);
    if (n < n_max) cur = compose_power(cur, g.field()->p());
  }
  return out;
}

std::vector<long> lower_breaks(const TruncSeries& g, int n_max) {
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  auto out = certified_lower_breaks(g, n_max);
  if (static_cast<int>(out.size()) <= n_max) {
    const int level = static_cast<int>(out.size());
    throw PrecisionError("depth of the p^" + std::to_string(level) + "-th iterate is not certified modulo X^" +
                             std::to_string(g.trunc()) + "; retry with a larger truncation",
                         "lower_break", level);
  }
  return out;
}

std::vector<Rational> upper_from_lower(std::uint32_t p, const std::vector<long>& lower) {
  std::vector<Rational> out;
  if (lower.empty()) return out;
  for (std::size_t n = 1; n < lower.size(); ++n)
    if (lower[n] <= lower[n - 1]) throw InputError("lower breaks must be strictly increasing");
  out.push_back(make_rational(lower[0]));
  BigInt pn = 1;
  for (std::size_t n = 1; n < lower.size(); ++n) {
    pn *= p;
    const BigInt diff = BigInt(lower[n]) - BigInt(lower[n - 1]);
    if (diff % pn != 0)
      throw SenViolation("i_" + std::to_string(n) + " - i_" + std::to_string(n - 1) + " = " + diff.get_str() +
                             " is not divisible by p^" + std::to_string(n),
                         static_cast<int>(n));
    out.push_back(out.back() + Rational(diff / pn));
  }
  return out;
}

RamSequence ram_sequence(const TruncSeries& g, int n_max) {
  RamSequence r;
  r.p = g.field()->p();
  r.lower = lower_breaks(g, n_max);
  r.upper = upper_from_lower(r.p, r.lower);
  r.certified_to = g.trunc();
  return r;
}

IndexReport index_of(std::uint32_t p, const std::vector<Rational>& upper) {
  if (upper.size() < 2) throw InputError("index needs at least two upper breaks");
  for (std::size_t n = 1; n < upper.size(); ++n)
    if (upper[n] <= upper[n - 1]) throw InputError("upper breaks must be strictly increasing");
  IndexReport rep;
  const int len = static_cast<int>(upper.size());
  rep.n_max = len - 1;
  for (int n = 1; n < len; ++n) rep.evidence.push_back(upper[n] - upper[n - 1]);

  auto multiplicative = [&](int n) { return upper[n] >= Rational(p) * upper[n - 1]; };

  // start of the maximal run of equal differences ending at the last one
  const Rational last = rep.evidence.back();
  int stab = len - 1;
  while (stab > 1 && rep.evidence[stab - 2] == last) --stab;

  bool all_mult = true;
  for (int n = 1; n < len; ++n) all_mult = all_mult && multiplicative(n);
  if (all_mult && len - stab < 2) {
    rep.status = IndexStatus::undetermined;
    return rep;
  }
  // before the constant run every step must be multiplicative
  for (int n = 1; n < stab; ++n)
    if (!multiplicative(n))
      throw InputError("upper breaks violate the Z_p-extension pattern at n = " + std::to_string(n) +
                       ": neither b_n >= p b_{n-1} nor b_n - b_{n-1} = " + to_string(last));
  rep.d = last;
  rep.stabilized_at = stab;
  const bool threshold_ok = upper[stab - 1] >= last / Rational(p - 1);
  rep.status = (len - stab >= 2 && threshold_ok) ? IndexStatus::determined : IndexStatus::candidate;
  return rep;
}

TruncSeries unit_part(const TruncSeries& g) {
  if (!g.coeff_is_zero(0)) throw InputError("series has a nonzero constant term");
  if (g.trunc() < 2) throw PrecisionError("unit part needs the series modulo X^2 at least", "trunc");
  TruncSeries h(g.field(), g.trunc() - 1);
  for (int i = 0; i + 1 < g.trunc(); ++i) std::copy(g.raw(i + 1).begin(), g.raw(i + 1).end(), h.raw(i).begin());
  return h;
}

bool series_agree_mod(const TruncSeries& a, const TruncSeries& b, int m) {
  require_same_field(a.field(), b.field());
  if (m < 0) throw InputError("modulus exponent must be nonnegative");
  if (m > a.trunc() || m > b.trunc())
    throw PrecisionError("agreement modulo X^" + std::to_string(m) + " exceeds a truncation", "trunc");
  for (int i = 0; i < m; ++i)
    if (!std::equal(a.raw(i).begin(), a.raw(i).end(), b.raw(i).begin())) return false;
  return true;
}

namespace {

// Elements X, g, g^2, ... of the cyclic group generated by g modulo X^{m+1}.
std::vector<TruncSeries> cyclic_orbit(const TruncSeries& g) {
  const TruncSeries id = TruncSeries::identity(g.field(), g.trunc());
  std::vector<TruncSeries> out{id};
  TruncSeries cur = g;
  while (!(cur == id)) {
    out.push_back(cur);
    cur = compose(cur, g);
  }
  return out;
}

}  // namespace

bool subgroup_equal_mod(const TruncSeries& g, const TruncSeries& g2, int m) {
  require_same_field(g.field(), g2.field());
  if (m < 1) throw InputError("comparison level m must be >= 1");
  if (g.trunc() <= m || g2.trunc() <= m)
    throw PrecisionError("subgroup comparison modulo X^" + std::to_string(m + 1) + " needs truncation > " +
                             std::to_string(m),
                         "trunc");
  const TruncSeries a = g.truncated(m + 1), b = g2.truncated(m + 1);
  require_in_N(a);
  require_in_N(b);
  // the image of a Z_p-closure is cyclic of p-power order; compare orders, then membership
  const TruncSeries id = TruncSeries::identity(a.field(), m + 1);
  auto order_exponent = [&](TruncSeries x) {
    int j = 0;
    while (!(x == id)) {
      x = compose_power(x, a.field()->p());
      ++j;
    }
    return j;
  };
  if (order_exponent(a) != order_exponent(b)) return false;
  const auto orbit = cyclic_orbit(a);
  return std::any_of(orbit.begin(), orbit.end(), [&](const TruncSeries& x) { return x == b; });
}

TruncSeries conjugate(const TruncSeries& h, const TruncSeries& g) {
  require_in_A(h);
  require_in_A(g);
  return compose(compose(h, g), compositional_inverse(h));
}

}  // namespace ramforge
