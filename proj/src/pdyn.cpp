#include "ramforge/pdyn.hpp"

#include <algorithm>
#include <limits>

#include "ramforge/errors.hpp"

namespace ramforge {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 addmod(u64 a, u64 b, u64 m) { u64 s = a + b; return s >= m ? s - m : s; }
u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

u64 reduce_big(const BigInt& v, u64 m) {
  BigInt r = v % BigInt(std::to_string(m));
  if (r < 0) r += BigInt(std::to_string(m));
  return std::stoull(r.get_str());
}

// Inverse of a unit modulo m = p^P.
u64 inv_unit(u64 a, u64 m) {
  BigInt r;
  const BigInt A(std::to_string(a)), M(std::to_string(m));
  if (mpz_invert(r.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t()) == 0) throw InputError("coefficient is not a p-adic unit");
  return std::stoull(r.get_str());
}

// out[k] = sum_{i+j=k} a_i b_j mod m for k < nout.
void mul_raw(const u64* a, int na, const u64* b, int nb, u64* out, int nout, u64 m) {
  std::vector<u128> acc(nout, 0);
  const bool lazy = m <= (u64{1} << 32);
  for (int i = 0; i < na && i < nout; ++i) {
    const u64 ai = a[i];
    if (!ai) continue;
    const int jmax = std::min(nb, nout - i);
    u128* dst = acc.data() + i;
    if (lazy) {
      for (int j = 0; j < jmax; ++j) dst[j] += ai * b[j];
    } else {
      for (int j = 0; j < jmax; ++j) dst[j] += static_cast<u128>(ai) * b[j] % m;
    }
  }
  for (int k = 0; k < nout; ++k) out[k] = static_cast<u64>(acc[k] % m);
}

std::vector<int> prefix_min(std::vector<int> c) {
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = std::min(c[i], c[i - 1]);
  return c;
}

void require_compatible(const PadicSeries& a, const PadicSeries& b) {
  if (a.p() != b.p()) throw InputError("p-adic series over different primes");
}

// Combined certification for ring operations: conservative prefix minimum.
std::vector<int> joint_cert(const PadicSeries& a, const PadicSeries& b, int n, int prec) {
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = std::min({a.certified(i), b.certified(i), prec});
  return prefix_min(std::move(c));
}

PadicSeries with_prec(const PadicSeries& a, int prec, int trunc) {
  PadicSeries out(a.p(), prec, trunc);
  std::vector<int> cert(trunc);
  for (int i = 0; i < trunc; ++i) {
    out.set_coeff(i, BigInt(std::to_string(a.coeff(i) % out.modulus())));
    cert[i] = std::min(a.certified(i), prec);
  }
  out.set_certified(std::move(cert));
  return out;
}

// f/X; the constant term must vanish.
PadicSeries shift_down(const PadicSeries& f) {
  if (f.coeff(0) != 0) throw InputError("series does not vanish at 0");
  if (f.trunc() < 2) throw PrecisionError("series too short to divide by X", "trunc");
  PadicSeries out(f.p(), f.prec(), f.trunc() - 1);
  std::vector<int> cert(f.trunc() - 1);
  for (int i = 0; i + 1 < f.trunc(); ++i) {
    out.set_coeff(i, BigInt(std::to_string(f.coeff(i + 1))));
    cert[i] = f.certified(i + 1);
  }
  out.set_certified(std::move(cert));
  return out;
}

std::string digits_note(int level, const std::string& what) { return what + " at level " + std::to_string(level); }

}  // namespace

// ---------------------------------------------------------------- PadicSeries

PadicSeries::PadicSeries(std::uint32_t p, int prec, int trunc) : p_(p), prec_(prec), trunc_(trunc), mod_(1) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (prec < 1) throw InputError("p-adic precision must be >= 1");
  if (trunc < 1) throw InputError("series truncation must be >= 1");
  for (int i = 0; i < prec; ++i) {
    if (mod_ > (std::numeric_limits<u64>::max() >> 2) / p) throw InputError("p^P must stay below 2^62");
    mod_ *= p;
  }
  c_.assign(trunc, 0);
  cert_.assign(trunc, prec);
}

PadicSeries PadicSeries::from_coeffs(std::uint32_t p, int prec, int trunc, const std::vector<BigInt>& coeffs) {
  PadicSeries s(p, prec, trunc);
  for (int i = 0; i < trunc && i < static_cast<int>(coeffs.size()); ++i) s.set_coeff(i, coeffs[i]);
  return s;
}

PadicSeries PadicSeries::identity(std::uint32_t p, int prec, int trunc) {
  PadicSeries s(p, prec, trunc);
  if (trunc > 1) s.c_[1] = 1;
  return s;
}

void PadicSeries::set_coeff(int i, const BigInt& v) { c_.at(i) = reduce_big(v, mod_); }

void PadicSeries::set_certified(std::vector<int> digits) {
  if (static_cast<int>(digits.size()) != trunc_) throw InputError("certification vector has the wrong length");
  for (auto& d : digits) d = std::clamp(d, 0, prec_);
  cert_ = std::move(digits);
}

bool PadicSeries::fully_certified() const {
  return std::all_of(cert_.begin(), cert_.end(), [&](int d) { return d == prec_; });
}

std::optional<int> PadicSeries::valuation(int i) const {
  u64 c = c_.at(i);
  int v = 0;
  while (v < cert_[i] && c % p_ == 0) {
    c /= p_;
    ++v;
  }
  if (v >= cert_[i]) return std::nullopt;
  return v;
}

PadicSeries PadicSeries::truncated(int m) const {
  if (m < 1 || m > trunc_) throw InputError("cannot truncate a p-adic series to " + std::to_string(m) + " terms");
  PadicSeries s(p_, prec_, m);
  std::copy_n(c_.begin(), m, s.c_.begin());
  std::copy_n(cert_.begin(), m, s.cert_.begin());
  return s;
}

bool PadicSeries::operator==(const PadicSeries& o) const {
  return p_ == o.p_ && prec_ == o.prec_ && trunc_ == o.trunc_ && c_ == o.c_ && cert_ == o.cert_;
}

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b) {
  require_compatible(a, b);
  const int n = std::min(a.trunc(), b.trunc()), P = std::min(a.prec(), b.prec());
  PadicSeries out(a.p(), P, n);
  const u64 m = out.modulus();
  for (int i = 0; i < n; ++i) out.set_coeff(i, BigInt(std::to_string(addmod(a.coeff(i) % m, b.coeff(i) % m, m))));
  std::vector<int> cert(n);
  for (int i = 0; i < n; ++i) cert[i] = std::min({a.certified(i), b.certified(i), P});
  out.set_certified(std::move(cert));
  return out;
}

PadicSeries operator-(const PadicSeries& a, const PadicSeries& b) {
  require_compatible(a, b);
  const int n = std::min(a.trunc(), b.trunc()), P = std::min(a.prec(), b.prec());
  PadicSeries out(a.p(), P, n);
  const u64 m = out.modulus();
  for (int i = 0; i < n; ++i) out.set_coeff(i, BigInt(std::to_string(submod(a.coeff(i) % m, b.coeff(i) % m, m))));
  std::vector<int> cert(n);
  for (int i = 0; i < n; ++i) cert[i] = std::min({a.certified(i), b.certified(i), P});
  out.set_certified(std::move(cert));
  return out;
}

PadicSeries operator*(const PadicSeries& a, const PadicSeries& b) {
  require_compatible(a, b);
  const int n = std::min(a.trunc(), b.trunc()), P = std::min(a.prec(), b.prec());
  PadicSeries out(a.p(), P, n);
  const u64 m = out.modulus();
  std::vector<u64> ra(n), rb(n), ro(n);
  for (int i = 0; i < n; ++i) {
    ra[i] = a.coeff(i) % m;
    rb[i] = b.coeff(i) % m;
  }
  mul_raw(ra.data(), n, rb.data(), n, ro.data(), n, m);
  for (int i = 0; i < n; ++i) out.set_coeff(i, BigInt(std::to_string(ro[i])));
  out.set_certified(joint_cert(a, b, n, P));
  return out;
}

PadicSeries pad_compose(const PadicSeries& outer, const PadicSeries& inner) {
  require_compatible(outer, inner);
  if (inner.coeff(0) != 0) throw InputError("inner series of a composition must have zero constant term");
  const int n = std::min(outer.trunc(), inner.trunc()), P = std::min(outer.prec(), inner.prec());
  PadicSeries out(outer.p(), P, n);
  const u64 m = out.modulus();
  std::vector<u64> ro(n), ri(n);
  for (int i = 0; i < n; ++i) {
    ro[i] = outer.coeff(i) % m;
    ri[i] = inner.coeff(i) % m;
  }
  // Horner; the k-th accumulator is needed modulo X^{n-k}
  std::vector<u64> acc{ro[n - 1]}, next(n);
  for (int k = n - 2; k >= 0; --k) {
    const int len = n - k;
    mul_raw(ri.data(), len, acc.data(), len - 1, next.data(), len, m);
    next[0] = addmod(next[0], ro[k], m);
    acc.assign(next.begin(), next.begin() + len);
  }
  for (int i = 0; i < n; ++i) out.set_coeff(i, BigInt(std::to_string(acc[i])));
  out.set_certified(joint_cert(outer, inner, n, P));
  return out;
}

PadicSeries pad_iterate(const PadicSeries& u, std::uint64_t k) {
  if (u.coeff(0) != 0) throw InputError("iterated series must have zero constant term");
  PadicSeries result = PadicSeries::identity(u.p(), u.prec(), u.trunc());
  result.set_certified(u.certified_digits());
  PadicSeries base = u;
  while (k) {
    if (k & 1) result = pad_compose(result, base);
    k >>= 1;
    if (k) base = pad_compose(base, base);
  }
  return result;
}

TruncSeries reduce_mod_p(const PadicSeries& u) {
  int n = 0;
  while (n < u.trunc() && u.certified(n) >= 1) ++n;
  if (n == 0) throw PrecisionError("no coefficient is known modulo p", "reduction");
  const FieldRef F = FiniteField::prime(u.p());
  std::vector<std::int64_t> c(n);
  for (int i = 0; i < n; ++i) c[i] = static_cast<std::int64_t>(u.coeff(i) % u.p());
  return TruncSeries::from_ints(F, n, c);
}

std::optional<int> weierstrass_degree(const PadicSeries& f) {
  for (int k = 0; k < f.trunc(); ++k) {
    if (f.certified(k) < 1) return std::nullopt;
    if (f.coeff(k) % f.p() != 0) return k;
  }
  return std::nullopt;
}

PadicSeries series_divide(const PadicSeries& num, const PadicSeries& den) {
  require_compatible(num, den);
  const int Mp = std::min(num.trunc(), den.trunc());
  const int P = std::min(num.prec(), den.prec());
  const auto wopt = weierstrass_degree(den.truncated(Mp));
  if (!wopt) throw PrecisionError("Weierstrass degree of the denominator is not determined below X^" + std::to_string(Mp), "wd");
  const int w = *wopt;
  const int T = Mp - w;
  const PadicSeries N = with_prec(num, P, Mp), D = with_prec(den, P, Mp);
  const u64 m = N.modulus();

  std::vector<u64> dlow(w), dhigh(T), inv(T), hn(T);
  for (int i = 0; i < w; ++i) dlow[i] = D.coeff(i);
  for (int i = 0; i < T; ++i) {
    dhigh[i] = D.coeff(i + w);
    hn[i] = N.coeff(i + w);
  }
  const u64 inv0 = inv_unit(dhigh[0], m);
  inv[0] = inv0;
  for (int k = 1; k < T; ++k) {
    u128 s = 0;
    for (int j = 1; j <= k; ++j) s += static_cast<u128>(mulmod(dhigh[j], inv[k - j], m));
    inv[k] = mulmod(submod(0, static_cast<u64>(s % m), m), inv0, m);
  }

  std::vector<u64> q(T), prod(Mp), rhs(T);
  mul_raw(hn.data(), T, inv.data(), T, q.data(), T, m);
  for (int it = 0; it < P + 1 && w > 0; ++it) {
    mul_raw(q.data(), T, dlow.data(), w, prod.data(), Mp, m);
    for (int k = 0; k < T; ++k) rhs[k] = submod(hn[k], prod[k + w], m);
    mul_raw(rhs.data(), T, inv.data(), T, q.data(), T, m);
  }

  std::vector<int> cert(T);
  const int in_cert = std::min(*std::min_element(N.certified_digits().begin(), N.certified_digits().end()),
                               *std::min_element(D.certified_digits().begin(), D.certified_digits().end()));
  for (int k = 0; k < T; ++k) cert[k] = std::min(in_cert, w == 0 ? P : std::min(P, (T - 1 - k) / w + 1));

  // the part below X^w must cancel: it is what exact divisibility means
  if (w > 0) {
    mul_raw(q.data(), T, dlow.data(), w, prod.data(), Mp, m);
    int qmin = P;
    for (int k = 0; k < w; ++k) {
      qmin = std::min(qmin, k < T ? cert[k] : 0);
      const int digits = std::min({P, qmin + 1, N.certified(k)});
      u64 pd = 1;
      for (int i = 0; i < digits; ++i) pd *= num.p();
      const u64 rem = submod(N.coeff(k), prod[k], m);
      if (rem % pd != 0)
        throw InputError("division is not exact: remainder coefficient " + std::to_string(k) + " is nonzero modulo p^" +
                         std::to_string(digits));
    }
  }

  PadicSeries out(num.p(), P, T);
  for (int k = 0; k < T; ++k) out.set_coeff(k, BigInt(std::to_string(q[k])));
  out.set_certified(std::move(cert));
  return out;
}

PadicSeries qn_divide(const PadicSeries& u, int n) {
  if (n < 1) throw InputError("q_n needs n >= 1");
  std::uint64_t pn1 = 1;
  for (int i = 0; i + 1 < n; ++i) pn1 *= u.p();
  const PadicSeries X = PadicSeries::identity(u.p(), u.prec(), u.trunc());
  const PadicSeries lower = pad_iterate(u, pn1);
  const PadicSeries upper = pad_iterate(lower, u.p());
  return series_divide(shift_down(upper - X), shift_down(lower - X));
}

NewtonPolygon newton_polygon(const PadicSeries& f, int degree) {
  if (degree < 1 || degree >= f.trunc()) throw InputError("polygon degree must satisfy 1 <= degree < truncation");
  NewtonPolygon np;
  np.degree = degree;
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= degree; ++i) {
    const auto v = f.valuation(i);
    if (v) pts.emplace_back(i, *v);
    else np.flagged.push_back(i);
  }
  if (pts.empty() || pts.front().first != 0 || pts.back().first != degree)
    throw PrecisionError("an endpoint coefficient of the polygon is zero modulo its certified precision", "newton_polygon");
  // lower hull, monotone chain; collinear points are dropped
  std::vector<std::pair<int, int>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                         static_cast<long>(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  np.vertices = hull;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const int len = hull[i].first - hull[i - 1].first;
    np.segments.push_back({make_rational(hull[i].second - hull[i - 1].second, len), len});
  }
  // a coefficient known only to be >= c_i in valuation must not be able to dip below the hull
  for (int i : np.flagged) {
    std::size_t s = 0;
    while (s + 1 < hull.size() && hull[s + 1].first < i) ++s;
    const Rational at = Rational(hull[s].second) + np.segments[s].slope * (i - hull[s].first);
    if (Rational(f.certified(i)) < at)
      throw PrecisionError("coefficient " + std::to_string(i) + " is zero modulo p^" + std::to_string(f.certified(i)) +
                               " and may lie below the polygon",
                           "newton_polygon", i);
  }
  return np;
}

std::vector<RnValue> rn_values(std::uint32_t p, const std::vector<long>& lower, std::optional<BigInt> d) {
  std::vector<RnValue> out;
  for (std::size_t n = 0; n < lower.size(); ++n) {
    RnValue v;
    v.n = static_cast<int>(n);
    v.i_n = lower[n];
    v.r_n = ceil(make_rational(BigInt(p - 1) * lower[n], BigInt(p)));
    if (d) v.snbound = v.r_n > *d * (ipow(BigInt(p), n) - 1);
    out.push_back(std::move(v));
  }
  return out;
}

ExtQuantities ext_quantities(long p, long d, long e) {
  if (d < 1 || e < 1) throw InputError("d and e must be positive");
  ExtQuantities q;
  BigInt fact = 1;
  for (long i = 2; i < d; ++i) fact *= i;
  q.t = fact * e;  // d! e / d = (d-1)! e
  if (p <= 3) q.reason = "needs p > 3";
  else if (d > p - 2) q.reason = "needs d <= p - 2";
  else if (e > p - 1) q.reason = "needs e <= p - 1";
  q.admissible = q.reason.empty();
  return q;
}

Rational predicted_valuation(long p, const BigInt& d, int n) {
  return make_rational(BigInt(1), d * ipow(BigInt(p), static_cast<unsigned long>(n)));
}

DynamicsReport analyze(const PadicSeries& u, int n_max) {
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  if (u.trunc() < 2) throw PrecisionError("u must be known at least modulo X^2", "trunc");
  if (u.coeff(0) != 0) throw InputError("u(0) must be 0");
  if (u.coeff(1) % u.p() != 1) throw InputError("u'(0) must be a 1-unit");
  if (u == PadicSeries::identity(u.p(), u.prec(), u.trunc()))
    throw InputError("u(X) = X: every depth is infinite and the generated group is not isomorphic to Z_p");

  DynamicsReport rep;
  rep.p = u.p();
  rep.prec = u.prec();
  rep.trunc = u.trunc();
  rep.n_max = n_max;
  const std::uint32_t p = u.p();

  std::vector<PadicSeries> U{u};
  for (int n = 1; n <= n_max; ++n) U.push_back(pad_iterate(U.back(), p));
  const PadicSeries X = PadicSeries::identity(p, u.prec(), u.trunc());

  const TruncSeries ubar = reduce_mod_p(u);
  bool certified = true;
  for (int n = 0; n <= n_max; ++n) {
    const TruncSeries red = reduce_mod_p(U[n]);
    rep.reduction_commutes.push_back(red == p_iterate(ubar, n));
    const Depth d = depth(red);
    rep.depths.push_back(d);
    if (!d.certified) rep.markers.push_back("depth of u^{p^" + std::to_string(n) + "}: " + to_string(d));
    if (certified && d.certified) rep.lower.push_back(d.value);
    else certified = false;
  }

  try {
    rep.upper = upper_from_lower(p, rep.lower);
  } catch (const SenViolation& ex) {
    rep.upper_note = ex.what();
    rep.markers.push_back(std::string("upper breaks: ") + ex.what());
  }
  std::optional<BigInt> d;
  if (rep.upper.size() >= 2) {
    try {
      rep.index = index_of(p, rep.upper);
      if (rep.index->status == IndexStatus::determined && is_integer(*rep.index->d)) d = floor(*rep.index->d);
      else rep.markers.push_back("index: " + to_string(rep.index->status));
    } catch (const InputError& ex) {
      rep.markers.push_back(std::string("index: ") + ex.what());
    }
  } else {
    rep.markers.push_back("index: fewer than two certified upper breaks");
  }

  rep.fixed_point_wd0 = weierstrass_degree(u - X);
  if (!rep.fixed_point_wd0) rep.markers.push_back("wd(u - X) undetermined");

  for (int n = 1; n <= n_max; ++n) {
    LevelReport lv;
    lv.n = n;
    if (n < static_cast<int>(rep.lower.size())) lv.expected_wd = rep.lower[n] - rep.lower[n - 1];
    lv.fixed_point_wd = weierstrass_degree(U[n] - X);
    if (lv.fixed_point_wd && n < static_cast<int>(rep.lower.size()))
      lv.fixed_points_match = *lv.fixed_point_wd == rep.lower[n] + 1;
    if (d) lv.predicted_valuation = predicted_valuation(p, *d, n);
    try {
      const PadicSeries q = series_divide(shift_down(U[n] - X), shift_down(U[n - 1] - X));
      lv.qn_available = true;
      lv.wd = weierstrass_degree(q);
      lv.constant_valuation = q.valuation(0);
      if (lv.constant_valuation) lv.constant_matches = *lv.constant_valuation == lv.expected_constant_valuation;
      else rep.markers.push_back(digits_note(n, "constant term of q_n is zero modulo its certified precision"));
      if (lv.wd && lv.expected_wd) lv.wd_matches = *lv.wd == *lv.expected_wd;
      if (!lv.wd) rep.markers.push_back(digits_note(n, "Weierstrass degree of q_n undetermined"));
      if (lv.wd && *lv.wd >= 1) {
        try {
          lv.polygon = newton_polygon(q, *lv.wd);
          lv.single_segment = lv.polygon->segments.size() == 1;
          Rational sum = 0;
          for (const auto& s : lv.polygon->segments) sum += s.root_valuation() * s.length;
          lv.valuation_sum = sum;
          if (lv.predicted_valuation)
            lv.matches_prediction = *lv.single_segment && lv.polygon->segments[0].root_valuation() == *lv.predicted_valuation;
        } catch (const PrecisionError& ex) {
          lv.polygon_note = ex.what();
          rep.markers.push_back(digits_note(n, std::string("Newton polygon of q_n: ") + ex.what()));
        }
      }
    } catch (const PrecisionError& ex) {
      lv.qn_note = ex.what();
      rep.markers.push_back(digits_note(n, std::string("q_n: ") + ex.what()));
    }
    rep.levels.push_back(std::move(lv));
  }
  rep.rn = rn_values(p, rep.lower, d);
  return rep;
}

}  // namespace ramforge
