#include "ramforge/gfseries.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

#include "ramforge/errors.hpp"

namespace ramforge {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // dense, low to high, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  // f is monic
  while (a.size() > df) {
    const u64 c = a.back();
    const std::size_t shift = a.size() - 1 - df;
    if (c != 0) {
      for (std::size_t j = 0; j < df; ++j) a[shift + j] = (a[shift + j] + (p - f[j]) * c % p) % p;
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<u128>(a[i] * b[j]);
  Poly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % p);
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly a, u64 e, const Poly& f, u64 p) {
  Poly r{1};
  a = poly_mod(std::move(a), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, p);
    e >>= 1;
    if (e) a = poly_mulmod(a, a, f, p);
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) {
  // p prime, a != 0
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<u64>(t);
}

// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> poly_divmod(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) return {{}, a};
  const u64 lead_inv = inv_mod(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const u64 c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p - b[j]) * c % p) % p;
    trim(a);
  }
  return {q, a};
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// X^{p^k} mod f.
Poly frobenius_power_of_x(const Poly& f, u64 p, int k) {
  Poly x{0, 1};
  x = poly_mod(x, f, p);
  for (int i = 0; i < k; ++i) x = poly_powmod(x, p, f, p);
  return x;
}

bool rabin_irreducible(const Poly& f, u64 p) {
  const int w = static_cast<int>(f.size()) - 1;
  const Poly x = poly_mod(Poly{0, 1}, f, p);
  if (poly_sub(frobenius_power_of_x(f, p, w), x, p).size() != 0) return false;
  for (u64 q : prime_factors(static_cast<u64>(w))) {
    const Poly h = poly_sub(frobenius_power_of_x(f, p, w / static_cast<int>(q)), x, p);
    if (poly_gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- FiniteField

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), w_(modulus.empty() ? 1 : static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {}

FieldRef FiniteField::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  return FieldRef(new FiniteField(p, {}));
}

FieldRef FiniteField::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (p >= (1u << 31) || !is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  if (modulus.size() < 2) throw InputError("field modulus must have degree >= 1");
  if (modulus.back() != 1) throw InputError("field modulus must be monic");
  for (auto c : modulus)
    if (c >= p) throw InputError("field modulus coefficients must lie in [0, p)");
  if (modulus.size() == 2) return prime(p);
  Poly f(modulus.begin(), modulus.end());
  if (!rabin_irreducible(f, p)) throw InputError("field modulus is not irreducible over F_" + std::to_string(p));
  return FieldRef(new FiniteField(p, std::move(modulus)));
}

bool FiniteField::same_as(const FiniteField& other) const noexcept {
  return this == &other || (p_ == other.p_ && w_ == other.w_ && modulus_ == other.modulus_);
}

void require_same_field(const FieldRef& a, const FieldRef& b) {
  if (!a || !b || !a->same_as(*b)) throw FieldMismatch();
}

void FiniteField::add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::span<std::uint32_t> out) const {
  for (int i = 0; i < w_; ++i) {
    u64 s = static_cast<u64>(a[i]) + b[i];
    out[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
}

void FiniteField::sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::span<std::uint32_t> out) const {
  for (int i = 0; i < w_; ++i) {
    u64 s = static_cast<u64>(a[i]) + p_ - b[i];
    out[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
}

void FiniteField::reduce_product(std::span<std::uint64_t> poly, std::span<std::uint32_t> out) const {
  const int w = w_;
  for (int i = static_cast<int>(poly.size()) - 1; i >= w; --i) {
    const u64 c = poly[i] % p_;
    if (c == 0) continue;
    for (int j = 0; j < w; ++j) poly[i - w + j] = (poly[i - w + j] + (p_ - modulus_[j]) * c) % p_;
    poly[i] = 0;
  }
  for (int i = 0; i < w; ++i) out[i] = static_cast<std::uint32_t>(poly[i] % p_);
}

void FiniteField::mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::span<std::uint32_t> out) const {
  if (w_ == 1) {
    out[0] = static_cast<std::uint32_t>(static_cast<u64>(a[0]) * b[0] % p_);
    return;
  }
  std::vector<u64> prod(2 * w_ - 1, 0);
  for (int i = 0; i < w_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < w_; ++j) prod[i + j] = (prod[i + j] + static_cast<u64>(a[i]) * b[j]) % p_;
  }
  reduce_product(prod, out);
}

void FiniteField::pow(std::span<const std::uint32_t> a, std::uint64_t e, std::span<std::uint32_t> out) const {
  std::vector<std::uint32_t> base(a.begin(), a.end()), r(w_, 0), tmp(w_);
  r[0] = 1;
  while (e) {
    if (e & 1) {
      mul(r, base, tmp);
      r = tmp;
    }
    e >>= 1;
    if (e) {
      mul(base, base, tmp);
      base = tmp;
    }
  }
  std::copy(r.begin(), r.end(), out.begin());
}

void FiniteField::inverse(std::span<const std::uint32_t> a, std::span<std::uint32_t> out) const {
  if (std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; }))
    throw InputError("zero has no multiplicative inverse");
  if (w_ == 1) {
    out[0] = static_cast<std::uint32_t>(inv_mod(a[0], p_));
    return;
  }
  // Extended Euclid in F_p[t]: s*a + t*f = 1.
  const Poly f(modulus_.begin(), modulus_.end());
  Poly r0 = f, r1(a.begin(), a.end());
  trim(r1);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p_);
    // degrees of the Bezout coefficients stay below w, no reduction needed
    Poly prod(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) prod[i + j] = (prod[i + j] + q[i] * s1[j]) % p_;
    Poly ns = poly_sub(s0, prod, p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(ns);
  }
  // r0 is a nonzero constant since the modulus is irreducible
  const u64 c = inv_mod(r0[0], p_);
  s0 = poly_mod(std::move(s0), f, p_);
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < s0.size(); ++i) out[i] = static_cast<std::uint32_t>(s0[i] * c % p_);
}

void FiniteField::frobenius(std::span<const std::uint32_t> a, long j, std::span<std::uint32_t> out) const {
  const long k = ((j % w_) + w_) % w_;
  std::vector<std::uint32_t> cur(a.begin(), a.end()), tmp(w_);
  for (long i = 0; i < k; ++i) {
    pow(cur, p_, tmp);
    cur = tmp;
  }
  std::copy(cur.begin(), cur.end(), out.begin());
}

// --------------------------------------------------------------------- FFElem

FFElem::FFElem(FieldRef field, std::vector<std::uint32_t> rep) : field_(std::move(field)), rep_(std::move(rep)) {
  if (!field_) throw InputError("element without a field");
  if (static_cast<int>(rep_.size()) != field_->w()) throw InputError("element representation has the wrong length");
  for (auto c : rep_)
    if (c >= field_->p()) throw InputError("element coefficient not reduced modulo p");
}

FFElem FFElem::zero(FieldRef field) {
  const int w = field->w();
  return FFElem(std::move(field), std::vector<std::uint32_t>(w, 0));
}

FFElem FFElem::one(FieldRef field) { return from_int(std::move(field), 1); }

FFElem FFElem::from_int(FieldRef field, std::int64_t value) {
  const std::int64_t p = field->p();
  std::vector<std::uint32_t> rep(field->w(), 0);
  rep[0] = static_cast<std::uint32_t>(((value % p) + p) % p);
  return FFElem(std::move(field), std::move(rep));
}

bool FFElem::is_zero() const noexcept {
  return std::all_of(rep_.begin(), rep_.end(), [](std::uint32_t c) { return c == 0; });
}

FFElem FFElem::operator+(const FFElem& o) const {
  require_same_field(field_, o.field_);
  std::vector<std::uint32_t> r(rep_.size());
  field_->add(rep_, o.rep_, r);
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-(const FFElem& o) const {
  require_same_field(field_, o.field_);
  std::vector<std::uint32_t> r(rep_.size());
  field_->sub(rep_, o.rep_, r);
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator*(const FFElem& o) const {
  require_same_field(field_, o.field_);
  std::vector<std::uint32_t> r(rep_.size());
  field_->mul(rep_, o.rep_, r);
  return FFElem(field_, std::move(r));
}

FFElem FFElem::inverse() const {
  std::vector<std::uint32_t> r(rep_.size());
  field_->inverse(rep_, r);
  return FFElem(field_, std::move(r));
}

FFElem FFElem::frobenius(long j) const {
  std::vector<std::uint32_t> r(rep_.size());
  field_->frobenius(rep_, j, r);
  return FFElem(field_, std::move(r));
}

bool FFElem::operator==(const FFElem& o) const { return field_->same_as(*o.field_) && rep_ == o.rep_; }

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(FieldRef field, int trunc) : field_(std::move(field)), trunc_(trunc) {
  if (!field_) throw InputError("series without a field");
  if (trunc_ < 1) throw InputError("series truncation must be >= 1");
  data_.assign(static_cast<std::size_t>(trunc_) * field_->w(), 0);
}

TruncSeries TruncSeries::from_ints(FieldRef field, int trunc, std::initializer_list<std::int64_t> coeffs) {
  return from_ints(std::move(field), trunc, std::span<const std::int64_t>(coeffs.begin(), coeffs.size()));
}

TruncSeries TruncSeries::from_ints(FieldRef field, int trunc, std::span<const std::int64_t> coeffs) {
  TruncSeries s(field, trunc);
  const std::int64_t p = field->p();
  const int n = std::min<int>(trunc, static_cast<int>(coeffs.size()));
  for (int i = 0; i < n; ++i) s.raw(i)[0] = static_cast<std::uint32_t>(((coeffs[i] % p) + p) % p);
  return s;
}

TruncSeries TruncSeries::identity(FieldRef field, int trunc) {
  TruncSeries s(std::move(field), trunc);
  if (trunc > 1) s.raw(1)[0] = 1;
  return s;
}

TruncSeries TruncSeries::constant(const FFElem& c, int trunc) {
  TruncSeries s(c.field(), trunc);
  s.set_coeff(0, c);
  return s;
}

std::span<const std::uint32_t> TruncSeries::raw(int i) const {
  return {data_.data() + static_cast<std::size_t>(i) * w(), static_cast<std::size_t>(w())};
}

std::span<std::uint32_t> TruncSeries::raw(int i) {
  return {data_.data() + static_cast<std::size_t>(i) * w(), static_cast<std::size_t>(w())};
}

FFElem TruncSeries::coeff(int i) const {
  if (i < 0 || i >= trunc_) throw InputError("coefficient index " + std::to_string(i) + " outside the truncation");
  auto r = raw(i);
  return FFElem(field_, std::vector<std::uint32_t>(r.begin(), r.end()));
}

void TruncSeries::set_coeff(int i, const FFElem& c) {
  if (i < 0 || i >= trunc_) throw InputError("coefficient index " + std::to_string(i) + " outside the truncation");
  require_same_field(field_, c.field());
  std::copy(c.rep().begin(), c.rep().end(), raw(i).begin());
}

bool TruncSeries::coeff_is_zero(int i) const {
  auto r = raw(i);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; });
}

int TruncSeries::valuation() const {
  for (int i = 0; i < trunc_; ++i)
    if (!coeff_is_zero(i)) return i;
  return trunc_;
}

TruncSeries TruncSeries::truncated(int n) const {
  if (n < 1 || n > trunc_) throw InputError("cannot truncate a series to " + std::to_string(n) + " terms");
  TruncSeries s(field_, n);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n) * w(), s.data_.begin());
  return s;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
  return trunc_ == o.trunc_ && field_->same_as(*o.field_) && data_ == o.data_;
}

// ------------------------------------------------------------------ kernels

namespace {

// out[k] = sum_{i+j=k} a_i b_j for k < nout, reading a_i for i < na and b_j for j < nb.
void mul_raw(const FiniteField& F, const std::uint32_t* a, int na, const std::uint32_t* b, int nb,
             std::uint32_t* out, int nout) {
  const u64 p = F.p();
  const int w = F.w();
  if (w == 1) {
    std::vector<int> nz;
    for (int i = 0; i < na && i < nout; ++i)
      if (a[i]) nz.push_back(i);
    std::vector<u128> acc(nout, 0);
    for (int i : nz) {
      const u64 ai = a[i];
      const int jmax = std::min(nb, nout - i);
      u128* dst = acc.data() + i;
      for (int j = 0; j < jmax; ++j) dst[j] += ai * b[j];
    }
    for (int k = 0; k < nout; ++k) out[k] = static_cast<std::uint32_t>(acc[k] % p);
    return;
  }
  const int plen = 2 * w - 1;
  std::vector<u128> acc(static_cast<std::size_t>(nout) * plen, 0);
  for (int i = 0; i < na && i < nout; ++i) {
    const std::uint32_t* ai = a + static_cast<std::size_t>(i) * w;
    if (std::all_of(ai, ai + w, [](std::uint32_t c) { return c == 0; })) continue;
    const int jmax = std::min(nb, nout - i);
    for (int j = 0; j < jmax; ++j) {
      const std::uint32_t* bj = b + static_cast<std::size_t>(j) * w;
      u128* dst = acc.data() + static_cast<std::size_t>(i + j) * plen;
      for (int s = 0; s < w; ++s) {
        if (!ai[s]) continue;
        for (int t = 0; t < w; ++t) dst[s + t] += static_cast<u64>(ai[s]) * bj[t];
      }
    }
  }
  std::vector<u64> poly(plen);
  for (int k = 0; k < nout; ++k) {
    for (int s = 0; s < plen; ++s) poly[s] = static_cast<u64>(acc[static_cast<std::size_t>(k) * plen + s] % p);
    F.reduce_product(poly, std::span<std::uint32_t>(out + static_cast<std::size_t>(k) * w, w));
  }
}

// Horner evaluation of the first `no` coefficients of outer at inner, modulo X^nout.
// inner must have zero constant term and at least nout coefficients.
std::vector<std::uint32_t> horner_raw(const FiniteField& F, const std::uint32_t* outer, int no,
                                      const std::uint32_t* inner, int nout) {
  const int w = F.w();
  std::vector<std::uint32_t> acc, next(static_cast<std::size_t>(nout) * w);
  const int top = std::min(no, nout) - 1;
  // acc_k is needed modulo X^{nout-k}
  acc.assign(outer + static_cast<std::size_t>(top) * w, outer + static_cast<std::size_t>(top + 1) * w);
  acc.resize(static_cast<std::size_t>(nout - top) * w, 0);
  for (int k = top - 1; k >= 0; --k) {
    const int len = nout - k;
    mul_raw(F, inner, len, acc.data(), len - 1, next.data(), len);
    const std::uint32_t* ck = outer + static_cast<std::size_t>(k) * w;
    for (int s = 0; s < w; ++s) {
      u64 v = static_cast<u64>(next[s]) + ck[s];
      next[s] = static_cast<std::uint32_t>(v >= F.p() ? v - F.p() : v);
    }
    acc.assign(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(len) * w);
  }
  acc.resize(static_cast<std::size_t>(nout) * w, 0);
  return acc;
}

TruncSeries from_raw(const FieldRef& field, int trunc, const std::vector<std::uint32_t>& data) {
  TruncSeries s(field, trunc);
  for (int i = 0; i < trunc; ++i) std::copy_n(data.data() + static_cast<std::size_t>(i) * field->w(), field->w(), s.raw(i).begin());
  return s;
}

std::vector<std::uint32_t> to_raw(const TruncSeries& s) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(s.trunc()) * s.w());
  for (int i = 0; i < s.trunc(); ++i) std::copy(s.raw(i).begin(), s.raw(i).end(), out.begin() + static_cast<std::ptrdiff_t>(i) * s.w());
  return out;
}

}  // namespace

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_same_field(a.field(), b.field());
  const int n = std::min(a.trunc(), b.trunc());
  TruncSeries r(a.field(), n);
  for (int i = 0; i < n; ++i) a.field()->add(a.raw(i), b.raw(i), r.raw(i));
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  require_same_field(a.field(), b.field());
  const int n = std::min(a.trunc(), b.trunc());
  TruncSeries r(a.field(), n);
  for (int i = 0; i < n; ++i) a.field()->sub(a.raw(i), b.raw(i), r.raw(i));
  return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same_field(a.field(), b.field());
  const int n = std::min(a.trunc(), b.trunc());
  const auto ra = to_raw(a), rb = to_raw(b);
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n) * a.w());
  mul_raw(*a.field(), ra.data(), n, rb.data(), n, out.data(), n);
  return from_raw(a.field(), n, out);
}

TruncSeries scale(const TruncSeries& a, const FFElem& c) {
  require_same_field(a.field(), c.field());
  TruncSeries r(a.field(), a.trunc());
  for (int i = 0; i < a.trunc(); ++i) a.field()->mul(a.raw(i), c.rep(), r.raw(i));
  return r;
}

TruncSeries substitute_polynomial(const TruncSeries& outer, const TruncSeries& inner, int out_trunc) {
  require_same_field(outer.field(), inner.field());
  if (!inner.coeff_is_zero(0)) throw InputError("substituted series must have zero constant term");
  if (out_trunc < 1 || out_trunc > inner.trunc())
    throw InputError("substitution target precision exceeds the inner series truncation");
  const auto ro = to_raw(outer), ri = to_raw(inner);
  return from_raw(outer.field(), out_trunc, horner_raw(*outer.field(), ro.data(), outer.trunc(), ri.data(), out_trunc));
}

TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner) {
  require_same_field(outer.field(), inner.field());
  if (!inner.coeff_is_zero(0)) throw InputError("inner series of a composition must have zero constant term");
  const int n = std::min(outer.trunc(), inner.trunc());
  const auto ro = to_raw(outer), ri = to_raw(inner);
  return from_raw(outer.field(), n, horner_raw(*outer.field(), ro.data(), n, ri.data(), n));
}

TruncSeries compositional_inverse(const TruncSeries& g) {
  const FieldRef& F = g.field();
  const int n = g.trunc();
  const int w = F->w();
  if (!g.coeff_is_zero(0)) throw InputError("series with nonzero constant term has no compositional inverse");
  if (n < 2) return TruncSeries(F, n);
  if (g.coeff_is_zero(1)) throw InputError("series with vanishing linear coefficient has no compositional inverse");

  // h = sum_j d_j X^j with sum_j d_j g^j = X; g^j has valuation j and leading
  // coefficient c_1^j, so d_k is determined by the lower d_j.
  const auto rg = to_raw(g);
  std::vector<std::vector<std::uint32_t>> powers(n);  // powers[j] = g^j mod X^n
  powers[1] = rg;
  for (int j = 2; j < n; ++j) {
    powers[j].assign(static_cast<std::size_t>(n) * w, 0);
    mul_raw(*F, powers[j - 1].data(), n, rg.data(), n, powers[j].data(), n);
  }
  std::vector<std::uint32_t> c1(g.raw(1).begin(), g.raw(1).end()), c1inv(w), lead_inv(w), tmp(w), acc(w);
  F->inverse(c1, c1inv);
  TruncSeries h(F, n);
  std::fill(lead_inv.begin(), lead_inv.end(), 0);
  lead_inv[0] = 1;
  for (int k = 1; k < n; ++k) {
    F->mul(lead_inv, c1inv, tmp);
    lead_inv = tmp;  // c_1^{-k}
    std::fill(acc.begin(), acc.end(), 0);
    if (k == 1) acc[0] = 1;
    for (int j = 1; j < k; ++j) {
      F->mul(h.raw(j), std::span<const std::uint32_t>(powers[j].data() + static_cast<std::size_t>(k) * w, w), tmp);
      F->sub(acc, tmp, acc);
    }
    F->mul(acc, lead_inv, h.raw(k));
  }
  return h;
}

TruncSeries frobenius_twist(const TruncSeries& g, long j) {
  TruncSeries r(g.field(), g.trunc());
  for (int i = 0; i < g.trunc(); ++i) g.field()->frobenius(g.raw(i), j, r.raw(i));
  return r;
}

TruncSeries compose_power(const TruncSeries& g, std::uint64_t k) {
  if (!g.coeff_is_zero(0)) throw InputError("iterated series must have zero constant term");
  TruncSeries result = TruncSeries::identity(g.field(), g.trunc());
  TruncSeries base = g;
  while (k) {
    if (k & 1) result = compose(result, base);
    k >>= 1;
    if (k) base = compose(base, base);
  }
  return result;
}

}  // namespace ramforge
