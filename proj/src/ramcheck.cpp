#include "ramforge/ramcheck.hpp"

#include <numeric>

#include "ramforge/errors.hpp"
#include "ramforge/gfseries.hpp"

namespace ramforge {

namespace {

BigInt bpow(long p, long k) { return ipow(BigInt(p), static_cast<unsigned long>(k)); }

// psi_{E/K} for E/K of ramification index s p^m whose positive upper breaks are e, 2e, ..., me.
PLFunc psi_EK(const TameParams& tp, int m) {
  std::vector<Rational> xs{Rational(0)}, ss{Rational(tp.s)};
  for (int i = 1; i <= m; ++i) {
    xs.push_back(Rational(i * tp.e));
    ss.push_back(Rational(tp.s) * rpow(tp.p, i));
  }
  return PLFunc(std::move(xs), std::move(ss), Rational(0));
}

// phi_{E/K}(r) in closed form.
Rational phi_EK_r_closed(const TameParams& tp, const YHZ& yhz, int m) {
  const Rational e = tp.e;
  Rational v = (Rational(m + 1) + make_rational(1, tp.p - 1)) * e;
  if (yhz.h == 0 && yhz.y > e) v += yhz.y - e;
  return v;
}

}  // namespace

TameParams tame_params(long p, long e) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("p must be prime");
  if (e < 1) throw InputError("e must be a positive integer");
  if (e % p == 0) throw InputError("p divides e: the base is not tamely ramified");
  const long g = std::gcd(e, p - 1);
  return {p, e, (p - 1) / g, e / g, std::nullopt};
}

BigInt f_shift(const TameParams& tp, int m, const BigInt& t) {
  if (m < 1) throw InputError("f(t) needs m >= 1");
  const BigInt pm = bpow(tp.p, m);
  const BigInt t0 = t - BigInt(tp.e0) * pm;
  if (t0 % tp.s != 0) return 0;
  if (t0 == 0) return BigInt(tp.e0) * (bpow(tp.p, m + 1) - 1);
  const int v = valuation(t0, static_cast<unsigned long>(tp.p));
  if (v < m) return BigInt(tp.e0) * (bpow(tp.p, v + 1) - 1);
  return BigInt(tp.e0) * (bpow(tp.p, m + 1) - 1);
}

ShiftSum f_shift_sum_check(const TameParams& tp, int m) {
  ShiftSum out;
  const BigInt pm = bpow(tp.p, m);
  const BigInt lo = BigInt(tp.e0) * pm, hi = BigInt(tp.e0 + tp.s) * pm;
  out.sum = 0;
  for (BigInt t = lo; t < hi; ++t) out.sum += f_shift(tp, m, t);
  out.expected = BigInt(m + 1) * BigInt(tp.e0) * (bpow(tp.p, m + 1) - pm);
  out.ok = out.sum == out.expected;
  return out;
}

BigInt g_floor(const TameParams& tp, int m, const BigInt& n_val) {
  const BigInt pm = bpow(tp.p, m);
  const BigInt num = n_val - BigInt(tp.e0) * (bpow(tp.p, m + 1) + pm - 1);
  return ceil(make_rational(num, BigInt(tp.s) * pm));
}

TheoremInputs normalized(TheoremInputs ti) {
  if (ti.p <= 3) throw InputError("the comparison theorem needs p > 3");
  tame_params(ti.p, ti.e);
  if (ti.n < 1) throw InputError("n must be >= 1");
  if (ti.bd.p != static_cast<std::uint32_t>(ti.p)) throw InputError("break data prime differs from p");
  if (ti.bd.e != Rational(ti.e)) throw InputError("break data e differs from e");
  if (static_cast<int>(ti.bd.upper.size()) != ti.n) throw InputError("break data must list exactly n upper breaks");
  require_valid(ti.bd);
  const BigInt cap = BigInt(ti.e) * bpow(ti.p, ti.n);
  if (!ti.a) ti.a = cap;
  if (*ti.a < 1 || *ti.a > cap) throw InputError("cutoff a must satisfy 1 <= a <= e p^n");
  if (ti.m && (*ti.m < 1 || *ti.m > ti.n)) throw InputError("m must satisfy 1 <= m <= n");
  return ti;
}

std::optional<int> m0(const TheoremInputs& raw) {
  const TheoremInputs ti = normalized(raw);
  const PLFunc psi = psi_from_breaks(ti.bd);
  const Rational e = ti.e, target = Rational(BigInt(ti.e) * bpow(ti.p, ti.n));
  auto holds = [&](int m) { return psi((Rational(m + 1) + make_rational(1, ti.p - 1)) * e) < target; };
  if (!holds(0)) return std::nullopt;
  int m = 0;
  while (holds(m + 1)) ++m;
  const YHZ yhz = extract_yhz(ti.bd);
  if (m > ti.n - yhz.h - 1)
    throw std::logic_error("m0 = " + std::to_string(m) + " exceeds the bound n - h - 1 = " + std::to_string(ti.n - yhz.h - 1));
  return m;
}

QR q_r_values(const TameParams& tp, const YHZ& yhz, const Rational& e, int m) {
  if (m < 1) throw InputError("q and r need m >= 1");
  const Rational pm = rpow(tp.p, m);
  Rational q = (yhz.h == 0 && yhz.y > e) ? Rational(((yhz.y - e) * tp.s + tp.e0) * pm) : Rational(Rational(tp.e0) * pm);
  Rational r = q + Rational(tp.e0) * (rpow(tp.p, m + 1) - 1);
  return {q, r};
}

Rational psi_ML_lower_bound(const TheoremInputs& ti, const TameParams& tp, const YHZ&, int m, int t) {
  if (t < 0 || t > m) throw InputError("t must satisfy 0 <= t <= m");
  if (!ti.a) throw InputError("cutoff a is not set");
  const PLFunc psi = psi_from_breaks(ti.bd);
  std::vector<Rational> xs{Rational(0)}, ss{Rational(tp.s)};
  for (int i = m - t; i < m; ++i) {
    Rational beta = psi(Rational((i + 1) * ti.e));
    if (beta <= xs.back()) throw std::logic_error("bounds for the breaks of M/L are not increasing");
    xs.push_back(beta);
    ss.push_back(ss.back() * tp.p);
  }
  return PLFunc(std::move(xs), std::move(ss), Rational(0))(Rational(*ti.a));
}

Rational psi_ML_closed_form(const TheoremInputs& ti, const TameParams& tp, const YHZ& yhz, int m, int t) {
  const Rational p = tp.p, s = tp.s, e = ti.e, a = Rational(*ti.a);
  const Rational pt = rpow(tp.p, t);
  if (yhz.y <= e) {
    return s * pt * a + s * (pt - 1) * (e * rpow(tp.p, yhz.h + 1) / (p - 1) - yhz.z) -
           s * rpow(tp.p, m + yhz.h - t + 1) * (rpow(tp.p, 2 * t) - 1) / (p + 1) * (p * e / (p - 1) - yhz.y);
  }
  const Rational pm = rpow(tp.p, m);
  return s * pm * a + s * (pm - 1) * (e * rpow(tp.p, yhz.h + 1) / (p - 1) - yhz.z) -
         s * rpow(tp.p, yhz.h) * (rpow(tp.p, 2 * m) - 1) / (p + 1) * ((2 * p - 1) * e / (p - 1) - yhz.y);
}

std::string to_string(Guarantee g) {
  switch (g) {
    case Guarantee::none: return "none";
    case Guarantee::main: return ">= p^m";
    case Guarantee::proot: return ">= p^{m-1} (proot)";
  }
  return "?";
}

namespace {

// Evaluates the three inequalities for a fixed m over the prescribed t range.
void evaluate(const TheoremInputs& ti, int m, ConditionReport& rep) {
  const TameParams tp = tame_params(ti.p, ti.e);
  const YHZ yhz = extract_yhz(ti.bd);
  const Rational e = ti.e;
  const auto [q, r] = q_r_values(tp, yhz, e, m);
  const PLFunc psi_LK = psi_from_breaks(ti.bd);
  const PLFunc phi_LK = psi_LK.inverse();
  const Rational a = Rational(*ti.a);

  const Rational phi_ek = psi_EK(tp, m).inverse()(r);
  if (phi_ek != phi_EK_r_closed(tp, yhz, m)) throw std::logic_error("phi_{E/K}(r) disagrees with its closed form");
  const Rational psi_u = psi_LK(ti.bd.upper.back());

  rep.m = m;
  rep.tp = tp;
  rep.yhz = yhz;
  rep.q = q;
  rep.r = r;
  rep.a = *ti.a;
  rep.t_range.clear();
  if (yhz.y == e)
    for (int t = 0; t <= m; ++t) rep.t_range.push_back(t);
  else
    rep.t_range.push_back(m);

  rep.checks.clear();
  rep.all_pass = true;
  for (int t : rep.t_range) {
    TCheck c;
    c.t = t;
    c.psi_ml = psi_ML_lower_bound(ti, tp, yhz, m, t);
    c.cond1_rhs = rpow(ti.p, ti.n + t - m) * q;
    c.cond1 = c.psi_ml > c.cond1_rhs;
    c.phi_LK_a = phi_LK(a);
    c.phi_EK_r = phi_ek;
    c.cond2 = c.phi_LK_a > c.phi_EK_r;
    c.a = a;
    c.psi_LK_u = psi_u;
    c.cond3 = a > psi_u;
    rep.all_pass = rep.all_pass && c.all();
    rep.checks.push_back(std::move(c));
  }
}

}  // namespace

ConditionReport proot_check(const TheoremInputs& raw) {
  const TheoremInputs ti = normalized(raw);
  ConditionReport rep;
  rep.path = "proot";
  rep.n = ti.n;
  TheoremInputs full = ti;
  full.a.reset();
  full.m.reset();
  rep.m0 = m0(full);
  rep.tp = tame_params(ti.p, ti.e);
  rep.yhz = extract_yhz(ti.bd);
  rep.a = *ti.a;
  if (ti.n < 3 || !rep.m0 || *rep.m0 < 2) {
    rep.applicable = false;
    rep.note = "needs n >= 3 and m0 >= 2";
    return rep;
  }
  const YHZ& yhz = rep.yhz;
  const Rational p = ti.p, e = ti.e;
  const Rational j = psi_from_breaks(ti.bd)(ti.bd.upper.back());
  const BigInt l = ceil((p - 1) / p * j);
  const BigInt l_closed = ceil((p - 1) / p * (yhz.z + e * rpow(ti.p, yhz.h + 1) * (rpow(ti.p, ti.n - yhz.h - 1) - 1) / (p - 1)));
  if (l != l_closed) throw std::logic_error("l disagrees with its closed form");
  rep.l = l;

  TheoremInputs sub;
  sub.p = ti.p;
  sub.e = ti.e;
  sub.n = ti.n - 1;
  sub.bd = ti.bd;
  sub.bd.upper.pop_back();
  sub.a = l;
  sub.contained_in_zp = true;
  sub.m = *rep.m0 - 1;
  sub = normalized(sub);
  rep.sub_upper = sub.bd.upper;
  evaluate(sub, *sub.m, rep);
  rep.a = l;
  rep.n = sub.n;
  if (rep.all_pass) {
    rep.guarantee = Guarantee::proot;
    rep.guarantee_exponent = *rep.m0 - 1;
  }
  return rep;
}

ConditionReport check_conditions(const TheoremInputs& raw) {
  const TheoremInputs ti = normalized(raw);
  ConditionReport rep;
  rep.path = "main";
  rep.n = ti.n;
  TheoremInputs full = ti;
  full.a.reset();
  full.m.reset();
  rep.m0 = m0(full);
  rep.tp = tame_params(ti.p, ti.e);
  rep.yhz = extract_yhz(ti.bd);
  rep.a = *ti.a;
  const int m = ti.m ? *ti.m : (rep.m0 ? *rep.m0 : 0);
  if (m < 1) {
    rep.applicable = false;
    rep.note = "no m >= 1 is available (m0 = " + (rep.m0 ? std::to_string(*rep.m0) : std::string("none")) + ")";
    return rep;
  }
  evaluate(ti, m, rep);
  if (ti.contained_in_zp) {
    if (rep.all_pass) {
      rep.guarantee = Guarantee::main;
      rep.guarantee_exponent = m;
    }
  } else {
    rep.note = "L/K not known to lie in a Z_p-extension; using the p-th root variant";
    ConditionReport alt = proot_check(ti);
    if (alt.guarantee != Guarantee::none) {
      rep.guarantee = alt.guarantee;
      rep.guarantee_exponent = alt.guarantee_exponent;
    }
    rep.fallback.push_back(std::move(alt));
  }
  return rep;
}

}  // namespace ramforge
