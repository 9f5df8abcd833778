#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramforge/errors.hpp"
#include "ramforge/ramcheck.hpp"
#include "support.hpp"

using namespace testing;

namespace {

TheoremInputs inputs(long p, long e, std::vector<long> upper, bool zp = false) {
  TheoremInputs ti;
  ti.p = p;
  ti.e = e;
  ti.n = static_cast<int>(upper.size());
  ti.bd = BreakData{static_cast<std::uint32_t>(p), Rational(e), {}};
  for (long b : upper) ti.bd.upper.push_back(Rational(b));
  ti.contained_in_zp = zp;
  return ti;
}

std::vector<long> forced(int n) {
  std::vector<long> v;
  for (int i = 1; i <= n; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("tame parameters") {
  TameParams tp = tame_params(5, 1);
  CHECK(tp.s == 4);
  CHECK(tp.e0 == 1);
  tp = tame_params(7, 3);
  CHECK(tp.s == 2);
  CHECK(tp.e0 == 1);
  tp = tame_params(5, 4);
  CHECK(tp.s == 1);
  CHECK(tp.e0 == 1);
  tp = tame_params(7, 4);
  CHECK(tp.s == 3);
  CHECK(tp.e0 == 2);
  CHECK(tp.e0 * (tp.p - 1) == tp.e * tp.s);
  CHECK_THROWS_AS(tame_params(5, 10), InputError);
  CHECK_THROWS_AS(tame_params(6, 1), InputError);
}

TEST_CASE("f(t) and its period sum") {
  const TameParams tp = tame_params(5, 1);
  CHECK(f_shift(tp, 1, 9) == 4);
  CHECK(f_shift(tp, 1, 5) == 24);
  CHECK(f_shift(tp, 1, 6) == 0);
  ShiftSum s = f_shift_sum_check(tp, 1);
  CHECK(s.sum == 40);
  CHECK(s.ok);
  s = f_shift_sum_check(tame_params(7, 1), 1);
  CHECK(s.sum == 84);
  CHECK(s.ok);
  for (long p : {5L, 7L, 11L}) {
    for (long e = 1; e < p; ++e) {
      const TameParams t = tame_params(p, e);
      for (int m = 1; m <= 3; ++m) {
        CHECK(f_shift_sum_check(t, m).ok);
        const BigInt period = BigInt(t.s) * ipow(BigInt(p), m);
        for (long x = -40; x < 200; x += 7) CHECK(f_shift(t, m, BigInt(x)) == f_shift(t, m, BigInt(x) + period));
      }
    }
  }
}

TEST_CASE("g floor") {
  const TameParams tp = tame_params(5, 1);
  CHECK(g_floor(tp, 1, 30) == 1);
  CHECK(g_floor(tp, 1, 29) == 0);
  CHECK(g_floor(tp, 1, 29 + 20) == 1);
  CHECK(g_floor(tp, 1, 29 + 21) == 2);
}

TEST_CASE("m0") {
  CHECK(m0(inputs(5, 1, {1, 2, 3})) == 2);
  CHECK(m0(inputs(5, 1, {1, 2})) == 1);
  CHECK(m0(inputs(7, 1, {1, 2, 3, 4})) == 3);
  CHECK_FALSE(m0(inputs(5, 4, {1})).has_value());  // psi(5) = 21 >= 20
  for (long p : {5L, 7L, 11L})
    for (int n = 1; n <= 8; ++n) CHECK(m0(inputs(p, 1, forced(n))) == n - 1);
  CHECK_THROWS_AS(m0(inputs(3, 1, {1, 2})), InputError);
  CHECK_THROWS_AS(m0(inputs(5, 1, {1, 3})), InputError);
}

TEST_CASE("q and r") {
  const BreakData b1{5, Rational(1), {Rational(1), Rational(2), Rational(3)}};
  QR v = q_r_values(tame_params(5, 1), extract_yhz(b1), Rational(1), 2);
  CHECK(v.q == 25);
  CHECK(v.r == 149);
  const BreakData b2{5, Rational(4), {Rational(5), Rational(9)}};
  v = q_r_values(tame_params(5, 4), extract_yhz(b2), Rational(4), 1);
  CHECK(v.q == 10);
  CHECK(v.r == 34);
  const BreakData b3{7, Rational(1), {Rational(1), Rational(2)}};
  v = q_r_values(tame_params(7, 1), extract_yhz(b3), Rational(1), 1);
  CHECK(v.q == 7);
  CHECK(v.r == 55);
}

TEST_CASE("lower bound for psi_{M/L}(a)") {
  TheoremInputs ti = normalized(inputs(5, 1, {1, 2, 3}));
  const TameParams tp = tame_params(5, 1);
  const YHZ y = extract_yhz(ti.bd);
  CHECK(psi_ML_lower_bound(ti, tp, y, 2, 0) == 4 * 125);
  CHECK(psi_ML_lower_bound(ti, tp, y, 2, 2) == 12004);
  CHECK(psi_ML_closed_form(ti, tp, y, 2, 2) == 12004);
  TheoremInputs t2 = normalized(inputs(5, 1, {1, 2}));
  CHECK(psi_ML_lower_bound(t2, tp, extract_yhz(t2.bd), 1, 1) == 484);
  CHECK_THROWS_AS(psi_ML_lower_bound(ti, tp, y, 2, 3), InputError);
}

TEST_CASE("main conditions") {
  TheoremInputs ti = inputs(5, 1, {1, 2, 3}, true);
  ti.a = BigInt(125);
  ti.m = 2;
  ConditionReport r = check_conditions(ti);
  CHECK(r.all_pass);
  CHECK(r.guarantee == Guarantee::main);
  CHECK(r.guarantee_exponent == 2);
  CHECK(r.t_range == std::vector<int>{0, 1, 2});
  CHECK(r.checks.back().psi_ml == 12004);
  CHECK(r.checks.back().cond1_rhs == 3125);
  CHECK(r.checks.back().phi_EK_r == make_rational(13, 4));
  CHECK(r.checks.back().psi_LK_u == 31);

  ti.a = BigInt(31);
  r = check_conditions(ti);
  CHECK_FALSE(r.checks.back().cond3);
  CHECK(r.guarantee == Guarantee::none);

  TheoremInputs t2 = inputs(5, 1, {1, 2}, true);
  t2.a = BigInt(25);
  t2.m = 1;
  r = check_conditions(t2);
  CHECK(r.guarantee == Guarantee::main);
  CHECK(r.guarantee_exponent == 1);

  // y != e: only t = m is examined
  r = check_conditions(inputs(5, 4, {5, 9, 13}, true));
  CHECK(r.t_range == std::vector<int>{r.m});

  // not known to lie in a Z_p-extension: the p-th root variant decides
  r = check_conditions(inputs(5, 1, {1, 2, 3}));
  CHECK(r.guarantee == Guarantee::proot);
  CHECK(r.guarantee_exponent == 1);
  REQUIRE(r.fallback.size() == 1);
  CHECK(*r.fallback[0].l == 25);
  r = check_conditions(inputs(5, 1, {1, 2}));
  CHECK(r.guarantee == Guarantee::none);

  r = check_conditions(inputs(5, 4, {1}, true));
  CHECK_FALSE(r.applicable);
  CHECK(r.guarantee == Guarantee::none);

  TheoremInputs bad = inputs(5, 1, {1, 2, 3});
  bad.a = BigInt(126);
  CHECK_THROWS_AS(check_conditions(bad), InputError);
  CHECK_THROWS_AS(check_conditions(inputs(5, 5, {1})), InputError);
}

TEST_CASE("p-th root variant") {
  ConditionReport r = proot_check(inputs(5, 1, {1, 2, 3}));
  CHECK(r.applicable);
  CHECK(*r.l == 25);
  CHECK(r.sub_upper == std::vector<Rational>{Rational(1), Rational(2)});
  CHECK(r.m == 1);
  CHECK(r.all_pass);
  CHECK(r.guarantee == Guarantee::proot);
  CHECK_FALSE(proot_check(inputs(5, 1, {1, 2})).applicable);
  // l comes from psi at the largest break u = 4: psi(4) = 1 + 7 + 49 + 343 = 400
  r = proot_check(inputs(7, 1, {1, 2, 3, 4}));
  CHECK(r.applicable);
  CHECK(*r.l == 343);
  CHECK(r.m == 2);
}

TEST_CASE("randomized admissible data pass every check") {
  std::mt19937_64 rng(123);
  int tested = 0;
  while (tested < 100) {
    const long p = std::vector<long>{5, 7, 11, 13}[rng() % 4];
    const long e = 1 + static_cast<long>(rng() % (p - 1));
    const int n = 1 + static_cast<int>(rng() % 5);
    TheoremInputs ti;
    ti.p = p;
    ti.e = e;
    ti.n = n;
    ti.bd = random_breaks(static_cast<std::uint32_t>(p), e, n, rng);
    const auto m = m0(ti);
    if (!m || *m < 1) continue;
    ++tested;
    ti.contained_in_zp = true;
    const ConditionReport r = check_conditions(ti);
    CHECK(r.all_pass);
    CHECK(r.guarantee_exponent == *m);
    const TheoremInputs nt = normalized(ti);
    for (int t : r.t_range)
      CHECK(psi_ML_lower_bound(nt, r.tp, r.yhz, *m, t) >= psi_ML_closed_form(nt, r.tp, r.yhz, *m, t));
  }
}
