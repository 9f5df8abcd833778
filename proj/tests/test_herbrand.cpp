#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramforge/errors.hpp"
#include "ramforge/herbrand.hpp"
#include "support.hpp"

using namespace testing;

namespace {

BreakData bd(std::uint32_t p, long e, std::initializer_list<long> upper) {
  BreakData b{p, Rational(e), {}};
  for (long x : upper) b.upper.push_back(Rational(x));
  return b;
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::vector<Rational> grid(std::mt19937_64& rng, int count, long hi) {
  std::vector<Rational> xs;
  for (int i = 0; i < count; ++i) xs.push_back(make_rational(static_cast<long>(rng() % (hi * 97)), 1 + static_cast<long>(rng() % 97)));
  return xs;
}

}  // namespace

TEST_CASE("PL functions") {
  const PLFunc f({q(0), q(2)}, {q(1), q(3)}, q(0));
  CHECK(f(q(1)) == 1);
  CHECK(f(q(4)) == 8);
  CHECK(f(q(-1)) == -1);
  CHECK(f.inverse()(q(8)) == 4);
  CHECK(f.is_convex());
  CHECK_FALSE(f.is_concave());
  CHECK(pl_compose(f, PLFunc::identity()) == f);
  CHECK(pl_compose(PLFunc::identity(), f) == f);
  CHECK(pl_compose(f, f.inverse()) == PLFunc::identity());
  CHECK(PLFunc({q(0), q(1), q(2)}, {q(2), q(2), q(2)}, q(0)) == PLFunc::linear(q(2)));
  CHECK(PLFunc({q(0), q(1), q(2)}, {q(2), q(2), q(2)}, q(0)).simplified().breakpoints().size() == 1);
  CHECK_THROWS_AS(PLFunc({q(0), q(0)}, {q(1), q(2)}, q(0)), InputError);
  CHECK_THROWS_AS(PLFunc({q(0)}, {q(0)}, q(0)), InputError);
  CHECK(tame_psi(q(3))(q(2)) == 6);
  CHECK(tame_phi(q(3))(q(2)) == q(2, 3));
}

TEST_CASE("psi and phi from breaks") {
  CHECK(psi_from_breaks(bd(5, 1, {1}))(q(1)) == 1);
  CHECK(psi_from_breaks(bd(5, 1, {1}))(q(2)) == 6);
  CHECK(psi_from_breaks(bd(5, 1, {1, 2}))(q(2)) == 6);
  CHECK(psi_from_breaks(bd(5, 1, {1, 2}))(q(3)) == 31);
  CHECK(psi_from_breaks(bd(5, 1, {1, 2, 3}))(q(13, 4)) == q(249, 4));
  CHECK(psi_from_breaks(bd(5, 1, {1, 2, 3}))(q(17, 4)) == q(749, 4));
  CHECK(phi_from_breaks(bd(5, 1, {1, 2}))(q(31)) == 3);
  CHECK(phi_from_breaks(bd(5, 4, {5, 9}))(q(3)) == 3);
  CHECK(psi_from_breaks(bd(5, 1, {1, 2, 3})).is_convex());
  CHECK(phi_from_breaks(bd(5, 1, {1, 2, 3})).is_concave());
}

TEST_CASE("tower transitivity") {
  const BreakData b = bd(5, 1, {1, 2});
  const PLFunc lhs = psi_from_breaks(b);
  const PLFunc rhs = pl_compose(tower_step_psi(b, 1), psi_from_breaks(bd(5, 1, {1})));
  std::mt19937_64 rng(8);
  for (const auto& x : grid(rng, 20, 10)) CHECK(lhs(x) == rhs(x));
  CHECK(lhs == rhs);

  for (int rep = 0; rep < 40; ++rep) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7, 11}[rng() % 5];
    const long e = 1 + static_cast<long>(rng() % 12);
    const BreakData r = random_breaks(p, e, 1 + static_cast<int>(rng() % 5), rng);
    PLFunc composite = PLFunc::identity();
    for (int j = 0; j < static_cast<int>(r.upper.size()); ++j) composite = pl_compose(tower_step_psi(r, j), composite);
    const PLFunc direct = psi_from_breaks(r);
    CHECK(composite == direct);
    for (const auto& x : grid(rng, 10, 50)) CHECK(composite(x) == direct(x));
  }
}

TEST_CASE("break validation") {
  CHECK(validate_breaks(bd(5, 1, {1, 2, 3})).valid);
  BreakVerdict v = validate_breaks(bd(5, 1, {1, 3}));
  CHECK_FALSE(v.valid);
  CHECK(v.rule == "c");
  CHECK(v.index == 0);
  v = validate_breaks(bd(5, 1, {2, 3}));
  CHECK_FALSE(v.valid);
  CHECK(v.rule == "a");
  CHECK(validate_breaks(bd(5, 4, {1, 5, 9})).valid);
  v = validate_breaks(bd(5, 4, {1, 4, 8}));  // b_1 < p b_0
  CHECK_FALSE(v.valid);
  CHECK(v.rule == "b");
  v = validate_breaks(bd(5, 4, {1, 6}));  // b_1 > pe/(p-1)
  CHECK(v.rule == "b");
  CHECK(validate_breaks(bd(5, 4, {3, 2})).rule == "order");
  CHECK_THROWS_AS(require_valid(bd(5, 1, {2})), InputError);

  // every generated sequence is accepted; every single-point perturbation that
  // violates a rule is rejected
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint32_t p = std::vector<std::uint32_t>{3, 5, 7, 11, 13}[rng() % 5];
    const long e = 1 + static_cast<long>(rng() % (p + 4));
    const BreakData r = random_breaks(p, e, 1 + static_cast<int>(rng() % 5), rng);
    CHECK(validate_breaks(r).valid);
    const Rational tau = make_rational(e, static_cast<long>(p) - 1);
    for (std::size_t i = 0; i < r.upper.size(); ++i) {
      for (int delta : {-1, 1}) {
        BreakData s = r;
        s.upper[i] += delta;
        // does the perturbed sequence still obey the rules?
        bool ok = s.upper[0] >= 1 && s.upper[0] <= tau * p;
        for (std::size_t k = 0; k + 1 < s.upper.size(); ++k) {
          const Rational& b = s.upper[k];
          const Rational& c = s.upper[k + 1];
          if (c <= b) ok = false;
          if (b <= tau && !(c >= b * p && c <= tau * p)) ok = false;
          if (b >= tau && c != b + e) ok = false;
        }
        CHECK(validate_breaks(s).valid == ok);
      }
    }
  }
}

TEST_CASE("y, h, z") {
  YHZ y = extract_yhz(bd(5, 1, {1, 2, 3}));
  CHECK(y.y == 1);
  CHECK(y.h == 0);
  CHECK(y.z == 1);
  y = extract_yhz(bd(5, 4, {5, 9, 13}));
  CHECK(y.y == 5);
  CHECK(y.h == 0);
  CHECK(y.z == 5);
  y = extract_yhz(bd(5, 4, {1, 5, 9}));
  CHECK(y.y == 5);
  CHECK(y.h == 1);
  CHECK(y.z == 21);
  // every break at most e/(p-1): y is the largest break
  y = extract_yhz(bd(5, 8, {1}));
  CHECK(y.y == 1);
  CHECK(y.h == 0);
}

TEST_CASE("closed-form break formulas") {
  const BreakData b = bd(5, 1, {1, 2, 3});
  const YHZ y = extract_yhz(b);
  CHECK(lower_break_formula(b, y, 0) == y.z);
  CHECK(lower_break_formula(b, y, 2) == 31);
  const BreakData b2 = bd(5, 4, {5, 9});
  CHECK(lower_break_formula(b2, extract_yhz(b2), 1) == 25);
  CHECK(psi_ie_formula(b, y, 1) == 6);
  CHECK(psi_ie_formula(b, y, 0) == 1);
  CHECK(psi_ie_formula(b2, extract_yhz(b2), 1) == 20);
  CHECK(psi_from_breaks(b2)(q(8)) == 20);
  CHECK_THROWS_AS(lower_break_formula(bd(5, 4, {1, 5, 9}), extract_yhz(bd(5, 4, {1, 5, 9})), 0), InputError);
  CHECK_THROWS_AS(psi_ie_formula(b, y, 7), InputError);

  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 300; ++rep) {
    const std::uint32_t p = std::vector<std::uint32_t>{5, 7, 11, 13}[rng() % 4];
    const long e = 1 + static_cast<long>(rng() % (p - 1));
    const BreakData r = random_breaks(p, e, 1 + static_cast<int>(rng() % 5), rng);
    const YHZ yz = extract_yhz(r);
    const PLFunc psi = psi_from_breaks(r);
    CHECK(yz.z == psi(yz.y));
    for (int i = yz.h; i < static_cast<int>(r.upper.size()); ++i) CHECK(lower_break_formula(r, yz, i) == psi(r.upper[i]));
    for (int i = 0; i <= psi_ie_max_index(r, yz); ++i) CHECK(psi_ie_formula(r, yz, i) == psi(Rational(e * (i + 1))));
  }
}

TEST_CASE("psi and phi are inverse") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7}[rng() % 4];
    const BreakData r = random_breaks(p, 1 + static_cast<long>(rng() % 9), 1 + static_cast<int>(rng() % 4), rng);
    const PLFunc psi = psi_from_breaks(r), phi = phi_from_breaks(r);
    for (const auto& x : psi.breakpoints()) CHECK(phi(psi(x)) == x);
    for (const auto& x : grid(rng, 20, 80)) {
      CHECK(phi(psi(x)) == x);
      CHECK(psi(phi(x)) == x);
    }
    CHECK(pl_compose(psi, phi) == PLFunc::identity());
    for (const auto& b : r.upper)
      if (b <= r.upper.front()) CHECK(phi(b) == b);
  }
}
