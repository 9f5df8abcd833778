#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramforge/errors.hpp"
#include "ramforge/truncation.hpp"
#include "support.hpp"

using namespace testing;

namespace {

const FieldRef F5 = FiniteField::prime(5);

TruncObject obj(int e) { return make_object(F5, e); }

}  // namespace

TEST_CASE("construction checks the compatibility relation") {
  CHECK_NOTHROW(TruncMorphism(obj(2), obj(2), 1, 0, poly(5, 2, {0, 3}), poly(5, 2, {3, 1})));
  // mu(pi) = pi^2 is not eta * pi for any unit eta
  CHECK_THROWS_AS(TruncMorphism(obj(3), obj(3), 1, 0, poly(5, 3, {0, 0, 1}), poly(5, 3, {1})), InputError);
  CHECK_THROWS_AS(TruncMorphism::from_eta(obj(2), obj(2), 1, 0, poly(5, 2, {0, 1})), InputError);  // eta not a unit
  CHECK_THROWS_AS(TruncMorphism::from_eta(obj(1), obj(3), 2, 0, poly(5, 3, {1})), InputError);     // r e_1 < e_2
  CHECK_THROWS_AS(TruncMorphism::from_eta(obj(2), obj(2), 0, 0, poly(5, 2, {1})), InputError);
  CHECK_THROWS_AS(TruncMorphism::from_eta(obj(2), obj(3), 2, 0, poly(5, 2, {1})), InputError);     // eta outside the target
  const auto f = TruncMorphism::from_eta(obj(2), obj(4), 2, 0, poly(5, 4, {2, 1}));
  CHECK(f.mu_image() == poly(5, 4, {0, 0, 2, 1}));
  CHECK(f.apply_mu(poly(5, 2, {1, 1})) == poly(5, 4, {1, 0, 2, 1}));
}

TEST_CASE("composition") {
  const auto f = TruncMorphism::from_eta(obj(1), obj(2), 2, 0, poly(5, 2, {3, 1}));
  const auto g = TruncMorphism::from_eta(obj(2), obj(6), 3, 0, poly(5, 6, {2, 1, 1}));
  CHECK(g.mu_image() == poly(5, 6, {0, 0, 0, 2, 1, 1}));
  const auto gf = compose_morphism(g, f);
  CHECK(gf.r() == 6);
  CHECK(gf.src() == obj(1));
  CHECK(gf.dst() == obj(6));
  // mu_g(eta_f) * eta_g^2 by independent expansion
  CHECK(gf.eta_coeff() == poly(5, 6, {2, 2, 0, 4, 0, 3}));
  CHECK(gf.mu_image() == TruncSeries(F5, 6));
  CHECK(compose_morphism(TruncMorphism::identity(obj(2)), f) == f);
  CHECK(compose_morphism(f, TruncMorphism::identity(obj(1))) == f);
  CHECK_THROWS_AS(compose_morphism(f, g), InputError);
}

TEST_CASE("extensions and isomorphisms") {
  CHECK(is_extension(TruncMorphism::from_eta(obj(2), obj(6), 3, 0, poly(5, 6, {1}))));
  CHECK_FALSE(is_extension(TruncMorphism::from_eta(obj(2), obj(5), 3, 0, poly(5, 5, {1}))));
  CHECK(is_extension(TruncMorphism::identity(obj(4))));
  CHECK(is_isomorphism(TruncMorphism::identity(obj(4))));
  CHECK_FALSE(is_isomorphism(TruncMorphism::from_eta(obj(2), obj(4), 2, 0, poly(5, 4, {1}))));
  CHECK(is_isomorphism(TruncMorphism::from_eta(obj(3), obj(3), 1, 0, poly(5, 3, {4, 0, 2}))));
  const FieldRef F = f4();
  CHECK(is_isomorphism(TruncMorphism::from_eta(make_object(F, 2), make_object(F, 2), 1, 1, TruncSeries::identity(F, 2) + TruncSeries::constant(FFElem::one(F), 2))));
}

TEST_CASE("R(c)-equivalence") {
  const auto f = TruncMorphism::from_eta(obj(4), obj(4), 1, 0, poly(5, 4, {2, 1}));
  for (int c = 1; c <= 4; ++c) CHECK(r_equivalent(f, f, c));
  // eta differs by 3 pi^2: equivalent at c = 2, not at c = 3
  const auto f2 = TruncMorphism::from_eta(obj(4), obj(4), 1, 0, poly(5, 4, {2, 1, 3}));
  CHECK(r_equivalent(f, f2, 2));
  CHECK_FALSE(r_equivalent(f, f2, 3));
  const auto h = TruncMorphism::from_eta(obj(4), obj(8), 2, 0, poly(5, 8, {2, 1}));
  const auto h2 = TruncMorphism::from_eta(obj(4), obj(8), 2, 0, poly(5, 8, {2, 1, 0, 0, 1}));
  CHECK(r_equivalent(h, h2, 2));  // v = 4 >= 2 * 2
  CHECK_FALSE(r_equivalent(h, h2, 3));
  const auto k = TruncMorphism::from_eta(obj(4), obj(8), 3, 0, poly(5, 8, {2, 1}));
  CHECK_THROWS_AS(r_equivalent(f, h, 1), InputError);
  CHECK_FALSE(r_equivalent(h, k, 1));
  const FieldRef F = f4();
  const auto t0 = TruncMorphism::identity(make_object(F, 3));
  const auto t1 = TruncMorphism::from_eta(make_object(F, 3), make_object(F, 3), 1, 1, TruncSeries::constant(FFElem::one(F), 3));
  CHECK_FALSE(r_equivalent(t0, t1, 1));
}

TEST_CASE("category laws on random morphisms") {
  std::mt19937_64 rng(77);
  for (const FieldRef& F : {F5, f4()}) {
    for (int rep = 0; rep < 40; ++rep) {
      const TruncObject a = make_object(F, 1 + static_cast<int>(rng() % 4));
      const auto f = random_morphism(a, 1 + static_cast<int>(rng() % 8), rng);
      const auto g = random_morphism(f.dst(), 1 + static_cast<int>(rng() % 10), rng);
      const auto h = random_morphism(g.dst(), 1 + static_cast<int>(rng() % 12), rng);
      CHECK(compose_morphism(h, compose_morphism(g, f)) == compose_morphism(compose_morphism(h, g), f));
      CHECK(compose_morphism(TruncMorphism::identity(f.dst()), f) == f);
      CHECK(compose_morphism(f, TruncMorphism::identity(f.src())) == f);
      // mu is a ring map compatible with composition
      const auto x = random_series(F, a.e, rng), y = random_series(F, a.e, rng);
      CHECK(f.apply_mu(x * y) == f.apply_mu(x) * f.apply_mu(y));
      CHECK(compose_morphism(g, f).apply_mu(x) == g.apply_mu(f.apply_mu(x)));
    }
  }
}
