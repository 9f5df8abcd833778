#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramforge/errors.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("finite fields") {
  CHECK_THROWS_AS(FiniteField::prime(4), InputError);
  CHECK_THROWS_AS(FiniteField::extension(2, {1, 0, 1}), InputError);  // t^2 + 1 = (t+1)^2
  const FieldRef F = f4();
  CHECK(F->w() == 2);
  // t * (t + 1) = t^2 + t = 1
  std::vector<std::uint32_t> t{0, 1}, t1{1, 1}, out(2);
  F->mul(t, t1, out);
  CHECK(out == std::vector<std::uint32_t>{1, 0});
  F->inverse(t, out);
  CHECK(out == t1);
  const FieldRef F9 = FiniteField::extension(3, {1, 0, 1});  // t^2 + 1 irreducible mod 3
  std::vector<std::uint32_t> a{2, 1}, inv(2), prod(2);
  F9->inverse(a, inv);
  F9->mul(a, inv, prod);
  CHECK(prod == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("addition") {
  CHECK(poly(5, 3, {0, 1}) + poly(5, 3, {0, 1}) == poly(5, 3, {0, 2}));
  const auto a = poly(5, 4, {1, 2, 3});
  CHECK(a + TruncSeries(FiniteField::prime(5), 4) == a);
  CHECK(poly(5, 3, {0, 1, 1}) + poly(5, 3, {0, 4}) == poly(5, 3, {0, 0, 1}));
  CHECK((poly(5, 6, {1}) + poly(5, 3, {1})).trunc() == 3);
  CHECK_THROWS_AS(poly(5, 3, {1}) + poly(7, 3, {1}), FieldMismatch);
}

TEST_CASE("multiplication") {
  CHECK(poly(5, 3, {0, 1}) * poly(5, 3, {0, 1}) == poly(5, 3, {0, 0, 1}));
  CHECK(poly(5, 3, {1, 1}) * poly(5, 3, {1, -1}) == poly(5, 3, {1, 0, 4}));
  const auto a = poly(5, 5, {2, 0, 3, 1});
  CHECK(a * poly(5, 5, {1}) == a);
}

TEST_CASE("composition") {
  std::mt19937_64 rng(11);
  const FieldRef F5 = FiniteField::prime(5);
  const auto g = random_series(F5, 8, rng, 1);
  CHECK(compose(TruncSeries::identity(F5, 8), g) == g);
  CHECK(compose(poly(5, 4, {0, 0, 1}), poly(5, 4, {0, 1, 1})) == poly(5, 4, {0, 0, 1, 2}));
  // independent brute-force expansion
  const auto h = poly(5, 10, {0, 1, 0, 0, 0, 1, 1});
  CHECK(compose(h, h) == poly(5, 10, {0, 1, 0, 0, 0, 2, 2}));
  // outer known to fewer terms than the result
  CHECK(substitute_polynomial(poly(5, 2, {3, 1}), poly(5, 6, {0, 0, 0, 2, 1, 1}), 6) == poly(5, 6, {3, 0, 0, 2, 1, 1}));
  CHECK(substitute_polynomial(poly(5, 3, {0, 0, 1}), poly(5, 7, {0, 1, 1}), 7) == poly(5, 7, {0, 0, 1, 2, 1}));
  CHECK_THROWS_AS(compose(g, poly(5, 8, {1, 1})), InputError);
  CHECK_THROWS_AS(compose(g, poly(7, 8, {0, 1})), FieldMismatch);
}

TEST_CASE("compositional inverse") {
  const FieldRef F5 = FiniteField::prime(5);
  CHECK(compositional_inverse(TruncSeries::identity(F5, 6)) == TruncSeries::identity(F5, 6));
  CHECK(compositional_inverse(poly(5, 2, {0, 2})) == poly(5, 2, {0, 3}));
  CHECK(compositional_inverse(poly(5, 4, {0, 1, 1})) == poly(5, 4, {0, 1, 4, 2}));
  CHECK_THROWS_AS(compositional_inverse(poly(5, 4, {1, 1})), InputError);
  CHECK_THROWS_AS(compositional_inverse(poly(5, 4, {0, 0, 1})), InputError);
}

TEST_CASE("frobenius twist") {
  std::mt19937_64 rng(5);
  const auto g = random_series(FiniteField::prime(7), 9, rng);
  CHECK(frobenius_twist(g, 3) == g);
  const FieldRef F = f4();
  TruncSeries tx(F, 3), expect(F, 3);
  tx.raw(1)[1] = 1;  // t X
  expect.raw(1)[0] = 1;
  expect.raw(1)[1] = 1;  // (t + 1) X
  CHECK(frobenius_twist(tx, 1) == expect);
  CHECK(frobenius_twist(tx, 0) == tx);
  CHECK(frobenius_twist(tx, -1) == expect);
  CHECK(frobenius_twist(tx, 2) == tx);
}

TEST_CASE("properties over random data") {
  std::mt19937_64 rng(2024);
  const FieldRef F9 = FiniteField::extension(3, {1, 0, 1});
  for (const FieldRef& F : {FiniteField::prime(5), FiniteField::prime(2), f4(), F9}) {
    for (int rep = 0; rep < 20; ++rep) {
      const int N = 3 + static_cast<int>(rng() % 14);
      const auto a = random_series(F, N, rng, 1), b = random_series(F, N, rng, 1), c = random_series(F, N, rng, 1);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      const auto g = random_unit_series(F, N, rng);
      const auto h = compositional_inverse(g);
      CHECK(compose(g, h) == TruncSeries::identity(F, N));
      CHECK(compose(h, g) == TruncSeries::identity(F, N));
      const auto x = random_series(F, N, rng), y = random_series(F, N, rng);
      for (long j : {1L, 2L, -1L}) {
        CHECK(frobenius_twist(x * y, j) == frobenius_twist(x, j) * frobenius_twist(y, j));
        CHECK(frobenius_twist(x + y, j) == frobenius_twist(x, j) + frobenius_twist(y, j));
      }
      CHECK(frobenius_twist(x, F->w()) == x);
      CHECK(compose_power(g, 3) == compose(g, compose(g, g)));
      CHECK(x * (y + c) == x * y + x * c);
    }
  }
}
