#include "doctest.h"

#include "cool/field.hpp"
#include "cool/types.hpp"
#include "support/oracles.hpp"

using namespace cool;

TEST_CASE("addition is xor with identity and self-inverse") {
  CHECK(Field::add(0b0011, 0b0101) == 0b0110);
  for (FieldElem x = 0; x < 16; ++x) {
    CHECK(Field::add(x, x) == 0);
    CHECK(Field::add(x, 0) == x);
  }
}

TEST_CASE("multiplicative identities and absorbing zero") {
  for (int w : {4, 8, 16}) {
    const Field& f = Field::of(w);
    for (FieldElem x : {FieldElem(1), FieldElem(2), FieldElem(7), FieldElem(9)}) {
      CHECK(f.mul(x, 1) == x);
      CHECK(f.mul(x, 0) == 0);
    }
  }
}

TEST_CASE("table multiplication matches the polynomial definition") {
  SUBCASE("exhaustive for w=4") {
    const Field& f = Field::of(4);
    for (FieldElem a = 0; a < 16; ++a)
      for (FieldElem b = 0; b < 16; ++b)
        CHECK(f.mul(a, b) == testing::slow_mul(a, b, 4));
  }
  SUBCASE("exhaustive for w=8") {
    const Field& f = Field::of(8);
    for (int a = 0; a < 256; ++a)
      for (int b = 0; b < 256; ++b)
        CHECK(f.mul(static_cast<FieldElem>(a), static_cast<FieldElem>(b)) ==
              testing::slow_mul(static_cast<FieldElem>(a), static_cast<FieldElem>(b), 8));
  }
  SUBCASE("randomized for w=16") {
    const Field& f = Field::of(16);
    Rng rng(42);
    for (int i = 0; i < 20000; ++i) {
      const auto a = static_cast<FieldElem>(rng.next());
      const auto b = static_cast<FieldElem>(rng.next());
      CHECK(f.mul(a, b) == testing::slow_mul(a, b, 16));
    }
  }
}

TEST_CASE("inverses") {
  const Field& f = Field::of(8);
  CHECK(f.inv(1) == 1);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  for (int a = 1; a < 256; ++a) {
    CHECK(f.mul(static_cast<FieldElem>(a), f.inv(static_cast<FieldElem>(a))) == 1);
    CHECK(f.inv(f.inv(static_cast<FieldElem>(a))) == a);
  }
}

TEST_CASE("field axioms") {
  SUBCASE("exhaustive triples for w=4") {
    const Field& f = Field::of(4);
    for (FieldElem a = 0; a < 16; ++a)
      for (FieldElem b = 0; b < 16; ++b) {
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (FieldElem c = 0; c < 16; ++c) {
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, Field::add(b, c)) == Field::add(f.mul(a, b), f.mul(a, c)));
          CHECK(Field::add(Field::add(a, b), c) == Field::add(a, Field::add(b, c)));
        }
      }
  }
  SUBCASE("randomized triples for w=8") {
    const Field& f = Field::of(8);
    Rng rng(7);
    for (int i = 0; i < 5000; ++i) {
      const auto a = static_cast<FieldElem>(rng.below(256));
      const auto b = static_cast<FieldElem>(rng.below(256));
      const auto c = static_cast<FieldElem>(rng.below(256));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, Field::add(b, c)) == Field::add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(a, b) == f.mul(b, a));
    }
  }
}

TEST_CASE("integer labels embed injectively up to 2^w - 1") {
  for (int w : {4, 8}) {
    const Field& f = Field::of(w);
    const int limit = (1 << w) - 1;
    std::vector<bool> seen(static_cast<std::size_t>(limit) + 1, false);
    for (int i = 1; i <= limit; ++i) {
      const FieldElem e = f.label(i);
      CHECK(!seen[e]);
      seen[e] = true;
    }
    CHECK_THROWS_AS(f.label(limit + 1), std::invalid_argument);
    CHECK_THROWS_AS(f.label(0), std::invalid_argument);
  }
}

TEST_CASE("unsupported widths are rejected") {
  CHECK_THROWS_AS(Field::of(5), std::invalid_argument);
  CHECK_THROWS_AS(Field::of(32), std::invalid_argument);
}
