#include "doctest.h"

#include <random>

#include "ncg/scalars.hpp"

using namespace ncg;

TEST_CASE("root_of_unity on the corpus fields") {
  PrimeField f13(13);
  CHECK(root_of_unity(f13, 4) == 5);
  CHECK(root_of_unity(f13, 2) == 12);
  CHECK(root_of_unity(f13, 1) == 1);
  CHECK_THROWS_AS(root_of_unity(PrimeField(7), 4), Error);
  try {
    root_of_unity(PrimeField(7), 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSuchRoot);
  }
  RationalField q;
  CHECK(root_of_unity(q, 2) == -1);
  try {
    root_of_unity(q, 4);
    FAIL("expected UnsupportedField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedField);
  }
}

TEST_CASE("roots have exact order") {
  for (std::uint32_t p : {5u, 13u, 17u, 29u, 97u}) {
    PrimeField f(p);
    for (std::uint32_t n = 1; n < p; ++n) {
      if ((p - 1) % n != 0) continue;
      const auto r = root_of_unity(f, n);
      CHECK(f.pow(r, n) == 1);
      for (std::uint32_t m = 1; m < n; ++m) CHECK(f.pow(r, m) != 1);
      CHECK(multiplicative_order(f, r) == n);
    }
  }
}

TEST_CASE("prime field arithmetic is independent of the lift") {
  PrimeField f(13);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> big(-1000000, 1000000);
  for (int t = 0; t < 500; ++t) {
    const std::int64_t a = big(rng), b = big(rng), k1 = big(rng), k2 = big(rng);
    const auto ra = f.from_int(a), rb = f.from_int(b);
    CHECK(f.add(ra, rb) == f.from_int(a + 13 * k1 + b + 13 * k2));
    CHECK(f.mul(ra, rb) == f.from_int((a % 13) * (b % 13)));
    CHECK(f.sub(ra, rb) == f.from_int(a - b));
    CHECK(f.add(ra, f.neg(ra)) == 0);
    if (ra != 0) CHECK(f.mul(ra, f.inv(ra)) == 1);
  }
}

TEST_CASE("rationals are exact") {
  RationalField q;
  auto a = q.from_int(3), b = q.from_int(-7);
  auto c = q.div(a, b);
  CHECK(c == mpq_class(-3, 7));
  CHECK(q.mul(c, q.inv(c)) == 1);
  CHECK(q.pow(q.from_int(2), 100) == mpq_class(mpz_class("1267650600228229401496703205376")));
  CHECK_THROWS_AS(q.inv(q.zero()), Error);
}

TEST_CASE("field specs") {
  CHECK(field_spec_name(parse_field_spec("GF(13)")) == "GF(13)");
  CHECK(field_spec_name(parse_field_spec(" QQ ")) == "QQ");
  CHECK_THROWS_AS(parse_field_spec("GF(12)"), Error);
  CHECK_THROWS_AS(parse_field_spec("F13"), Error);
  CHECK_THROWS_AS(PrimeField(1), Error);
}
