#include "doctest.h"

#include <random>

#include "corpus.hpp"

using namespace ncg;
using F = PrimeField;
using Poly = NcPoly<F>;

namespace {

Vec<F> random_vec(const F& f, std::size_t n, std::mt19937_64& rng) {
  Vec<F> v(n);
  for (auto& a : v) a = f.random(rng);
  return v;
}

}  // namespace

TEST_CASE("Hilbert functions of S and A") {
  auto S = corpus::s_algebra(8);
  auto A = corpus::a_algebra(8);
  for (int d = 0; d <= 8; ++d) {
    CHECK(S->dim(d) == static_cast<std::size_t>((d + 1) * (d + 2) / 2));
    CHECK(A->dim(d) == static_cast<std::size_t>(2 * d + 1));
  }
  CHECK(hilbert_series(*S, 8).matches(parse_rational_function("1/(1-t)^3")));
  CHECK(hilbert_series(*A, 8).matches(parse_rational_function("(1+t)/(1-t)^2")));
  CHECK_FALSE(hilbert_series(*A, 8).matches(parse_rational_function("1/(1-t)^2")));
  CHECK(S->dim(-1) == 0);
  CHECK_THROWS_AS(S->dim(9), Error);
}

TEST_CASE("products agree with normal forms of polynomial products") {
  auto A = corpus::a_algebra(8);
  const F& f = A->field();
  std::mt19937_64 rng(7);
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d1 + d2 <= 8; ++d2) {
      const Vec<F> a = random_vec(f, A->dim(d1), rng), b = random_vec(f, A->dim(d2), rng);
      const Poly pa = A->from_coords(a, d1), pb = A->from_coords(b, d2);
      CHECK(A->product(a, d1, b, d2) == A->to_coords(pa * pb, d1 + d2));
      CHECK(vec_mul(f, std::span<const F::Elem>(b), A->left_mult_matrix(a, d1, d2)) ==
            A->product(a, d1, b, d2));
      CHECK(vec_mul(f, std::span<const F::Elem>(a), A->right_mult_matrix(b, d2, d1)) ==
            A->product(a, d1, b, d2));
    }
}

TEST_CASE("associativity and unit on random triples") {
  auto S = corpus::s_algebra(7);
  const F& f = S->field();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const int d1 = static_cast<int>(rng() % 3), d2 = static_cast<int>(rng() % 3),
              d3 = static_cast<int>(rng() % 2);
    const auto a = random_vec(f, S->dim(d1), rng), b = random_vec(f, S->dim(d2), rng),
               c = random_vec(f, S->dim(d3), rng);
    CHECK(S->product(S->product(a, d1, b, d2), d1 + d2, c, d3) ==
          S->product(a, d1, S->product(b, d2, c, d3), d2 + d3));
    CHECK(S->product(S->unit(), 0, a, d1) == a);
    CHECK(S->product(a, d1, S->unit(), 0) == a);
  }
}

TEST_CASE("centrality and regularity") {
  auto S = corpus::s_algebra(8);
  CHECK(is_central(*S, S->parse("x^2 + y^2")));
  CHECK(is_central(*S, S->parse("z^2")));
  CHECK_FALSE(is_central(*S, S->parse("x")));
  CHECK(is_regular_element(*S, S->parse("x^2 + y^2"), 6));
  CHECK(is_regular_element(*S, S->parse("x"), 6));
  auto A = corpus::a_algebra(8);
  // x - y + z squares to zero in A
  CHECK(A->to_coords(A->parse("(x - y + z)^2"), 2) == Vec<F>(A->dim(2), 0));
  CHECK_FALSE(is_regular_element(*A, A->parse("x - y + z"), 3));
  CHECK_THROWS_AS(is_central(*S, S->parse("x + y^2")), Error);
}

TEST_CASE("opposite algebra") {
  auto A = corpus::a_algebra(6);
  auto Aop = A->opposite();
  CHECK(Aop->opposite().get() == A.get());
  CHECK(A->opposite().get() == Aop.get());
  const F& f = A->field();
  std::mt19937_64 rng(3);
  for (int d1 = 0; d1 <= 3; ++d1)
    for (int d2 = 0; d1 + d2 <= 6; ++d2) {
      const auto a = random_vec(f, A->dim(d1), rng), b = random_vec(f, A->dim(d2), rng);
      auto T = [&](const Vec<F>& v, int d) {
        return vec_mul(f, std::span<const F::Elem>(v), A->transport_to_opposite(d));
      };
      CHECK(T(A->product(a, d1, b, d2), d1 + d2) == Aop->product(T(b, d2), d2, T(a, d1), d1));
    }
  const auto rev = opposite_presentation(opposite_presentation(A->presentation()));
  CHECK(rev.relations() == A->presentation().relations());
}

TEST_CASE("quotient and tabulated copies") {
  auto S = corpus::s_algebra(6);
  auto A = quotient_algebra(*S, {S->parse("x^2 + y^2")}, 6, "A");
  for (int d = 0; d <= 6; ++d) CHECK(A->dim(d) == static_cast<std::size_t>(2 * d + 1));
  auto T = TabulatedAlgebra<F>::from_oracle(*A, 5);
  CHECK(T->valid_through() == 5);
  for (int d1 = 0; d1 <= 5; ++d1)
    for (int d2 = 0; d1 + d2 <= 5; ++d2) CHECK(T->block(d1, d2) == A->block(d1, d2));
  CHECK(T->is_connected());
  CHECK(T->num_idempotents() == 1);
  CHECK_THROWS_AS(T->block(3, 3), Error);
}

TEST_CASE("rational function parsing") {
  CHECK(expand_series(parse_rational_function("9(1+t)/(1-t)^2"), 3) == IntPoly{9, 27, 45, 63});
  CHECK(expand_series(parse_rational_function("1/(1-t)^3"), 4) == IntPoly{1, 3, 6, 10, 15});
  CHECK(expand_series(parse_rational_function("1 + 3t + 3t^2 + t^3"), 4) ==
        IntPoly{1, 3, 3, 1, 0});
  CHECK(expand_series(parse_rational_function("(1 - t^2)/(1-t)"), 3) == IntPoly{1, 1, 0, 0});
  CHECK_THROWS_AS(parse_rational_function("1/(1-t"), Error);
  CHECK_THROWS_AS(parse_rational_function("x"), Error);
  CHECK_THROWS_AS(expand_series(parse_rational_function("1/t"), 2), Error);
  // Koszul pairing: H_S(t) * (1 - t)^3 = 1
  CHECK(pair_with_negated({1, 3, 6, 10, 15}, {1, 3, 3, 1}, 4) == IntPoly{1, 0, 0, 0, 0});
}
