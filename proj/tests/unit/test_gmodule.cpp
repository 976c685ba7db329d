#include "doctest.h"

#include "corpus.hpp"

using namespace ncg;
using F = PrimeField;
using Poly = NcPoly<F>;

namespace {

using Dims = std::vector<std::size_t>;

// dim A_d - rank(l * A_{d-1} -> A_d): the cyclic quotient A/lA computed directly.
std::size_t oracle_cyclic_dim(const PresentedAlgebra<F>& A, const Poly& l, int d) {
  if (d < 1) return A.dim(d);
  const auto c = A.to_coords(l, 1);
  return A.dim(d) - rank(A.field(), A.left_mult_matrix(c, 1, d - 1));
}

// dim {a in A_s : a*l = 0} = dim Hom(A/lA, A(s)).
std::size_t oracle_dual_dim(const PresentedAlgebra<F>& A, const Poly& l, int s) {
  if (s < 0) return 0;
  const auto c = A.to_coords(l, 1);
  return A.dim(s) - rank(A.field(), A.right_mult_matrix(c, 1, s));
}

void check_pieces_equal(const GradedModule<F>& M, const GradedModule<F>& N, int lo, int hi) {
  for (int d = lo; d <= hi; ++d) {
    CHECK(M.piece(d).quot.basis() == N.piece(d).quot.basis());
    CHECK(M.piece(d).rel.canonical() == N.piece(d).rel.canonical());
  }
}

}  // namespace

TEST_CASE("free modules") {
  auto A = corpus::a_algebra();
  CHECK(free_graded_module<F>(A, {0})->dims(0, 3) == Dims{1, 3, 5, 7});
  CHECK(free_graded_module<F>(A, {-1})->dims(0, 3) == Dims{0, 1, 3, 5});
  CHECK(free_graded_module<F>(A, {0, -1})->dims(0, 3) == Dims{1, 4, 8, 12});
  CHECK(free_graded_module<F>(A, {1})->dim(-1) == 1);
}

TEST_CASE("cyclic modules against degreewise ranks") {
  auto A = corpus::a_algebra();
  for (int k = 0; k < 4; ++k) {
    auto X = corpus::cone_module(A, k);
    const Poly l = A->parse(corpus::cone_forms()[k], corpus::constants());
    for (int d = 0; d <= 8; ++d) {
      CHECK(X->dim(d) == oracle_cyclic_dim(*A, l, d));
      CHECK(X->dim(d) == static_cast<std::size_t>(d + 1));
    }
  }
  CHECK(cyclic_module<F>(A, {A->parse("1")})->dims(0, 4) == Dims{0, 0, 0, 0, 0});
  CHECK(corpus::residue_field(A)->dims(0, 3) == Dims{1, 0, 0, 0});
  CHECK_THROWS_AS(cyclic_module<F>(A, {A->parse("x + y^2")}), Error);
}

TEST_CASE("presentation exactness and direct sums") {
  auto A = corpus::a_algebra();
  auto X = corpus::example_x(A);
  const auto& P = X->presentation();
  CHECK(P.cover.rank() == 5);
  CHECK(P.relations.size() == 4);
  for (int d = 0; d <= 6; ++d) {
    std::size_t sum = A->dim(d);
    for (int k = 0; k < 4; ++k) sum += corpus::cone_module(A, k)->dim(d);
    CHECK(X->dim(d) == sum);
    Matrix<F> rel_image = Matrix<F>::with_cols(P.cover.dim(d));
    for (std::size_t k = 0; k < P.relations.size(); ++k) {
      const int t = P.rel_free.summands()[k].degree;
      if (t <= d) rel_image.append_rows(P.cover.times_all(P.relations[k], t, d));
    }
    CHECK(X->dim(d) == P.cover.dim(d) - rank(A->field(), rel_image));
    CHECK(rank(A->field(), X->cover_matrix(d)) == X->dim(d));
  }
  auto zero = cyclic_module<F>(A, {A->parse("1")});
  auto X1 = corpus::cone_module(A, 0);
  CHECK(direct_sum<F>({X1, zero})->dims(0, 5) == X1->dims(0, 5));
  auto X2 = corpus::cone_module(A, 1);
  CHECK(direct_sum<F>({direct_sum<F>({X1, X2}), X1})->dims(0, 5) ==
        direct_sum<F>({X1, direct_sum<F>({X2, X1})})->dims(0, 5));
}

TEST_CASE("shift and truncation") {
  auto A = corpus::a_algebra();
  auto R = regular_module<F>(A);
  CHECK(shift_module<F>(R, 1)->dim(-1) == 1);
  CHECK(truncate_module<F>(R, 1)->dims(0, 2) == Dims{0, 3, 5});
  auto X1 = corpus::cone_module(A, 0);
  CHECK(shift_module<F>(shift_module<F>(X1, 2), -3)->dims(-2, 5) ==
        shift_module<F>(X1, -1)->dims(-2, 5));
  // The truncation's computed presentation: three generators in degree 1.
  auto T = truncate_module<F>(R, 1);
  const auto& P = T->presentation();
  CHECK(P.cover.rank() == 3);
  for (const auto& s : P.cover.summands()) CHECK(s.degree == 1);
  for (int d = 0; d <= 6; ++d) CHECK(rank(A->field(), T->cover_matrix(d)) == T->dim(d));
}

TEST_CASE("module action is associative with the algebra") {
  auto A = corpus::a_algebra();
  auto X1 = corpus::cone_module(A, 0);
  const F& f = A->field();
  const auto x = A->to_coords(A->parse("x"), 1), y = A->to_coords(A->parse("y + 2*z"), 1);
  const auto xy = A->product(x, 1, y, 1);
  for (int d = 0; d <= 5; ++d)
    CHECK(mul(f, X1->action(d, x, 1), X1->action(d + 1, y, 1)) == X1->action(d, xy, 2));
}

TEST_CASE("graded automorphisms and twists") {
  auto A = corpus::a_algebra();
  auto id = GradedAutomorphism<F>::identity(A);
  auto X1 = corpus::cone_module(A, 0);
  check_pieces_equal(*twist_module<F>(X1, id), *X1, 0, 6);

  GradedAutomorphism<F> neg(A, {A->parse("-x"), A->parse("-y"), A->parse("-z")});
  GradedAutomorphism<F> flip(A, {A->parse("x"), A->parse("y"), A->parse("-z")});
  for (auto* s : {&neg, &flip}) {
    auto T = twist_module<F>(X1, *s);
    CHECK(T->dims(0, 6) == X1->dims(0, 6));
    check_pieces_equal(*twist_module<F>(T, s->inverse()), *X1, 0, 6);
  }
  CHECK_THROWS_AS(GradedAutomorphism<F>(A, {A->parse("x + y"), A->parse("y"), A->parse("z")}),
                  Error);
  CHECK_THROWS_AS(GradedAutomorphism<F>(A, {A->parse("x"), A->parse("x"), A->parse("z")}),
                  Error);
  // sigma(x) acts as the twisted action on the regular module
  auto R = regular_module<F>(A);
  auto Rt = twist_module<F>(R, flip);
  CHECK(Rt->dims(0, 5) == R->dims(0, 5));
}

TEST_CASE("duals") {
  auto A = corpus::a_algebra();
  auto R = regular_module<F>(A);
  auto Rd = dual_module<F>(R);
  CHECK(Rd->algebra().get() == A->opposite().get());
  CHECK(Rd->dims(0, 6) == R->dims(0, 6));
  for (int k = 0; k < 4; ++k) {
    auto X = corpus::cone_module(A, k);
    const Poly l = A->parse(corpus::cone_forms()[k], corpus::constants());
    auto Xd = dual_module<F>(X);
    for (int s = -2; s <= 6; ++s) CHECK(Xd->dim(s) == oracle_dual_dim(*A, l, s));
    auto Xdd = dual_module<F>(Xd);
    CHECK(Xdd->algebra().get() == A.get());
    CHECK(Xdd->dims(-1, 5) == X->dims(-1, 5));
  }
}

TEST_CASE("degree-zero module") {
  auto A = corpus::a_algebra();
  auto k = degree_zero_module<F>(A);
  CHECK(k->dims(0, 3) == Dims{1, 0, 0, 0});
  const auto& P = k->presentation();
  CHECK(P.cover.rank() == 1);
  CHECK(P.relations.size() == 3);
}
