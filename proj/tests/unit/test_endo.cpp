#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ncg/endo.hpp"

using namespace ncg;
using F = PrimeField;

namespace {

const Window kWin{};

PresentedPtr<F> A12() {
  static auto A = corpus::a_algebra(12);
  return A;
}

const EndoAlgebra<F>& example_b() {
  static const EndoAlgebra<F> B = endomorphism_algebra<F>(corpus::example_x(A12()), kWin);
  return B;
}

Vec<F> random_vec(const F& f, std::size_t n, std::mt19937_64& rng) {
  Vec<F> v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

PresentedPtr<F> two_var(const std::vector<std::string>& rels, int D) {
  FreeAlgebraPtr<F> free = std::make_shared<FreeAlgebra<F>>(
      F(13), std::vector<std::string>{"x", "y"}, std::vector<int>{1, 1});
  return PresentedAlgebra<F>::build(corpus::presentation(free, rels), D, "P");
}

}  // namespace

TEST_CASE("endomorphism algebra of the example") {
  const auto& B = example_b();
  REQUIRE(B.algebra->valid_through() == 8);
  for (int n = 0; n <= 3; ++n) CHECK(B.algebra->dim(n) == 9u * (2 * n + 1));
  CHECK(B.negative_dims.size() == 6);
  CHECK(check_nonnegative(B));
  // dims agree with Ext^0 computed from a resolution
  auto X = B.module;
  auto e0 = ext_graded_dims<F>(X, X, 0, kWin);
  for (int n = 0; n <= 6; ++n) CHECK(e0.dims.at(n) == B.algebra->dim(n));
}

TEST_CASE("B is associative and unital") {
  const auto& B = example_b();
  const auto& alg = *B.algebra;
  const F f = alg.field();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 6; ++t) {
    const int d1 = t % 3, d2 = (t + 1) % 2, d3 = t % 2;
    const Vec<F> a = random_vec(f, alg.dim(d1), rng), b = random_vec(f, alg.dim(d2), rng),
                 c = random_vec(f, alg.dim(d3), rng);
    CHECK(alg.product(alg.product(a, d1, b, d2), d1 + d2, c, d3) ==
          alg.product(a, d1, alg.product(b, d2, c, d3), d2 + d3));
    CHECK(alg.product(alg.unit(), 0, b, d2) == b);
    CHECK(alg.product(b, d2, alg.unit(), 0) == b);
  }
  // the product is composition
  const auto& P1 = B.pieces[1];
  const auto& P2 = B.pieces[2];
  const Vec<F> a = random_vec(f, P1.dim(), rng), b = random_vec(f, P1.dim(), rng);
  const Hom<F> ha = P1.element(a), hb = P1.element(b);
  CHECK(P2.element(alg.product(a, 1, b, 1)).flat() == compose(hb, ha).flat());
}

TEST_CASE("degree zero part and its quiver") {
  const auto& B = example_b();
  const auto B0 = degree_zero_algebra<F>(*B.algebra);
  CHECK(B0.dim() == 9);
  CHECK(B0.is_associative());
  CHECK(B0.radical().rows() == 4);
  CHECK(B0.radical_power(2).rows() == 0);
  const auto& ids = B0.idempotents();
  CHECK(ids.size() == 5);
  const Quiver q = B0.quiver();
  CHECK(q.vertices.size() == 5);
  CHECK(q.num_arrows() == 4);
  CHECK_FALSE(q.has_loops());
  CHECK(B0.dim() == q.vertices.size() + q.num_arrows());
  std::size_t sink = 5;
  for (std::size_t v = 0; v < 5; ++v)
    if (q.in_degree(v) == 4) sink = v;
  REQUIRE(sink < 5);
  CHECK(q.out_degree(sink) == 0);
  for (std::size_t v = 0; v < 5; ++v)
    if (v != sink) CHECK(q.out_degree(v) == 1);
  // the sink is the free summand: its idempotent cuts out a copy of A
  const Hom<F> e = B.pieces[0].element(ids[sink]);
  for (int d = 0; d <= 3; ++d) CHECK(rank(F(13), e.matrix(d)) == A12()->dim(d));

  Quiver target;
  target.vertices = {"a", "b", "c", "d", "e"};
  for (std::size_t s = 1; s <= 4; ++s) target.arrows.push_back({s, 0, 1});
  CHECK(quivers_match(q, target));
}

TEST_CASE("small endomorphism algebras") {
  auto A = A12();
  auto R = regular_module<F>(A);
  auto EA = endomorphism_algebra<F>(R, kWin);
  for (int n = 0; n <= 4; ++n) CHECK(EA.algebra->dim(n) == A->dim(n));
  CHECK(check_nonnegative(EA));

  auto E2 = endomorphism_algebra<F>(direct_sum<F>({R, shift_module<F>(R, 1)}), kWin);
  CHECK_FALSE(check_nonnegative(E2));
  CHECK(E2.negative_dims.at(-1) == 1);

  auto X1 = corpus::cone_module(A, 0);
  auto E11 = endomorphism_algebra<F>(direct_sum<F>({X1, X1}), kWin);
  CHECK(E11.algebra->dim(0) == 4);
  CHECK(degree_zero_algebra<F>(*E11.algebra).idempotents().size() == 2);
}

TEST_CASE("opposite side gives the opposite algebra") {
  auto A = A12();
  const auto& B = example_b();
  auto Xd = dual_module<F>(B.module);
  auto Bd = endomorphism_algebra<F>(Xd, Window{-6, 6, 4, 4});
  for (int n = 0; n <= 3; ++n) CHECK(Bd.algebra->dim(n) == B.algebra->dim(n));
  const Quiver q = degree_zero_algebra<F>(*Bd.algebra).quiver();
  Quiver rev = degree_zero_algebra<F>(*B.algebra).quiver();
  for (auto& a : rev.arrows) std::swap(a.src, a.dst);
  CHECK(quivers_match(q, rev));
}

TEST_CASE("AS-regular over the degree zero part") {
  const auto& B = example_b();
  auto rep = as_regular_over_r_check<F>(B.algebra, 2, 1, kWin);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.terminated);
  REQUIRE(rep.ext.size() == 3);
  CHECK_FALSE(rep.ext[0].any_nonzero());
  CHECK_FALSE(rep.ext[1].any_nonzero());
  CHECK(rep.ext[2].dims.at(-1) == 9);
  CHECK(rep.ext[2].dims.at(-2) == 0);

  // End(A) = A is not regular
  auto EA = endomorphism_algebra<F>(regular_module<F>(A12()), kWin);
  auto rA = as_regular_over_r_check<F>(EA.algebra, 2, 1, kWin);
  CHECK_FALSE(rA.terminated);
  CHECK(rA.verdict == Verdict::Fail);

  // commutative polynomial ring in two variables
  auto P = two_var({"y*x - x*y"}, 10);
  auto T = TabulatedAlgebra<F>::from_oracle(*P, 8);
  auto rP = as_regular_over_r_check<F>(T, 2, 2, kWin);
  CHECK(rP.verdict == Verdict::Pass);
  CHECK(rP.ext[2].dims.at(-2) == 1);
}

TEST_CASE("AS-Gorenstein test") {
  CHECK(as_gorenstein_check<F>(A12(), 2, 1, kWin).verdict == Verdict::Pass);
  CHECK(as_gorenstein_check<F>(corpus::s_algebra(12), 3, 3, kWin).verdict == Verdict::Pass);
  CHECK(as_gorenstein_check<F>(A12(), 2, 2, kWin).verdict == Verdict::Fail);
  // k<x,y>/(xy, yx) = k[x,y]/(xy) is a hypersurface: Gorenstein with ell = 0
  auto N = two_var({"x*y", "y*x"}, 12);
  for (int ell = -2; ell <= 3; ++ell)
    CHECK(as_gorenstein_check<F>(N, 1, ell, kWin).verdict ==
          (ell == 0 ? Verdict::Pass : Verdict::Fail));
  // the socle of k<x,y>/(x,y)^2 is two-dimensional
  auto Z = two_var({"x*x", "x*y", "y*x", "y*y"}, 12);
  for (int d = 0; d <= 2; ++d)
    for (int ell = -2; ell <= 3; ++ell)
      CHECK(as_gorenstein_check<F>(Z, d, ell, kWin).verdict == Verdict::Fail);
  // d beyond homological_max cannot be reached
  CHECK(as_gorenstein_check<F>(corpus::s_algebra(12), 3, 3, Window{-6, 6, 2, 8}).verdict ==
        Verdict::Inconclusive);
}
