// Acceptance checks AC1..AC11.  Each prints one line:
//   AC<n> PASS|FAIL <seconds>s (limit <L>s) <details>
// Usage: acceptance [AC1 AC2 ...]   (no arguments runs all of them)

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ncg/endo.hpp"
#include "ncg/koszul.hpp"

using namespace ncg;
using F = PrimeField;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

const Window kWin{};

FreeAlgebraPtr<F> xyz() {
  return make_free_algebra<F>(F(13), std::vector<std::string>{"x", "y", "z"},
                              std::vector<int>{1, 1, 1});
}

Presentation<F> pres(const FreeAlgebraPtr<F>& free, const std::vector<std::string>& rels) {
  std::vector<NcPoly<F>> polys;
  for (const auto& r : rels) polys.push_back(parse_poly(free, r));
  return Presentation<F>(free, polys);
}

const std::vector<std::string> kS{"x*y + y*x - z^2", "x*z + z*x", "y*z + z*y"};

std::vector<std::string> a_rels() {
  auto r = kS;
  r.push_back("x^2 + y^2");
  return r;
}

std::map<std::string, F::Elem> constants() { return {{"i", root_of_unity(F(13), 4)}}; }

PresentedPtr<F> S12() {
  static auto S = PresentedAlgebra<F>::build(pres(xyz(), kS), 12, "S");
  return S;
}

PresentedPtr<F> A12() {
  static auto A = PresentedAlgebra<F>::build(pres(xyz(), a_rels()), 12, "A");
  return A;
}

ModulePtr<F> cone(int k) {
  static const char* forms[] = {"x - y + z", "x - y - z", "x + y + i*z", "x + y - i*z"};
  auto A = A12();
  return cyclic_module<F>(A, {A->parse(forms[k], constants())}, "X" + std::to_string(k + 1));
}

ModulePtr<F> residue(const PresentedPtr<F>& A) {
  return cyclic_module<F>(A, {A->parse("x"), A->parse("y"), A->parse("z")}, "k");
}

std::vector<ModulePtr<F>> x_parts() {
  std::vector<ModulePtr<F>> parts{regular_module<F>(A12(), 0, "R")};
  for (int k = 0; k < 4; ++k) parts.push_back(cone(k));
  return parts;
}

const EndoAlgebra<F>& example_b() {
  static const EndoAlgebra<F> B = endomorphism_algebra<F>(direct_sum<F>(x_parts(), "X"), kWin);
  return B;
}

std::vector<Word> words_of_degree(std::size_t n, int d) {
  std::vector<Word> out{Word{}};
  for (int k = 0; k < d; ++k) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (std::size_t g = 0; g < n; ++g) {
        Word v = w;
        v.push_back(static_cast<int>(g));
        next.push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

// dim of the degree-d piece as #words - rank of span{u r v}, for degree-1 generators.
std::size_t rowreduce_dim(const Presentation<F>& p, int d) {
  const std::size_t n = p.free()->order().num_generators();
  const auto words = words_of_degree(n, d);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  const F& f = p.field();
  Matrix<F> rows = Matrix<F>::with_cols(words.size());
  for (const auto& r : p.relations()) {
    const int t = r.degree();
    for (int a = 0; a + t <= d; ++a)
      for (const auto& u : words_of_degree(n, a))
        for (const auto& v : words_of_degree(n, d - t - a)) {
          Vec<F> row(words.size(), f.zero());
          for (const auto& [w, c] : r.terms()) {
            Word x = u;
            x.insert(x.end(), w.begin(), w.end());
            x.insert(x.end(), v.begin(), v.end());
            row[index.at(x)] = f.add(row[index.at(x)], c);
          }
          rows.append_row(row);
        }
  }
  return words.size() - rank(f, rows);
}

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Vec<F> random_vec(const F& f, std::size_t n, std::mt19937_64& rng) {
  Vec<F> v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  const auto S = S12();
  const auto A = A12();
  const auto hs = hilbert_series(*S, 6);
  const auto ha = hilbert_series(*A, 6);
  std::vector<std::int64_t> sbin, aodd;
  for (int d = 0; d <= 6; ++d) {
    sbin.push_back(binom(d + 2, 2));
    aodd.push_back(2 * d + 1);
  }
  o.require(hs.coeffs == IntPoly{1, 3, 6, 10, 15, 21, 28}, "S dims " + join(hs.coeffs));
  o.require(hs.coeffs == sbin, "S dims vs binomial(d+2,2)");
  o.require(hs.matches(parse_rational_function("1/(1-t)^3")), "S series 1/(1-t)^3");
  o.require(ha.coeffs == aodd, "A dims " + join(ha.coeffs));
  o.require(ha.matches(parse_rational_function("(1+t)/(1-t)^2")), "A series (1+t)/(1-t)^2");
  const auto gs = TruncatedGB<F>::compute(S->presentation(), 4);
  const auto ga = TruncatedGB<F>::compute(A->presentation(), 4);
  for (int d = 0; d <= 4; ++d) {
    o.require(rowreduce_dim(S->presentation(), d) == gs.normal_words(d).size(),
              "S oracle at degree " + std::to_string(d));
    o.require(rowreduce_dim(A->presentation(), d) == ga.normal_words(d).size(),
              "A oracle at degree " + std::to_string(d));
  }
  o.note("S " + join(hs.coeffs) + ", A " + join(ha.coeffs) + ", row-reduction oracle d<=4");
  return o;
}

Outcome ac2() {
  Outcome o;
  auto Ad = PresentedAlgebra<F>::build(quadratic_dual(A12()->presentation()), 12, "A!");
  const auto c = clifford_algebra(*Ad, Ad->parse("x^2"), 12);
  const auto& C = *c.algebra;
  o.require(C.dim() == 4, "dim C(A) = " + std::to_string(C.dim()));
  o.require(C.is_commutative(), "commutative");
  o.require(C.is_associative() && C.is_unital(), "associative and unital");
  const auto dec = commutative_semisimple_decompose(C);
  o.require(dec.block_dims == std::vector<std::size_t>{1, 1, 1, 1},
            "blocks " + join(dec.block_dims));
  // the idempotents are orthogonal and sum to 1
  const F f = C.field();
  Vec<F> sum(C.dim(), f.zero());
  for (std::size_t a = 0; a < dec.idempotents.size(); ++a) {
    for (std::size_t b = 0; b < dec.idempotents.size(); ++b) {
      const Vec<F> p = C.mul(dec.idempotents[a], dec.idempotents[b]);
      o.require(a == b ? p == dec.idempotents[a] : is_zero_vec(f, std::span<const F::Elem>(p)),
                "orthogonal idempotents");
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f.add(sum[i], dec.idempotents[a][i]);
  }
  o.require(sum == C.unit(), "idempotents sum to 1");
  o.note("dim " + std::to_string(C.dim()) + ", stable degree " + std::to_string(c.stable_degree) +
         ", blocks " + join(dec.block_dims));
  return o;
}

Outcome ac3() {
  Outcome o;
  auto free = xyz();
  const std::vector<NcPoly<F>> polys{parse_poly(free, "x*y + z^2"), parse_poly(free, "x^2 - y^2")};
  const auto pts = enumerate_projective_points(polys);
  // brute force over the affine cone, divided by the p - 1 scalings
  const F f(13);
  std::size_t affine = 0;
  for (std::uint64_t a = 0; a < 13; ++a)
    for (std::uint64_t b = 0; b < 13; ++b)
      for (std::uint64_t c = 0; c < 13; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const auto xy = f.mul(f.from_int(a), f.from_int(b));
        const bool z1 = f.is_zero(f.add(xy, f.mul(f.from_int(c), f.from_int(c))));
        const bool z2 = f.is_zero(f.sub(f.mul(f.from_int(a), f.from_int(a)),
                                        f.mul(f.from_int(b), f.from_int(b))));
        if (z1 && z2) ++affine;
      }
  o.require(pts.size() == 4, "count " + std::to_string(pts.size()));
  o.require(affine == 4 * 12, "affine oracle " + std::to_string(affine));
  for (const auto& p : pts)
    for (const auto& g : polys)
      o.require(f.is_zero(evaluate_commutative(g, p)), "point is a zero");
  o.note(std::to_string(pts.size()) + " points, affine oracle " + std::to_string(affine) + "/12");
  return o;
}

Outcome ac4() {
  Outcome o;
  const Window w{-6, 6, 3, 8};
  std::vector<ModulePtr<F>> X;
  for (int k = 0; k < 4; ++k) X.push_back(cone(k));
  for (int k = 0; k < 4; ++k) {
    const auto rep = is_mcm<F>(X[k], w);
    o.require(rep.verdict == Verdict::Pass, X[k]->name() + " MCM");
    o.require(rep.ext.size() == 3, X[k]->name() + " Ext^1..3 computed");
    for (const auto& e : rep.ext)
      o.require(e.fully_certified() && !e.any_nonzero(),
                X[k]->name() + " Ext^" + std::to_string(e.i) + " zero on [-6,6]");
    o.require(is_indecomposable<F>(X[k], w), X[k]->name() + " indecomposable");
  }
  int pairs = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      for (int s = -3; s <= 3; ++s) {
        const auto r = are_isomorphic<F>(X[i], shift_module<F>(X[j], s), w);
        o.require(r.status == IsoResult<F>::Status::NotIsomorphic,
                  "X" + std::to_string(i + 1) + " vs X" + std::to_string(j + 1) + "(" +
                      std::to_string(s) + ")");
        ++pairs;
      }
    }
  o.note("4 modules MCM and indecomposable, " + std::to_string(pairs) +
         " shifted pairs certified non-isomorphic");
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto& B = example_b();
  std::vector<std::int64_t> dims;
  for (int n = 0; n <= 3; ++n) dims.push_back(static_cast<std::int64_t>(B.algebra->dim(n)));
  o.require(dims == std::vector<std::int64_t>{9, 27, 45, 63}, "B_0..B_3 = " + join(dims));
  const auto series = expand_series(parse_rational_function("9(1+t)/(1-t)^2"), 3);
  o.require(dims == series, "series 9(1+t)/(1-t)^2");
  o.require(B.negative_dims.count(-1) && B.negative_dims.at(-1) == 0, "B_-1 = 0");
  o.require(B.negative_dims.count(-2) && B.negative_dims.at(-2) == 0, "B_-2 = 0");
  o.require(check_nonnegative(B), "B_<0 = 0 on the window");
  o.note("B_0..B_3 " + join(dims) + ", B_-1 = B_-2 = 0");
  return o;
}

// Number of paths in an acyclic quiver, including the trivial ones.
std::size_t path_algebra_dim(const Quiver& q) {
  const std::size_t n = q.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n, std::vector<std::size_t>(n, 0));
  for (const auto& a : q.arrows) adj[a.src][a.dst] += a.mult;
  std::vector<std::vector<std::size_t>> cur = adj;
  std::size_t total = n;
  for (std::size_t len = 1; len <= n; ++len) {
    std::size_t s = 0;
    for (const auto& r : cur)
      for (auto c : r) s += c;
    total += s;
    std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) next[i][j] += cur[i][k] * adj[k][j];
    cur = next;
  }
  return total;
}

Outcome ac6() {
  Outcome o;
  const auto& B = example_b();
  const auto B0 = degree_zero_algebra<F>(*B.algebra);
  o.require(B0.dim() == 9, "dim B_0 = " + std::to_string(B0.dim()));
  o.require(B0.radical().rows() == 4, "dim rad = " + std::to_string(B0.radical().rows()));
  o.require(B0.radical_power(2).rows() == 0, "rad^2 = 0");
  o.require(B0.idempotents().size() == 5, "5 primitive idempotents");
  const Quiver q = B0.quiver();
  o.require(q.vertices.size() == 5, "5 vertices");
  o.require(q.num_arrows() == 4, "4 arrows");
  std::map<std::size_t, std::size_t> sources, targets;
  for (const auto& a : q.arrows) {
    sources[a.src] += a.mult;
    targets[a.dst] += a.mult;
  }
  o.require(sources.size() == 4, "4 distinct sources");
  for (const auto& [v, m] : sources) o.require(m == 1, "one arrow per source");
  o.require(targets.size() == 1 && !sources.count(targets.begin()->first), "one common sink");
  o.require(!q.has_loops(), "no loops");
  const std::size_t kq = path_algebra_dim(q);
  o.require(kq == 9, "dim kQ = " + std::to_string(kq));
  o.note("dim 9, rad 4, rad^2 0, 5 idempotents, 4 arrows into one sink, dim kQ " +
         std::to_string(kq));
  return o;
}

void gorenstein_side(Outcome& o, const std::vector<ExtDims>& ext, const std::string& side) {
  std::map<int, const ExtDims*> by_i;
  for (const auto& e : ext) by_i[e.i] = &e;
  for (int i = 0; i <= 3; ++i) {
    const std::string tag = side + " Ext^" + std::to_string(i);
    if (!by_i.count(i)) {
      o.require(false, tag + " computed");
      continue;
    }
    const auto& e = *by_i[i];
    o.require(e.fully_certified(), tag + " certified");
    for (const auto& [s, n] : e.dims) {
      const std::size_t want = (i == 2 && s == -1) ? 1 : 0;
      o.require(n == want, tag + " in degree " + std::to_string(s));
    }
    if (i == 2) o.require(e.dims.count(-1) && e.dims.at(-1) == 1, tag + " = k(1)");
  }
}

Outcome ac7() {
  Outcome o;
  const auto rep = as_gorenstein_check<F>(A12(), 2, 1, kWin);
  o.require(rep.verdict == Verdict::Pass, "verdict " + to_string(rep.verdict));
  gorenstein_side(o, rep.right, "right");
  gorenstein_side(o, rep.left, "left");
  o.note("Ext^i(k,A) = 0,0,k(1),0 on both sides");
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto& B = example_b();
  const auto rep = as_regular_over_r_check<F>(B.algebra, 2, 1, kWin);
  o.require(rep.verdict == Verdict::Pass, "verdict " + to_string(rep.verdict));
  o.require(rep.ext.size() == 3, "Ext^0..2 computed");
  for (const auto& e : rep.ext) {
    o.require(e.fully_certified(), "Ext^" + std::to_string(e.i) + " certified");
    for (const auto& [s, n] : e.dims) {
      const std::size_t want = (e.i == 2 && s == -1) ? 9 : 0;
      o.require(n == want, "Ext^" + std::to_string(e.i) + " in degree " + std::to_string(s));
    }
  }
  o.require(rep.ext.size() == 3 && rep.ext[2].dims.count(-1) && rep.ext[2].dims.at(-1) == 9,
            "Ext^2 = 9 at -1");
  o.require(rep.terminated && rep.shifts.size() == 3, "resolution stops after step 2");
  o.note("Ext^2_B(B_0,B) = 9 at -1, resolution length " + std::to_string(rep.shifts.size() - 1));
  return o;
}

Outcome ac9() {
  Outcome o;
  const Window w{0, 4, 4, 8};
  const auto parts = x_parts();
  const std::vector<ModulePtr<F>> mods{regular_module<F>(A12(), 0, "A"), cone(0),
                                       residue(A12())};
  for (const auto& M : mods) {
    const auto rep = eval_iso_check<F>(parts, M, w);
    o.require(rep.verdict == Verdict::Pass, M->name() + " verdict " + to_string(rep.verdict));
    std::vector<int> seen;
    for (const auto& d : rep.degrees) {
      o.require(d.iso && d.tensor_dim == M->dim(d.degree),
                M->name() + " degree " + std::to_string(d.degree));
      seen.push_back(d.degree);
    }
    o.require(seen == std::vector<int>{0, 1, 2, 3, 4}, M->name() + " degrees " + join(seen));
  }
  o.note("A, X1, k isomorphic in degrees 0..4");
  return o;
}

// ---------------------------------------------------------------------------
// AC10: property suites over the corpus

struct Props {
  std::size_t run = 0;
  std::vector<std::string> failed;
  void check(bool ok, const std::string& what) {
    ++run;
    if (!ok) failed.push_back(what);
  }
};

NcPoly<F> random_poly(const FreeAlgebraPtr<F>& free, std::mt19937_64& rng, int d) {
  const std::size_t n = free->order().num_generators();
  std::vector<NcPoly<F>::Term> terms;
  for (int k = 0; k < 4; ++k) {
    Word w;
    for (int j = 0; j < d; ++j) w.push_back(static_cast<int>(rng() % n));
    terms.emplace_back(w, free->field().random(rng));
  }
  return NcPoly<F>(free, terms);
}

Presentation<F> random_quadratic(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 3;
  std::vector<std::string> names;
  for (std::size_t g = 0; g < n; ++g) names.push_back("g" + std::to_string(g));
  auto free = make_free_algebra<F>(F(13), names, std::vector<int>(n, 1));
  std::vector<NcPoly<F>> rels;
  for (std::size_t r = 0, nr = rng() % (n * n + 1); r < nr; ++r)
    rels.push_back(random_poly(free, rng, 2));
  return Presentation<F>(free, rels);
}

void algebra_props(Props& P, const Algebra<F>& alg, int top, std::mt19937_64& rng) {
  const F f = alg.field();
  for (int t = 0; t < 8; ++t) {
    const int d1 = rng() % (top / 3 + 1), d2 = rng() % (top / 3 + 1), d3 = rng() % (top / 3 + 1);
    const auto a = random_vec(f, alg.dim(d1), rng), b = random_vec(f, alg.dim(d2), rng),
               c = random_vec(f, alg.dim(d3), rng);
    P.check(alg.product(alg.product(a, d1, b, d2), d1 + d2, c, d3) ==
                alg.product(a, d1, alg.product(b, d2, c, d3), d2 + d3),
            alg.name() + " associativity");
    P.check(alg.product(alg.unit(), 0, a, d1) == a && alg.product(a, d1, alg.unit(), 0) == a,
            alg.name() + " unit");
  }
}

void resolution_props(Props& P, const ModulePtr<F>& M) {
  const auto R = FreeResolution<F>::compute(M, 3, kWin);
  const F f = M->field();
  const int top = std::min(R.complete_internal_through(), 6);
  for (int d = 0; d <= top; ++d) {
    P.check(rank(f, R.differential_matrix(0, d)) == M->dim(d), M->name() + " P_0 onto M");
    for (std::size_t i = 1; i < R.length(); ++i)
      P.check(is_zero_matrix(f, mul(f, R.differential_matrix(i, d), R.differential_matrix(i - 1, d))),
              M->name() + " d^2 = 0");
    for (std::size_t i = 0; i + 1 < R.length(); ++i)
      P.check(rank(f, R.differential_matrix(i, d)) + rank(f, R.differential_matrix(i + 1, d)) ==
                  R.free(i).dim(d),
              M->name() + " exact at P_" + std::to_string(i));
  }
}

Outcome ac10() {
  Outcome o;
  Props P;
  std::mt19937_64 rng(20240601);
  const auto S = S12();
  const auto A = A12();
  auto P2 = PresentedAlgebra<F>::build(
      pres(make_free_algebra<F>(F(13), std::vector<std::string>{"x", "y"}, std::vector<int>{1, 1}),
           {"x*y - y*x"}),
      10, "k[x,y]");
  auto Sd = PresentedAlgebra<F>::build(quadratic_dual(S->presentation()), 10, "S!");
  auto Ad = PresentedAlgebra<F>::build(quadratic_dual(A->presentation()), 10, "A!");
  const std::vector<PresentedPtr<F>> algebras{S, A, A->opposite(), P2, Sd, Ad};

  // normal forms
  for (const auto& alg : algebras) {
    const auto& gb = alg->gb();
    const auto free = alg->free();
    for (int t = 0; t < 10; ++t) {
      const auto a = random_poly(free, rng, 1 + t % 3), b = random_poly(free, rng, 1 + (t + 1) % 3);
      const auto na = gb.normal_form(a), nb = gb.normal_form(b);
      P.check(gb.normal_form(na) == na, alg->name() + " NF idempotent");
      P.check(gb.normal_form(a * b) == gb.normal_form(na * nb), alg->name() + " NF multiplicative");
    }
  }

  // both algebra backends
  for (const auto& alg : algebras) {
    algebra_props(P, *alg, 9, rng);
    algebra_props(P, *TabulatedAlgebra<F>::from_oracle(*alg, 6), 6, rng);
  }
  algebra_props(P, *example_b().algebra, 6, rng);

  // resolutions
  std::vector<ModulePtr<F>> mods;
  for (int k = 0; k < 4; ++k) mods.push_back(cone(k));
  mods.push_back(residue(A));
  mods.push_back(regular_module<F>(A, 0, "A"));
  mods.push_back(direct_sum<F>(x_parts(), "X"));
  for (const auto& M : mods) resolution_props(P, M);
  resolution_props(P, residue(S));

  // Hom(A, M(s))_0 = M_s
  for (const auto& M : mods)
    for (int s = -3; s <= 6; ++s)
      P.check(HomSpace<F>::compute(regular_module<F>(A), M, s).dim() == M->dim(s),
              "Hom(A," + M->name() + "(" + std::to_string(s) + "))");

  // dim R + dim R^perp = n^2 and the Koszul pairing
  std::vector<Presentation<F>> quad{S->presentation(), A->presentation(), P2->presentation()};
  for (int t = 0; t < 20; ++t) quad.push_back(random_quadratic(rng));
  for (const auto& q : quad) {
    const auto qd = quadratic_data(q);
    P.check(qd.relations.dim() + quadratic_data(quadratic_dual(q)).relations.dim() == qd.n * qd.n,
            "dim R + dim R^perp");
  }
  for (const auto& alg : {S, A, P2}) {
    const int D = 8;
    auto dual = PresentedAlgebra<F>::build(quadratic_dual(alg->presentation()), D);
    IntPoly delta(D + 1, 0);
    delta[0] = 1;
    P.check(pair_with_negated(hilbert_series(*alg, D).coeffs, hilbert_series(*dual, D).coeffs, D) ==
                delta,
            alg->name() + " Koszul pairing");
  }

  // End over the opposite side
  const auto& B = example_b();
  auto Bd = endomorphism_algebra<F>(dual_module<F>(B.module), Window{-6, 6, 4, 4});
  for (int n = 0; n <= 3; ++n)
    P.check(Bd.algebra->dim(n) == B.algebra->dim(n), "End(X^dagger)_" + std::to_string(n));

  o.require(P.failed.empty(), std::to_string(P.failed.size()) + " failures, first: " +
                                  (P.failed.empty() ? "" : P.failed.front()));
  o.note(std::to_string(P.run - P.failed.size()) + "/" + std::to_string(P.run) +
         " property checks");
  return o;
}

// ---------------------------------------------------------------------------

Outcome ac11() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const std::string tag = std::to_string(::getpid());
  std::vector<std::string> outputs;
  for (int run = 1; run <= 2; ++run) {
    const fs::path json = dir / ("ncg_acceptance_" + tag + "_" + std::to_string(run) + ".json");
    const std::string cmd = std::string("\"") + NCG_BINARY + "\" verify-example --json \"" +
                            json.string() + "\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.require(code == 0, "run " + std::to_string(run) + " exit " + std::to_string(code));
    std::ifstream in(json, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    outputs.push_back(ss.str());
    fs::remove(json);
  }
  o.require(!outputs[0].empty(), "JSON written");
  o.require(outputs[0] == outputs[1], "byte-identical JSON");
  const bool all_stages = outputs[0].find("\"stage\": 11") != std::string::npos;
  o.require(all_stages, "11 stages reported");
  o.note("exit 0 twice, " + std::to_string(outputs[0].size()) + " identical bytes");
  return o;
}

struct Criterion {
  std::string id;
  double limit;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"AC1", 5, ac1},   {"AC2", 5, ac2},    {"AC3", 1, ac3},     {"AC4", 60, ac4},
      {"AC5", 120, ac5}, {"AC6", 30, ac6},   {"AC7", 60, ac7},    {"AC8", 300, ac8},
      {"AC9", 60, ac9},  {"AC10", 600, ac10}, {"AC11", 600, ac11},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit) {
      out.pass = false;
      out.note("over time limit");
    }
    char head[96];
    std::snprintf(head, sizeof head, "%-4s %s %8.2fs (limit %gs) ", c.id.c_str(),
                  out.pass ? "PASS" : "FAIL", secs, c.limit);
    std::cout << head << out.detail << std::endl;
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
