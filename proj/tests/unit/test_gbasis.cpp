#include "doctest.h"

#include <map>
#include <random>

#include "corpus.hpp"
#include "ncg/linalg.hpp"

using namespace ncg;
using F = PrimeField;
using Poly = NcPoly<F>;

namespace {

std::vector<Word> words_of_degree(const MonomialOrder& ord, int d) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self, int rem) -> void {
    if (rem == 0) {
      out.push_back(w);
      return;
    }
    for (int g = 0; g < static_cast<int>(ord.num_generators()); ++g) {
      if (ord.generator_degree(g) > rem) continue;
      w.push_back(g);
      self(self, rem - ord.generator_degree(g));
      w.pop_back();
    }
  };
  rec(rec, d);
  return out;
}

// Independent oracle: dim of the degree-d piece = #words - rank span{u r v}.
std::size_t oracle_dim(const Presentation<F>& pres, int d) {
  const auto& ord = pres.free()->order();
  const auto words = words_of_degree(ord, d);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  const F& f = pres.field();
  Matrix<F> rows = Matrix<F>::with_cols(words.size());
  for (const auto& r : pres.relations()) {
    const int t = r.degree();
    if (t > d) continue;
    for (int a = 0; a <= d - t; ++a)
      for (const auto& u : words_of_degree(ord, a))
        for (const auto& v : words_of_degree(ord, d - t - a)) {
          Vec<F> row(words.size(), 0);
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

Poly random_homogeneous(const FreeAlgebraPtr<F>& ctx, std::mt19937_64& rng, int d) {
  std::vector<Poly::Term> terms;
  for (int i = 0; i < 4; ++i) {
    Word w;
    for (int j = 0; j < d; ++j) w.push_back(static_cast<int>(rng() % 3));
    terms.emplace_back(w, ctx->field().random(rng));
  }
  return Poly(ctx, terms);
}

}  // namespace

TEST_CASE("commutative polynomial ring in two variables") {
  auto ctx = make_free_algebra<F>(F(13), std::vector<std::string>{"x", "y"},
                                              std::vector<int>{1, 1});
  auto pres = corpus::presentation(ctx, {"y*x - x*y"});
  auto gb = TruncatedGB<F>::compute(pres, 4);
  REQUIRE(gb.elements().size() == 1);
  CHECK(gb.elements()[0] == parse_poly(ctx, "y*x - x*y"));
  CHECK(gb.complete_through() == 4);
  for (int d = 0; d <= 4; ++d) CHECK(gb.normal_words(d).size() == static_cast<std::size_t>(d + 1));
  CHECK(gb.normal_form(parse_poly(ctx, "y*x")) == parse_poly(ctx, "x*y"));
}

TEST_CASE("corpus algebras: normal words match the row-reduction oracle") {
  auto ctx = corpus::xyz();
  auto s = corpus::presentation(ctx, corpus::s_relations());
  auto a = corpus::presentation(ctx, corpus::a_relations());
  auto gs = TruncatedGB<F>::compute(s, 6);
  auto ga = TruncatedGB<F>::compute(a, 6);
  const std::size_t sd[] = {1, 3, 6, 10, 15, 21, 28};
  for (int d = 0; d <= 6; ++d) {
    CHECK(gs.normal_words(d).size() == sd[d]);
    CHECK(ga.normal_words(d).size() == static_cast<std::size_t>(2 * d + 1));
  }
  for (int d = 0; d <= 4; ++d) {
    CHECK(oracle_dim(s, d) == gs.normal_words(d).size());
    CHECK(oracle_dim(a, d) == ga.normal_words(d).size());
  }
  CHECK(gs.normal_words(1) == std::vector<Word>{{2}, {1}, {0}});
  CHECK(gs.normal_form(parse_poly(ctx, "x*z + z*x")).is_zero());
  CHECK(ga.normal_form(parse_poly(ctx, "y^2")) == parse_poly(ctx, "-x^2"));
  CHECK_THROWS_AS(gs.normal_words(7), Error);
  CHECK_THROWS_AS(gs.normal_form(parse_poly(ctx, "x^7")), Error);
}

TEST_CASE("gb invariants") {
  auto ctx = corpus::xyz();
  auto a = corpus::presentation(ctx, corpus::a_relations());
  auto gb = TruncatedGB<F>::compute(a, 6);
  // Inter-reduced and monic with distinct leading words.
  for (std::size_t i = 0; i < gb.elements().size(); ++i) {
    const auto& g = gb.elements()[i];
    CHECK(g.leading_coeff() == 1);
    CHECK(g.is_homogeneous());
    for (std::size_t k = 1; k < g.terms().size(); ++k) CHECK(gb.is_normal(g.terms()[k].first));
    for (std::size_t j = 0; j < gb.elements().size(); ++j)
      if (i != j) CHECK(gb.elements()[j].leading_word() != g.leading_word());
  }
  // Every relation lies in the ideal.
  for (const auto& r : a.relations()) CHECK(gb.normal_form(r).is_zero());
  // Determinism.
  auto again = TruncatedGB<F>::compute(a, 6);
  CHECK(again.elements() == gb.elements());
}

TEST_CASE("normal form is idempotent and multiplicative") {
  auto ctx = corpus::xyz();
  auto gb = TruncatedGB<F>::compute(corpus::presentation(ctx, corpus::a_relations()), 6);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    const int d1 = static_cast<int>(rng() % 4), d2 = static_cast<int>(rng() % 3);
    Poly f = random_homogeneous(ctx, rng, d1), g = random_homogeneous(ctx, rng, d2);
    const Poly nf = gb.normal_form(f);
    CHECK(gb.normal_form(nf) == nf);
    CHECK(gb.normal_form(f * g) == gb.normal_form(gb.normal_form(f) * gb.normal_form(g)));
    CHECK(gb.normal_form(f + g.scaled(3)) == gb.normal_form(f) + gb.normal_form(g).scaled(3));
  }
}

TEST_CASE("presentation errors") {
  auto ctx = corpus::xyz();
  try {
    corpus::presentation(ctx, {"x*y + y*x - z^3"});
    FAIL("expected NonHomogeneous");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHomogeneous);
  }
  auto s = corpus::presentation(ctx, corpus::s_relations());
  try {
    TruncatedGB<F>::compute(s, 1);
    FAIL("expected TruncationTooLow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationTooLow);
  }
}

TEST_CASE("free algebra in one variable and weighted degrees") {
  auto one = make_free_algebra<F>(F(13), std::vector<std::string>{"t"},
                                              std::vector<int>{1});
  auto gb = TruncatedGB<F>::compute(Presentation<F>(one, {}), 5);
  for (int d = 0; d <= 5; ++d) CHECK(gb.normal_words(d).size() == 1);

  auto w = make_free_algebra<F>(F(13), std::vector<std::string>{"a", "b"},
                                            std::vector<int>{1, 2});
  auto pres = corpus::presentation(w, {"b*a - a*b"});
  auto gw = TruncatedGB<F>::compute(pres, 6);
  for (int d = 0; d <= 6; ++d) CHECK(gw.normal_words(d).size() == oracle_dim(pres, d));
  CHECK(gw.normal_words(4).size() == 3);
}
