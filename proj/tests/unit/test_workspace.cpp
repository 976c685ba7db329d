#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ncg/workspace.hpp"

using namespace ncg;
using F = PrimeField;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kSmall = R"ws([field]
field = "GF(13)"

[algebra P]
generators = x, y
relations = "x*y - y*x"
)ws";

}  // namespace

TEST_CASE("built-in workspace") {
  const auto ws = parse_workspace(builtin_workspace_text());
  CHECK(ws.field == "GF(13)");
  CHECK(ws.constants.size() == 1);
  CHECK(ws.algebras.size() == 2);
  CHECK(ws.modules.size() == 6);
  CHECK(ws.automorphisms.size() == 1);
  CHECK(ws.window().lo == -6);
  CHECK(ws.window().cap == 8);
  const auto* A = ws.find_algebra("A");
  REQUIRE(A);
  CHECK(A->base == "S");
  CHECK(A->extra_relations == std::vector<std::string>{"x^2 + y^2"});
  CHECK(ws.find_module("X")->of.size() == 5);
}

TEST_CASE("serialization round trip") {
  const auto ws = parse_workspace(builtin_workspace_text());
  const std::string text = serialize_workspace(ws);
  const auto again = parse_workspace(text);
  CHECK(again == ws);
  CHECK(serialize_workspace(again) == text);

  // random workspaces built from a pool of homogeneous relations
  const std::vector<std::string> pool{"x*y - y*x", "x^2 + 3*y^2", "x*y + y*x - z^2",
                                      "x*z + z*x", "2*y*z", "z^2 - i*x*y", "x^2/2 - y*x"};
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    WorkspaceFile w;
    w.field = "GF(13)";
    w.constants.push_back({"i", "root_of_unity(4)"});
    if (rng() % 2) w.constants.push_back({"h", "1/2"});
    const int nalg = 1 + rng() % 3;
    for (int a = 0; a < nalg; ++a) {
      WorkspaceFile::AlgebraDecl d;
      d.name = "T" + std::to_string(a);
      if (a > 0 && rng() % 2) {
        d.base = "T" + std::to_string(rng() % a);
        d.extra_relations.push_back(pool[rng() % pool.size()]);
      } else {
        d.generators = {"x", "y", "z"};
        d.degrees = {1, 1, 1};
        for (int r = 0, nr = rng() % 4; r < nr; ++r) d.relations.push_back(pool[rng() % pool.size()]);
      }
      w.algebras.push_back(d);
    }
    WorkspaceFile::ModuleDecl m;
    m.name = "M";
    m.algebra = "T0";
    m.kind = "cyclic";
    m.relations = {"x + y", "z"};
    w.modules.push_back(m);
    WorkspaceFile::ModuleDecl fr;
    fr.name = "Fr";
    fr.algebra = "T0";
    fr.kind = "free";
    fr.shifts = {0, -1, 2};
    w.modules.push_back(fr);
    WorkspaceFile::ModuleDecl s;
    s.name = "Sum";
    s.kind = "sum";
    s.of = {"M", "Fr"};
    if (rng() % 2) s.shifts = {1, 0};
    w.modules.push_back(s);
    if (rng() % 2) w.hmax = 3;
    if (rng() % 2) w.lo = -4;
    const auto parsed = parse_workspace(serialize_workspace(w));
    CHECK(parsed == w);
  }
}

TEST_CASE("semantic errors") {
  CHECK(code_of(R"([algebra P]
generators = x, y, z
relations = "x*y + y*x - z^3"
)") == ErrorCode::NonHomogeneous);
  CHECK(code_of(R"([algebra P]
base = "T"
extra_relations = "x^2"
)") == ErrorCode::UnknownReference);
  CHECK(code_of(std::string(kSmall) + "[module M]\nalgebra = Q\nkind = cyclic\n") ==
        ErrorCode::UnknownReference);
  CHECK(code_of(std::string(kSmall) + "[module M]\nkind = sum\nof = M\n") ==
        ErrorCode::UnknownReference);
  CHECK(code_of(std::string(kSmall) + "[module M]\nalgebra = P\nkind = cyclic\nrelations = \"x + y^2\"\n") ==
        ErrorCode::NonHomogeneous);
  CHECK(code_of(std::string(kSmall) + "[automorphism s]\nalgebra = P\nimages = \"y\"\n") ==
        ErrorCode::InvalidAutomorphism);
  // an unknown constant is an expression parse error
  CHECK(code_of(std::string(kSmall) + "[module M]\nalgebra = P\nkind = cyclic\nrelations = \"x + j*y\"\n") ==
        ErrorCode::ParseError);
  CHECK(code_of("[field]\nfield = \"GF(7)\"\ni = \"root_of_unity(4)\"\n") == ErrorCode::NoSuchRoot);
}

TEST_CASE("syntax errors carry a position") {
  const std::string m1 = message_of("[algebra P]\ngenerators = x, y\nrelations = \"x*y\" \"y*x\"\n");
  CHECK(m1.find("line 3, column 19") != std::string::npos);
  CHECK(m1.find("expected ','") != std::string::npos);

  CHECK(code_of("[ring P]\n") == ErrorCode::ParseError);
  CHECK(message_of("[ring P]\n").find("expected field, algebra, module") != std::string::npos);
  CHECK(code_of("generators = x\n") == ErrorCode::ParseError);
  CHECK(code_of(std::string(kSmall) + "colour = red\n") == ErrorCode::ParseError);
  CHECK(code_of(std::string(kSmall) + "[module M]\nalgebra = P\nkind = ring\n") ==
        ErrorCode::ParseError);
  CHECK(code_of(std::string(kSmall) + "[algebra P]\nbase = P\n") == ErrorCode::ParseError);
  CHECK(code_of("[algebra P]\ngenerators = x\nrelations = \"x^2\n") == ErrorCode::ParseError);
  CHECK(code_of("[window]\nlo = a\n") == ErrorCode::ParseError);
  CHECK(code_of("[window]\nlo = 3\nhi = 1\n") == ErrorCode::InvalidArgument);
  CHECK(code_of("[algebra P]\ngenerators = x, y\ndegrees = 1\n") == ErrorCode::ParseError);
}

TEST_CASE("reference cycles") {
  const std::string text = std::string(kSmall) +
                           "[module M]\nkind = sum\nof = N\n[module N]\nkind = sum\nof = M\n";
  CHECK(code_of(text) == ErrorCode::UnknownReference);
  CHECK(message_of(text).find("cyclic") != std::string::npos);
}

TEST_CASE("comments and quoting") {
  const auto ws = parse_workspace(
      "# leading comment\n[algebra P]   # trailing\n  generators = x,y  # gens\n"
      "relations = \"x*y - y*x\" # quoted # inside\n");
  CHECK(ws.algebras[0].generators == std::vector<std::string>{"x", "y"});
  CHECK(ws.algebras[0].degrees == std::vector<int>{1, 1});
  CHECK(ws.algebras[0].relations == std::vector<std::string>{"x*y - y*x"});
}

TEST_CASE("constants") {
  const F f(13);
  const auto i = evaluate_constant(f, "root_of_unity(4)");
  CHECK(f.mul(i, i) == f.neg(1));
  CHECK(evaluate_constant(f, "1/2") == 7u);
  CHECK(evaluate_constant(f, "-3") == 10u);
  CHECK_THROWS_AS(evaluate_constant(f, "two"), Error);
  CHECK(evaluate_constant(RationalField(), "-3/6") == mpq_class(-1, 2));
}

TEST_CASE("session materialises the example") {
  const auto ws = parse_workspace(builtin_workspace_text());
  Session<F> s(ws, F(13), 10);
  auto A = s.algebra("A");
  auto Ac = corpus::a_algebra(10);
  auto S = s.algebra("S");
  auto Sc = corpus::s_algebra(10);
  for (int d = 0; d <= 10; ++d) {
    CHECK(A->dim(d) == Ac->dim(d));
    CHECK(S->dim(d) == Sc->dim(d));
  }
  CHECK(s.algebra("A") == A);
  for (int k = 0; k < 4; ++k) {
    auto M = s.module("X" + std::to_string(k + 1));
    auto C = corpus::cone_module(Ac, k);
    for (int d = 0; d <= 6; ++d) CHECK(M->dim(d) == C->dim(d));
  }
  CHECK(s.summands("X").size() == 5);
  CHECK(s.summands("X1").size() == 1);
  auto X = s.module("X");
  for (int d = 0; d <= 4; ++d) CHECK(X->dim(d) == A->dim(d) + 4 * (d + 1));
  // an algebra name gives its regular module
  CHECK(s.module("A")->dim(3) == A->dim(3));
  CHECK_THROWS_AS(s.module("Y"), Error);
  auto sigma = s.automorphism("flip");
  CHECK(sigma.images().size() == 3);

  CHECK_THROWS_AS(Session<F>(ws, F(7), 10), Error);
}
