#include "ncg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

#include "ncg/endo.hpp"
#include "ncg/koszul.hpp"
#include "ncg/workspace.hpp"

namespace ncg {

namespace {

int to_int(const std::string& s, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::InvalidArgument, what + " must be an integer, got '" + s + "'");
  return v;
}

Json window_json(const Window& w) {
  return Json{{"lo", w.lo}, {"hi", w.hi}, {"hmax", w.hmax}, {"cap", w.cap}};
}

Json ext_json(const ExtDims& e) {
  Json dims = Json::object();
  for (const auto& [s, n] : e.dims) dims[std::to_string(s)] = n;
  return Json{{"i", e.i},
              {"dims", dims},
              {"certified_hi", e.certified_hi},
              {"fully_certified", e.fully_certified()}};
}

Json ext_list(const std::vector<ExtDims>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(ext_json(e));
  return out;
}

Json quiver_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& a : q.arrows)
    arrows.push_back(Json{{"src", q.vertices[a.src]}, {"dst", q.vertices[a.dst]}, {"mult", a.mult}});
  return Json{{"vertices", q.vertices}, {"arrows", arrows}, {"num_arrows", q.num_arrows()}};
}

Json shifts_json(const std::vector<std::vector<int>>& shifts) {
  Json out = Json::array();
  for (const auto& s : shifts) out.push_back(s);
  return out;
}

template <class K>
Json vec_json(const K& f, const Vec<K>& v) {
  Json out = Json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<K, PrimeField>)
      out.push_back(x);
    else
      out.push_back(f.to_string(x));
  }
  return out;
}

std::string iso_status(int s) {
  static const char* names[] = {"isomorphic", "not isomorphic", "not found"};
  return names[s];
}

template <class K>
Verdict iso_verdict(const IsoResult<K>& r) {
  if (r.isomorphic()) return Verdict::Pass;
  return r.certified() ? Verdict::Fail : Verdict::Inconclusive;
}

bool soft_error(ErrorCode c) {
  return c == ErrorCode::WindowExceeded || c == ErrorCode::DegreeBeyondTruncation ||
         c == ErrorCode::IncompleteKernel;
}

IntPoly delta(int D) {
  IntPoly e(D + 1, 0);
  e[0] = 1;
  return e;
}

template <class K>
class Runner {
 public:
  Runner(const CommandOptions& opt, Session<K>& s, const Window& w, Json& checks)
      : opt_(opt), s_(s), w_(w), checks_(checks) {}

  Verdict verdict() const { return verdict_; }

  void run() {
    static const std::map<std::string, void (Runner::*)()> table{
        {"gb", &Runner::gb},
        {"hilbert", &Runner::hilbert},
        {"ext", &Runner::ext},
        {"hom", &Runner::hom},
        {"mcm", &Runner::mcm},
        {"indec", &Runner::indec},
        {"iso", &Runner::iso},
        {"cluster", &Runner::cluster},
        {"endo", &Runner::endo},
        {"quiver", &Runner::quiver},
        {"koszul-dual", &Runner::koszul_dual},
        {"clifford", &Runner::clifford},
        {"points", &Runner::points},
        {"asgorenstein", &Runner::asgorenstein},
        {"asregular", &Runner::asregular},
        {"eval-iso", &Runner::eval_iso},
        {"nu-stable", &Runner::nu_stable},
        {"verify-example", &Runner::verify_example},
    };
    auto it = table.find(opt_.command);
    if (it == table.end())
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + opt_.command + "'");
    (this->*(it->second))();
  }

 private:
  const std::string& arg(std::size_t i, const std::string& what) const {
    if (i >= opt_.args.size()) throw Error(ErrorCode::InvalidArgument, "missing " + what);
    return opt_.args[i];
  }
  int required(const std::optional<int>& v, const std::string& flag) const {
    if (!v) throw Error(ErrorCode::InvalidArgument, "missing --" + flag);
    return *v;
  }
  int D() const { return s_.truncation(); }

  void add(const std::string& name, Verdict v, Json evidence) {
    Json c{{"name", name}, {"verdict", to_string(v)}};
    for (auto& [k, val] : evidence.items()) c[k] = val;
    checks_.push_back(std::move(c));
    verdict_ = verdict_and(verdict_, v);
  }

  // "B0" names the degree-zero part of End(X) unless a module B0 exists.
  std::string endo_source(const std::string& name) const {
    if (name == "B0" && !s_.file().find_module("B0")) return "X";
    return name;
  }

  PresentedPtr<K> dual_algebra(const std::string& name) {
    return PresentedAlgebra<K>::build(quadratic_dual(s_.presentation(name), opt_.dual_sign), D(),
                                      name + "!");
  }

  static std::vector<std::size_t> dims_of(const Algebra<K>& A, int top) {
    std::vector<std::size_t> out;
    for (int d = 0; d <= top; ++d) out.push_back(A.dim(d));
    return out;
  }

  // ------------------------------------------------------------ commands

  void gb() {
    const auto& name = arg(0, "algebra");
    auto A = s_.algebra(name);
    Json elems = Json::array();
    for (const auto& g : A->gb().elements()) elems.push_back(g.to_string());
    add("groebner basis", Verdict::Pass,
        Json{{"algebra", name},
             {"complete_through", A->gb().complete_through()},
             {"size", elems.size()},
             {"elements", elems}});
  }

  void hilbert() {
    const auto& name = arg(0, "algebra");
    auto A = s_.algebra(name);
    const auto h = hilbert_series(*A, D());
    Json ev{{"algebra", name}, {"through", D()}, {"dims", h.coeffs}};
    if (!opt_.match) {
      add("hilbert series", Verdict::Pass, ev);
      return;
    }
    const auto expected = expand_series(parse_rational_function(*opt_.match), D());
    ev["match"] = *opt_.match;
    ev["expected"] = expected;
    add("hilbert series", expected == h.coeffs ? Verdict::Pass : Verdict::Fail, ev);
  }

  void hom() {
    auto M = s_.module(arg(0, "source module"));
    auto N = s_.module(arg(1, "target module"));
    std::vector<int> shifts;
    if (opt_.args.size() > 2) {
      shifts.push_back(to_int(opt_.args[2], "shift"));
    } else {
      for (int s = w_.lo; s <= w_.hi; ++s) shifts.push_back(s);
    }
    Json dims = Json::object();
    Verdict v = Verdict::Pass;
    for (int s : shifts) {
      try {
        dims[std::to_string(s)] = HomSpace<K>::compute(M, N, s).dim();
      } catch (const Error& e) {
        if (!soft_error(e.code())) throw;
        dims[std::to_string(s)] = nullptr;
        v = Verdict::Inconclusive;
      }
    }
    add("hom dimensions", v, Json{{"source", M->name()}, {"target", N->name()}, {"dims", dims}});
  }

  void ext() {
    auto M = s_.module(arg(0, "first module"));
    auto N = s_.module(arg(1, "second module"));
    const int i = to_int(arg(2, "homological degree"), "homological degree");
    const auto e = ext_graded_dims<K>(M, N, i, w_);
    add("ext dimensions", e.fully_certified() ? Verdict::Pass : Verdict::Inconclusive,
        Json{{"first", M->name()}, {"second", N->name()}, {"ext", ext_json(e)}});
  }

  void mcm() {
    auto M = s_.module(arg(0, "module"));
    const auto rep = is_mcm<K>(M, w_);
    add("maximal Cohen-Macaulay", rep.verdict, Json{{"module", M->name()}, {"ext", ext_list(rep.ext)}});
  }

  void indec() {
    auto M = s_.module(arg(0, "module"));
    const bool ok = is_indecomposable<K>(M, w_);
    add("indecomposable", ok ? Verdict::Pass : Verdict::Fail, Json{{"module", M->name()}});
  }

  void iso() {
    auto M = s_.module(arg(0, "first module"));
    auto N = s_.module(arg(1, "second module"));
    const int shift = opt_.shift.value_or(0);
    if (shift != 0) N = shift_module<K>(N, shift);
    const auto r = are_isomorphic<K>(M, N, w_, 64, opt_.seed);
    add("isomorphic", iso_verdict(r),
        Json{{"first", M->name()},
             {"second", arg(1, "")},
             {"shift", shift},
             {"status", iso_status(static_cast<int>(r.status))},
             {"reason", r.reason}});
  }

  void cluster() {
    const auto& xname = arg(0, "module");
    auto X = s_.module(xname);
    std::vector<ModulePtr<K>> cands;
    if (opt_.args.size() > 1) {
      for (std::size_t i = 1; i < opt_.args.size(); ++i) cands.push_back(s_.module(opt_.args[i]));
    } else {
      for (const auto& m : s_.file().modules)
        if (m.name != xname) cands.push_back(s_.module(m.name));
    }
    const auto rep = check_cluster_tilting<K>(X, opt_.n, cands, w_);
    Json cj = Json::array();
    for (const auto& c : rep.candidates) {
      Json shift = nullptr;
      if (c.add_shift) shift = *c.add_shift;
      cj.push_back(Json{{"name", c.name},
                        {"mcm", to_string(c.mcm)},
                        {"ext_vanishing", to_string(c.ext_vanishing)},
                        {"in_add", c.in_add},
                        {"add_shift", shift},
                        {"verdict", to_string(c.verdict)}});
    }
    add("cluster tilting", rep.verdict,
        Json{{"module", xname},
             {"n", rep.n},
             {"x_mcm", to_string(rep.x_mcm)},
             {"x_rigid", to_string(rep.x_rigid)},
             {"rigidity_vacuous", rep.rigidity_vacuous},
             {"candidates", cj}});
  }

  Json degree_zero_json(const EndoAlgebra<K>& E) {
    const auto B0 = degree_zero_algebra<K>(*E.algebra);
    Json j{{"dim", B0.dim()}};
    if (!E.degree_zero_error.empty()) {
      j["error"] = E.degree_zero_error;
      return j;
    }
    j["radical_dim"] = B0.radical().rows();
    j["radical_squared_dim"] = B0.radical_power(2).rows();
    j["idempotents"] = B0.idempotents(opt_.seed).size();
    return j;
  }

  void endo() {
    auto X = s_.module(endo_source(arg(0, "module")));
    const auto E = endomorphism_algebra<K>(X, w_);
    Json neg = Json::object();
    for (const auto& [i, n] : E.negative_dims) neg[std::to_string(i)] = n;
    const auto dims = dims_of(*E.algebra, E.algebra->valid_through());
    add("nonnegatively graded", check_nonnegative(E) ? Verdict::Pass : Verdict::Fail,
        Json{{"module", X->name()},
             {"valid_through", E.algebra->valid_through()},
             {"dims", dims},
             {"negative_dims", neg},
             {"degree_zero", degree_zero_json(E)}});
    if (opt_.match) {
      const auto expected =
          expand_series(parse_rational_function(*opt_.match), E.algebra->valid_through());
      add("hilbert series", expected == IntPoly(dims.begin(), dims.end()) ? Verdict::Pass : Verdict::Fail,
          Json{{"match", *opt_.match}, {"expected", expected}});
    }
  }

  void quiver() {
    auto X = s_.module(endo_source(arg(0, "module")));
    const auto E = endomorphism_algebra<K>(X, w_);
    if (!E.degree_zero_error.empty())
      throw Error(ErrorCode::NonSplit, E.degree_zero_error);
    const auto B0 = degree_zero_algebra<K>(*E.algebra);
    add("gabriel quiver", Verdict::Pass,
        Json{{"algebra", "End(" + X->name() + ")_0"},
             {"dim", B0.dim()},
             {"radical_dim", B0.radical().rows()},
             {"quiver", quiver_json(B0.quiver(opt_.seed))}});
  }

  void koszul_dual() {
    const auto& name = arg(0, "algebra");
    const auto pres = s_.presentation(name);
    const auto dual = quadratic_dual(pres, opt_.dual_sign);
    const auto q = quadratic_data(pres);
    const auto qd = quadratic_data(dual);
    Json rels = Json::array();
    for (const auto& r : dual.relations()) rels.push_back(r.to_string());
    auto A = s_.algebra(name);
    auto Ad = PresentedAlgebra<K>::build(dual, D(), name + "!");
    add("dimension count", q.relations.dim() + qd.relations.dim() == q.n * q.n ? Verdict::Pass : Verdict::Fail,
        Json{{"algebra", name},
             {"signed_pairing", opt_.dual_sign},
             {"dim_R", q.relations.dim()},
             {"dim_R_perp", qd.relations.dim()},
             {"words", q.n * q.n},
             {"dual_relations", rels},
             {"dual_dims", dims_of(*Ad, D())}});
    const auto pairing =
        pair_with_negated(hilbert_series(*A, D()).coeffs, hilbert_series(*Ad, D()).coeffs, D());
    add("hilbert pairing", pairing == delta(D()) ? Verdict::Pass : Verdict::Fail,
        Json{{"through", D()}, {"coefficients", pairing}});
  }

  // C(A) for the dual of `name`; returns the verdict of the splitting check.
  Verdict clifford_check(const std::string& name, const std::string& central) {
    auto Ad = dual_algebra(name);
    const auto w = parse_poly(Ad->free(), central, s_.constants());
    const auto C = clifford_algebra(*Ad, w, D());
    const auto& alg = *C.algebra;
    Json ev{{"algebra", name},
            {"central", central},
            {"signed_pairing", opt_.dual_sign},
            {"stable_degree", C.stable_degree},
            {"chain_dims", C.chain_dims},
            {"bijective_steps", C.bijective},
            {"dim", alg.dim()},
            {"commutative", alg.is_commutative()}};
    Verdict v = Verdict::Pass;
    try {
      const auto dec = commutative_semisimple_decompose(alg);
      ev["block_dims"] = dec.block_dims;
      if (dec.split()) {
        ev["structure"] = "k^" + std::to_string(dec.block_dims.size());
      } else {
        ev["structure"] = "not split";
        v = Verdict::Fail;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCommutative && e.code() != ErrorCode::NotSemisimple &&
          e.code() != ErrorCode::NonSplit)
        throw;
      ev["structure"] = std::string(to_string(e.code()));
      v = Verdict::Fail;
    }
    add("clifford algebra", v, ev);
    return v;
  }

  void clifford() {
    if (!opt_.central) throw Error(ErrorCode::InvalidArgument, "missing --central");
    clifford_check(arg(0, "algebra"), *opt_.central);
  }

  std::vector<Vec<K>> point_list(const std::string& name) {
    if constexpr (std::is_same_v<K, PrimeField>) {
      std::vector<NcPoly<K>> polys;
      if (!opt_.polys.empty()) {
        for (const auto& p : opt_.polys) polys.push_back(s_.parse(name, p));
      } else {
        polys = quadratic_dual(s_.presentation(name), opt_.dual_sign).relations();
      }
      return enumerate_projective_points(polys);
    } else {
      (void)name;
      throw Error(ErrorCode::UnsupportedField, "point enumeration needs a prime field");
    }
  }

  void points() {
    const auto& name = arg(0, "algebra");
    const auto pts = point_list(name);
    Json pj = Json::array();
    for (const auto& p : pts) pj.push_back(vec_json(s_.field(), p));
    add("projective points", Verdict::Pass,
        Json{{"algebra", name},
             {"source", opt_.polys.empty() ? "dual relations" : "given polynomials"},
             {"count", pts.size()},
             {"points", pj}});
  }

  void asgorenstein() {
    const auto& name = arg(0, "algebra");
    const int d = required(opt_.d, "d"), ell = required(opt_.ell, "ell");
    const auto rep = as_gorenstein_check<K>(s_.algebra(name), d, ell, w_);
    add("AS-Gorenstein", rep.verdict,
        Json{{"algebra", name},
             {"d", d},
             {"ell", ell},
             {"right", ext_list(rep.right)},
             {"left", ext_list(rep.left)}});
  }

  void asregular() {
    auto X = s_.module(endo_source(arg(0, "module")));
    const int d = required(opt_.d, "d"), ell = required(opt_.ell, "ell");
    const auto E = endomorphism_algebra<K>(X, w_);
    const auto rep = as_regular_over_r_check<K>(E.algebra, d, ell, w_);
    add("AS-regular over degree zero", rep.verdict,
        Json{{"algebra", "End(" + X->name() + ")"},
             {"d", d},
             {"ell", ell},
             {"degree_zero_dim", rep.degree_zero_dim},
             {"ext", ext_list(rep.ext)},
             {"terminated", rep.terminated},
             {"shifts", shifts_json(rep.shifts)},
             {"degrees_consumed", rep.degrees_consumed}});
  }

  Json eval_json(const EvalReport& rep) {
    Json degs = Json::array();
    for (const auto& d : rep.degrees)
      degs.push_back(Json{{"degree", d.degree},
                          {"tensor_dim", d.tensor_dim},
                          {"module_dim", d.module_dim},
                          {"surjective", d.surjective},
                          {"iso", d.iso}});
    return degs;
  }

  void eval_iso() {
    const auto& xname = arg(0, "module");
    auto parts = s_.summands(xname);
    auto M = s_.module(arg(1, "module"));
    const auto rep = eval_iso_check<K>(parts, M, w_);
    add("evaluation isomorphism", rep.verdict,
        Json{{"generator", xname}, {"module", M->name()}, {"degrees", eval_json(rep)}});
  }

  void nu_stable() {
    auto M = s_.module(arg(0, "module"));
    const auto& sname = arg(1, "automorphism");
    const auto r = nu_stability_check<K>(M, s_.automorphism(sname), w_, 64, opt_.seed);
    add("twist stable", iso_verdict(r),
        Json{{"module", M->name()},
             {"automorphism", sname},
             {"status", iso_status(static_cast<int>(r.status))},
             {"reason", r.reason}});
  }

  // ------------------------------------------------------ the worked example

  void stage(int n, const std::string& name, const std::function<void(Json&, Verdict&)>& body) {
    Json ev{{"stage", n}};
    Verdict v = Verdict::Pass;
    try {
      body(ev, v);
    } catch (const Error& e) {
      if (!soft_error(e.code())) throw;
      ev["reason"] = std::string(to_string(e.code())) + ": " + e.what();
      v = Verdict::Inconclusive;
    }
    add(name, v, ev);
  }

  static Verdict pass_if(bool b) { return b ? Verdict::Pass : Verdict::Fail; }

  void verify_example() {
    const std::vector<std::string> cones{"X1", "X2", "X3", "X4"};
    auto S = s_.algebra("S");
    auto A = s_.algebra("A");

    stage(1, "hilbert series of S and A", [&](Json& ev, Verdict& v) {
      const auto hs = hilbert_series(*S, D()).coeffs;
      const auto ha = hilbert_series(*A, D()).coeffs;
      const auto es = expand_series(parse_rational_function("1/(1-t)^3"), D());
      const auto ea = expand_series(parse_rational_function("(1+t)/(1-t)^2"), D());
      ev["S"] = Json{{"dims", hs}, {"match", "1/(1-t)^3"}, {"ok", hs == es}};
      ev["A"] = Json{{"dims", ha}, {"match", "(1+t)/(1-t)^2"}, {"ok", ha == ea}};
      v = pass_if(hs == es && ha == ea);
    });

    stage(2, "x^2 + y^2 is central and regular in S", [&](Json& ev, Verdict& v) {
      const auto f = S->parse("x^2 + y^2");
      const bool central = is_central(*S, f);
      const int through = D() - 2;
      const bool regular = is_regular_element(*S, f, through);
      ev["central"] = central;
      ev["regular"] = regular;
      ev["regular_through"] = through;
      v = pass_if(central && regular);
    });

    stage(3, "A is AS-Gorenstein (d = 2, ell = 1)", [&](Json& ev, Verdict& v) {
      const auto rep = as_gorenstein_check<K>(A, 2, 1, w_);
      ev["right"] = ext_list(rep.right);
      ev["left"] = ext_list(rep.left);
      v = rep.verdict;
    });

    stage(4, "quadratic dual and C(A) = k^4", [&](Json& ev, Verdict& v) {
      auto Ad = dual_algebra("A");
      auto Sd = PresentedAlgebra<K>::build(
          quadratic_dual(s_.presentation("S"), opt_.dual_sign), D(), "S!");
      const auto w = Ad->parse("x^2");
      // S! = A!/(w)
      auto extra = quadratic_dual(s_.presentation("A"), opt_.dual_sign).relations();
      extra.push_back(w);
      const bool quotient = same_relation_span(
          quadratic_dual(s_.presentation("S"), opt_.dual_sign), Presentation<K>(Ad->free(), extra));
      const auto C = clifford_algebra(*Ad, w, D());
      const auto& alg = *C.algebra;
      ev["dual_dims_A"] = dims_of(*Ad, std::min(D(), 6));
      ev["dual_dims_S"] = dims_of(*Sd, std::min(D(), 6));
      ev["S_dual_is_quotient"] = quotient;
      ev["stable_degree"] = C.stable_degree;
      ev["chain_dims"] = C.chain_dims;
      ev["dim"] = alg.dim();
      ev["commutative"] = alg.is_commutative();
      bool split = false;
      std::size_t blocks = 0;
      if (alg.is_commutative() && alg.radical().rows() == 0) {
        const auto dec = commutative_semisimple_decompose(alg);
        ev["block_dims"] = dec.block_dims;
        split = dec.split();
        blocks = dec.block_dims.size();
      } else {
        ev["block_dims"] = nullptr;
      }
      ev["structure"] = split ? "k^" + std::to_string(blocks) : "not split";
      v = pass_if(quotient && alg.dim() == 4 && split && blocks == 4);
    });

    stage(5, "four points of Proj A!", [&](Json& ev, Verdict& v) {
      const auto pts = point_list("A");
      Json pj = Json::array();
      for (const auto& p : pts) pj.push_back(vec_json(s_.field(), p));
      ev["count"] = pts.size();
      ev["points"] = pj;
      v = pass_if(pts.size() == 4);
    });

    stage(6, "X1..X4 are MCM, indecomposable, pairwise non-isomorphic", [&](Json& ev, Verdict& v) {
      Json mods = Json::array();
      for (const auto& c : cones) {
        auto M = s_.module(c);
        const auto m = is_mcm<K>(M, w_);
        const bool ind = is_indecomposable<K>(M, w_);
        mods.push_back(Json{{"module", c}, {"mcm", to_string(m.verdict)}, {"indecomposable", ind}});
        v = verdict_and(v, verdict_and(m.verdict, pass_if(ind)));
      }
      ev["modules"] = mods;
      std::size_t pairs = 0, certified = 0;
      for (const auto& a : cones)
        for (const auto& b : cones) {
          if (a == b) continue;
          for (int s = -3; s <= 3; ++s) {
            auto N = s == 0 ? s_.module(b) : shift_module<K>(s_.module(b), s);
            const auto r = are_isomorphic<K>(s_.module(a), N, w_, 64, opt_.seed);
            ++pairs;
            if (r.status == IsoResult<K>::Status::NotIsomorphic) {
              ++certified;
            } else {
              v = verdict_and(v, r.isomorphic() ? Verdict::Fail : Verdict::Inconclusive);
            }
          }
        }
      ev["pairs"] = pairs;
      ev["certified_non_isomorphic"] = certified;
    });

    auto X = s_.module("X");
    std::optional<EndoAlgebra<K>> B;
    auto endo_of_x = [&]() -> const EndoAlgebra<K>& {
      if (!B) B.emplace(endomorphism_algebra<K>(X, w_));
      return *B;
    };

    stage(7, "End(X) has no negative part", [&](Json& ev, Verdict& v) {
      const auto& E = endo_of_x();
      Json neg = Json::object();
      for (const auto& [i, n] : E.negative_dims) neg[std::to_string(i)] = n;
      ev["negative_dims"] = neg;
      v = pass_if(check_nonnegative(E));
    });

    stage(8, "hilbert series of B = End(X)", [&](Json& ev, Verdict& v) {
      const auto& E = endo_of_x();
      const int top = E.algebra->valid_through();
      const auto dims = dims_of(*E.algebra, top);
      const auto expected = expand_series(parse_rational_function("9(1+t)/(1-t)^2"), top);
      ev["dims"] = dims;
      ev["match"] = "9(1+t)/(1-t)^2";
      v = pass_if(IntPoly(dims.begin(), dims.end()) == expected);
    });

    stage(9, "structure of B0", [&](Json& ev, Verdict& v) {
      const auto& E = endo_of_x();
      if (!E.degree_zero_error.empty()) throw Error(ErrorCode::NonSplit, E.degree_zero_error);
      const auto B0 = degree_zero_algebra<K>(*E.algebra);
      const auto q = B0.quiver(opt_.seed);
      Quiver target;
      target.vertices = {"sink", "s1", "s2", "s3", "s4"};
      for (std::size_t s = 1; s <= 4; ++s) target.arrows.push_back({s, 0, 1});
      ev["dim"] = B0.dim();
      ev["radical_dim"] = B0.radical().rows();
      ev["radical_squared_dim"] = B0.radical_power(2).rows();
      ev["idempotents"] = B0.idempotents(opt_.seed).size();
      ev["quiver"] = quiver_json(q);
      v = pass_if(B0.dim() == 9 && B0.radical().rows() == 4 && B0.radical_power(2).rows() == 0 &&
                  B0.idempotents(opt_.seed).size() == 5 && quivers_match(q, target));
    });

    stage(10, "B is AS-regular over B0 (d = 2, ell = 1)", [&](Json& ev, Verdict& v) {
      const auto& E = endo_of_x();
      const auto rep = as_regular_over_r_check<K>(E.algebra, 2, 1, w_);
      ev["ext"] = ext_list(rep.ext);
      ev["terminated"] = rep.terminated;
      ev["shifts"] = shifts_json(rep.shifts);
      v = rep.verdict;
    });

    stage(11, "evaluation isomorphism for A, X1, k", [&](Json& ev, Verdict& v) {
      const Window we{std::max(w_.lo, 0), std::min(w_.hi, 4), w_.hmax, w_.cap};
      const auto parts = s_.summands("X");
      auto k = cyclic_module<K>(A, {A->parse("x"), A->parse("y"), A->parse("z")}, "k");
      Json out = Json::array();
      for (const auto& M : {s_.module("R"), s_.module("X1"), k}) {
        const auto rep = eval_iso_check<K>(parts, M, we);
        out.push_back(Json{{"module", M->name()},
                           {"verdict", to_string(rep.verdict)},
                           {"degrees", eval_json(rep)}});
        v = verdict_and(v, rep.verdict);
      }
      ev["window"] = window_json(we);
      ev["modules"] = out;
    });
  }

  const CommandOptions& opt_;
  Session<K>& s_;
  Window w_;
  Json& checks_;
  Verdict verdict_ = Verdict::Pass;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read workspace " + path);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

Json inputs_json(const CommandOptions& opt) {
  Json in{{"args", opt.args}};
  in["workspace"] = opt.workspace_text ? "inline" : opt.workspace.empty() ? "builtin" : opt.workspace;
  if (opt.match) in["match"] = *opt.match;
  if (opt.central) in["central"] = *opt.central;
  if (!opt.polys.empty()) in["polys"] = opt.polys;
  if (opt.shift) in["shift"] = *opt.shift;
  if (opt.d) in["d"] = *opt.d;
  if (opt.ell) in["ell"] = *opt.ell;
  if (opt.command == "cluster") in["n"] = opt.n;
  if (opt.dual_sign) in["dual_sign"] = true;
  return in;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "gb",      "hilbert",     "ext",      "hom",       "mcm",          "indec",
      "iso",     "cluster",     "endo",     "quiver",    "koszul-dual",  "clifford",
      "points",  "asgorenstein", "asregular", "eval-iso", "nu-stable",   "verify-example"};
  return names;
}

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 3;
}

Window parse_window(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(to_int(part, "window entry"));
  if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "window must be lo,hi,hmax,cap");
  Window w{v[0], v[1], v[2], v[3]};
  w.validate();
  return w;
}

CommandResult run_command(const CommandOptions& opt) {
  CommandResult res;
  Json& r = res.report;
  r["command"] = opt.command;
  r["inputs"] = inputs_json(opt);
  Json checks = Json::array();
  try {
    const std::string text = opt.workspace_text ? *opt.workspace_text
                             : opt.workspace.empty() || opt.command == "verify-example"
                                 ? std::string(builtin_workspace_text())
                                 : read_file(opt.workspace);
    const WorkspaceFile ws = parse_workspace(text);
    const Window w = opt.window ? parse_window(*opt.window) : ws.window();
    const int D = opt.max_deg.value_or(w.cap + w.hmax);
    if (D < 0) throw Error(ErrorCode::InvalidArgument, "--max-deg must be nonnegative");
    const FieldSpec spec = parse_field_spec(opt.field.value_or(ws.field));
    r["field"] = field_spec_name(spec);
    r["truncation"] = D;
    r["window"] = window_json(w);
    r["seed"] = opt.seed;
    const Verdict v = std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          Session<K> session(ws, k, D);
          Runner<K> runner(opt, session, w, checks);
          runner.run();
          return runner.verdict();
        },
        spec);
    r["checks"] = checks;
    r["verdict"] = to_string(v);
    res.exit_code = exit_code_for(v);
  } catch (const Error& e) {
    r["checks"] = checks;
    r["verdict"] = "error";
    r["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    res.exit_code = 3;
  } catch (const std::exception& e) {
    r["checks"] = checks;
    r["verdict"] = "error";
    r["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    res.exit_code = 3;
  }
  return res;
}

}  // namespace ncg
