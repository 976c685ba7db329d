#include "ncg/endo.hpp"

#include <algorithm>
#include <climits>
#include <mutex>
#include <tuple>

namespace ncg {

namespace {

template <class K>
int max_presentation_degree(const GradedModule<K>& X) {
  const auto& p = X.presentation();
  int m = INT_MIN / 4;
  for (const auto& s : p.cover.summands()) m = std::max(m, s.degree);
  for (const auto& s : p.rel_free.summands()) m = std::max(m, s.degree);
  return m;
}

// Shared between the block provider and the EndoAlgebra.
template <class K>
struct EndoState {
  ModulePtr<K> X;
  std::vector<HomSpace<K>> pieces;
  std::mutex mutex;
  std::map<std::tuple<int, std::size_t, int>, Matrix<K>> mats;

  const Matrix<K>& matrix(int n, std::size_t a, int t) {
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(n, a, t);
    auto it = mats.find(key);
    if (it == mats.end()) it = mats.emplace(key, pieces[n].basis()[a].matrix(t)).first;
    return it->second;
  }

  Matrix<K> block(int d1, int d2) {
    const K& f = X->field();
    const auto& gens = X->presentation().cover.summands();
    const auto& P1 = pieces[d1];
    const auto& P2 = pieces[d2];
    const auto& P = pieces[d1 + d2];
    Matrix<K> out = Matrix<K>::with_cols(P.dim());
    for (std::size_t a = 0; a < P1.dim(); ++a)
      for (std::size_t b = 0; b < P2.dim(); ++b) {
        const Hom<K>& hb = P2.basis()[b];
        Hom<K> h{X, X, d1 + d2, {}};
        for (std::size_t j = 0; j < gens.size(); ++j) {
          const Matrix<K>& M = matrix(d1, a, gens[j].degree + d2);
          if (hb.images[j].empty())
            h.images.push_back(Vec<K>(M.cols(), f.zero()));
          else
            h.images.push_back(vec_mul(f, std::span<const typename K::Elem>(hb.images[j]), M));
        }
        auto c = P.coords(h);
        if (!c) throw Error(ErrorCode::ShapeMismatch, "composite outside End(X)");
        out.append_row(*c);
      }
    return out;
  }
};

}  // namespace

template <class K>
EndoAlgebra<K> endomorphism_algebra(ModulePtr<K> X, const Window& w) {
  w.validate();
  const int V = std::min(w.cap, X->valid_through() - max_presentation_degree(*X));
  if (V < 0)
    throw Error(ErrorCode::WindowExceeded, "module " + X->name() + " is not known far enough");
  auto state = std::make_shared<EndoState<K>>();
  state->X = X;
  std::vector<std::size_t> dims;
  for (int n = 0; n <= V; ++n) {
    state->pieces.push_back(HomSpace<K>::compute(X, X, n));
    dims.push_back(state->pieces.back().dim());
  }
  EndoAlgebra<K> E;
  E.module = X;
  E.window = w;
  for (int i = w.lo; i < 0; ++i) E.negative_dims[i] = HomSpace<K>::compute(X, X, i).dim();
  auto unit = state->pieces[0].coords(identity_hom(X));
  if (!unit) throw Error(ErrorCode::ShapeMismatch, "identity outside End(X)_0");
  auto provider = [state](int d1, int d2) { return state->block(d1, d2); };
  auto labeler = [](int d, std::size_t i) {
    return "b" + std::to_string(d) + "_" + std::to_string(i);
  };
  E.algebra = std::make_shared<TabulatedAlgebra<K>>(X->field(), dims, *unit, provider,
                                                    "End(" + X->name() + ")", labeler);
  const FinDimAlgebra<K> B0 = degree_zero_algebra<K>(*E.algebra);
  try {
    auto ids = B0.idempotents();
    E.algebra->register_degree_zero(std::move(ids), B0.radical());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FieldTooSmall && e.code() != ErrorCode::NonSplit) throw;
    E.degree_zero_error = e.what();
  }
  E.pieces = state->pieces;
  return E;
}

template <class K>
bool check_nonnegative(const EndoAlgebra<K>& B) {
  return std::all_of(B.negative_dims.begin(), B.negative_dims.end(),
                     [](const auto& kv) { return kv.second == 0; });
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> quiver_signature(const Quiver& q) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> sig;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    std::size_t loops = 0;
    for (const auto& a : q.arrows)
      if (a.src == v && a.dst == v) loops += a.mult;
    sig.emplace_back(q.in_degree(v), q.out_degree(v), loops);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool quivers_match(const Quiver& a, const Quiver& b) {
  return quiver_signature(a) == quiver_signature(b);
}

namespace {

// Ext^i vanishes for i < d and Ext^d is `top` in degree -ell.
Verdict gorenstein_pattern(const std::vector<ExtDims>& ext, int d, int ell, std::size_t top) {
  Verdict v = Verdict::Pass;
  for (const auto& e : ext) {
    for (const auto& [s, n] : e.dims) {
      const std::size_t want = (e.i == d && s == -ell) ? top : 0;
      if (n != want) return Verdict::Fail;
    }
    if (!e.fully_certified()) v = Verdict::Inconclusive;
  }
  if (static_cast<int>(ext.size()) <= d) v = verdict_and(v, Verdict::Inconclusive);
  return v;
}

}  // namespace

template <class K>
AsRegularReport as_regular_over_r_check(std::shared_ptr<const Algebra<K>> B, int d, int ell,
                                        const Window& w) {
  w.validate();
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "dimension must be nonnegative");
  if (d > w.hmax) throw Error(ErrorCode::WindowExceeded, "d exceeds homological_max");
  AsRegularReport rep;
  rep.d = d;
  rep.ell = ell;
  rep.window = w;
  rep.degree_zero_dim = B->dim(0);
  auto M = degree_zero_module<K>(B, w.cap);
  auto R = regular_module<K>(B, 0, B->name());
  const auto res = FreeResolution<K>::compute(M, d + 1, w);
  rep.ext = ext_from_resolution(res, *R, d, w);
  rep.terminated = res.terminated() && static_cast<int>(res.length()) <= d + 1;
  rep.shifts = res.shifts();
  rep.degrees_consumed = res.complete_internal_through();
  rep.verdict = gorenstein_pattern(rep.ext, d, ell, rep.degree_zero_dim);
  if (!rep.terminated) rep.verdict = Verdict::Fail;
  return rep;
}

template <class K>
GorensteinReport as_gorenstein_check(PresentedPtr<K> A, int d, int ell, const Window& w) {
  w.validate();
  if (A->dim(0) != 1)
    throw Error(ErrorCode::NotConnected, "algebra " + A->name() + " has dim A_0 != 1");
  GorensteinReport rep;
  rep.d = d;
  rep.ell = ell;
  rep.window = w;
  const int imax = std::min(d + 1, w.hmax);
  auto side = [&](AlgebraPtr<K> alg) {
    auto k = degree_zero_module<K>(alg, w.cap);
    auto R = regular_module<K>(alg, 0, alg->name());
    const auto res = FreeResolution<K>::compute(k, imax + 1, w);
    return ext_from_resolution(res, *R, imax, w);
  };
  rep.right = side(A);
  rep.left = side(A->opposite());
  rep.verdict = verdict_and(gorenstein_pattern(rep.right, d, ell, 1),
                            gorenstein_pattern(rep.left, d, ell, 1));
  return rep;
}

#define NCG_INSTANTIATE(K)                                                                   \
  template EndoAlgebra<K> endomorphism_algebra<K>(ModulePtr<K>, const Window&);              \
  template bool check_nonnegative<K>(const EndoAlgebra<K>&);                                 \
  template AsRegularReport as_regular_over_r_check<K>(std::shared_ptr<const Algebra<K>>, int, \
                                                      int, const Window&);                   \
  template GorensteinReport as_gorenstein_check<K>(PresentedPtr<K>, int, int, const Window&);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
