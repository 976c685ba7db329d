#include "ncg/homology.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <random>
#include <type_traits>

namespace ncg {

void Window::validate() const {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "window has lo > hi");
  if (hmax < 0 || cap < 0) throw Error(ErrorCode::InvalidArgument, "window bounds must be nonnegative");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

bool ExtDims::fully_certified() const {
  for (int s = window.lo; s <= window.hi; ++s)
    if (!dims.count(s)) return false;
  return true;
}

bool ExtDims::any_nonzero() const {
  return std::any_of(dims.begin(), dims.end(), [](const auto& kv) { return kv.second != 0; });
}

namespace {

template <class K>
bool multi(const Algebra<K>& alg) {
  return alg.num_idempotents() > 1;
}

// Basis (rows, N coordinates) of N_t e_i.
template <class K>
Matrix<K> idempotent_slice(const GradedModule<K>& N, int t, std::size_t idem) {
  if (t < N.lo()) return Matrix<K>::with_cols(0);
  if (!multi(*N.algebra())) return Matrix<K>::identity(N.field(), N.dim(t));
  return N.idempotent_part(t, idem);
}

template <class K>
int max_degree(const FreeModule<K>& F) {
  int m = INT_MIN / 4;
  for (const auto& s : F.summands()) m = std::max(m, s.degree);
  return m;
}

// F_d -> G_d for generator images in G.
template <class K>
Matrix<K> free_map(const FreeModule<K>& src, const std::vector<Vec<K>>& imgs,
                   const FreeModule<K>& dst, int d) {
  const K& f = src.field();
  const auto& alg = *src.algebra();
  Matrix<K> out = Matrix<K>::with_cols(dst.dim(d));
  for (std::size_t j = 0; j < src.rank(); ++j) {
    const Summand& s = src.summands()[j];
    const int n = d - s.degree;
    if (n < 0) continue;
    Matrix<K> rows = dst.times_all(imgs[j], s.degree, d);
    if (multi(alg)) rows = mul(f, alg.corner(s.idem, n).basis(), rows);
    out.append_rows(rows);
  }
  return out;
}

void check_window(const Window& w) { w.validate(); }

}  // namespace

// --------------------------------------------------------------------- Hom

template <class K>
Matrix<K> induced_map(const GradedModule<K>& N, const FreeModule<K>& cover,
                      const std::vector<Vec<K>>& images, int s, int d) {
  const K& f = N.field();
  const auto& alg = *N.algebra();
  Matrix<K> out = Matrix<K>::with_cols(N.dim(d + s));
  for (std::size_t j = 0; j < cover.rank(); ++j) {
    const Summand& sm = cover.summands()[j];
    const int n = d - sm.degree;
    if (n < 0) continue;
    Matrix<K> rows = N.times_all(images[j], sm.degree + s, d + s);
    if (multi(alg)) rows = mul(f, alg.corner(sm.idem, n).basis(), rows);
    out.append_rows(rows);
  }
  return out;
}

template <class K>
Matrix<K> Hom<K>::matrix(int d) const {
  const auto& p = source->presentation();
  const Matrix<K>& sec = source->section(d);
  const Matrix<K> ind = induced_map(*target, p.cover, images, shift, d);
  if (sec.rows() == 0) return Matrix<K>::with_cols(ind.cols());
  return mul(source->field(), sec, ind);
}

template <class K>
Vec<K> Hom<K>::flat() const {
  Vec<K> v;
  for (const auto& y : images) v.insert(v.end(), y.begin(), y.end());
  return v;
}

template <class K>
bool Hom<K>::is_zero() const {
  const Vec<K> v = flat();
  return is_zero_vec(source->field(), std::span<const Elem>(v));
}

template <class K>
Hom<K> Hom<K>::scaled(const Elem& c) const {
  Hom h = *this;
  for (auto& y : h.images) source->field().scale(std::span(y), c);
  return h;
}

template <class K>
Hom<K> Hom<K>::plus(const Hom& o) const {
  if (o.source != source || o.target != target || o.shift != shift)
    throw Error(ErrorCode::ShapeMismatch, "adding homomorphisms between different spaces");
  Hom h = *this;
  for (std::size_t j = 0; j < h.images.size(); ++j)
    source->field().axpy(std::span(h.images[j]), source->field().one(),
                         std::span<const Elem>(o.images[j]));
  return h;
}

template <class K>
HomSpace<K> HomSpace<K>::compute(ModulePtr<K> M, ModulePtr<K> N, int s) {
  if (M->algebra() != N->algebra())
    throw Error(ErrorCode::AlgebraMismatch, "Hom between modules over different algebras");
  const K& f = M->field();
  const auto& p = M->presentation();
  const auto& gens = p.cover.summands();
  for (const auto& g : gens)
    if (g.degree + s > N->valid_through())
      throw Error(ErrorCode::WindowExceeded,
                  "Hom(" + M->name() + ", " + N->name() + "(" + std::to_string(s) +
                      ")) needs degree " + std::to_string(g.degree + s) + " of " + N->name());
  for (const auto& r : p.rel_free.summands())
    if (r.degree + s > N->valid_through())
      throw Error(ErrorCode::WindowExceeded,
                  "Hom(" + M->name() + ", " + N->name() + "(" + std::to_string(s) +
                      ")) needs degree " + std::to_string(r.degree + s) + " of " + N->name());

  std::vector<Matrix<K>> slices;
  std::vector<std::size_t> offs;
  std::size_t unknowns = 0;
  for (const auto& g : gens) {
    slices.push_back(idempotent_slice(*N, g.degree + s, g.idem));
    offs.push_back(unknowns);
    unknowns += slices.back().rows();
  }
  std::size_t eqs = 0;
  std::vector<std::size_t> rel_off;
  for (const auto& r : p.rel_free.summands()) {
    rel_off.push_back(eqs);
    eqs += N->dim(r.degree + s);
  }
  Matrix<K> E = Matrix<K>::zeros(f, unknowns, eqs);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t k = 0; k < p.relations.size(); ++k) {
      const int t = p.rel_free.summands()[k].degree;
      const Vec<K> comp = p.cover.component(j, t, p.relations[k]);
      if (comp.empty() || is_zero_vec(f, std::span<const Elem>(comp))) continue;
      for (std::size_t r = 0; r < slices[j].rows(); ++r) {
        const Matrix<K> rows = N->times_all(slices[j].row(r), gens[j].degree + s, t + s);
        const Vec<K> img = vec_mul(f, std::span<const Elem>(comp), rows);
        std::copy(img.begin(), img.end(), E.row(offs[j] + r).begin() + rel_off[k]);
      }
    }
  }
  const Matrix<K> ker = left_kernel(f, E);

  HomSpace H;
  H.source_ = M;
  H.target_ = N;
  H.shift_ = s;
  Matrix<K> flats = Matrix<K>::with_cols(0);
  for (std::size_t b = 0; b < ker.rows(); ++b) {
    Hom<K> h{M, N, s, {}};
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::span<const Elem> c = ker.row(b).subspan(offs[j], slices[j].rows());
      if (slices[j].rows() == 0)
        h.images.push_back(Vec<K>(N->dim(gens[j].degree + s), f.zero()));
      else
        h.images.push_back(vec_mul(f, c, slices[j]));
    }
    const Vec<K> fl = h.flat();
    if (b == 0) flats = Matrix<K>::with_cols(fl.size());
    flats.append_row(fl);
    H.basis_.push_back(std::move(h));
  }
  H.solver_ = std::make_shared<const RowSolver<K>>(f, flats);
  return H;
}

template <class K>
Hom<K> HomSpace<K>::element(const Vec<K>& coeffs) const {
  Hom<K> h = zero_hom(source_, target_, shift_);
  for (std::size_t b = 0; b < basis_.size(); ++b)
    if (!source_->field().is_zero(coeffs[b])) h = h.plus(basis_[b].scaled(coeffs[b]));
  return h;
}

template <class K>
std::optional<Vec<K>> HomSpace<K>::coords(const Hom<K>& h) const {
  if (basis_.empty()) {
    if (h.is_zero()) return Vec<K>{};
    return std::nullopt;
  }
  const Vec<K> fl = h.flat();
  return solver_->solve(std::span<const Elem>(fl));
}

template <class K>
Hom<K> identity_hom(ModulePtr<K> M) {
  const auto& p = M->presentation();
  Hom<K> h{M, M, 0, {}};
  for (std::size_t j = 0; j < p.cover.rank(); ++j)
    h.images.push_back(M->piece(p.cover.summands()[j].degree).coords(p.images[j]));
  return h;
}

template <class K>
Hom<K> zero_hom(ModulePtr<K> M, ModulePtr<K> N, int s) {
  const auto& p = M->presentation();
  Hom<K> h{M, N, s, {}};
  for (const auto& g : p.cover.summands())
    h.images.push_back(Vec<K>(N->dim(g.degree + s), M->field().zero()));
  return h;
}

template <class K>
Hom<K> compose(const Hom<K>& f, const Hom<K>& g) {
  if (f.target != g.source) throw Error(ErrorCode::ShapeMismatch, "composing non-adjacent maps");
  const auto& p = f.source->presentation();
  Hom<K> h{f.source, g.target, f.shift + g.shift, {}};
  for (std::size_t j = 0; j < f.images.size(); ++j) {
    const int t = p.cover.summands()[j].degree + f.shift;
    const Matrix<K> G = g.matrix(t);
    if (f.images[j].empty())
      h.images.push_back(Vec<K>(G.cols(), f.source->field().zero()));
    else
      h.images.push_back(vec_mul(f.source->field(), std::span<const typename K::Elem>(f.images[j]), G));
  }
  return h;
}

template <class K>
bool is_invertible(const Hom<K>& h, int hi) {
  if (h.shift != 0) return false;
  const auto& M = *h.source;
  const auto& N = *h.target;
  const int lo = std::min(M.lo(), N.lo());
  if (lo == kNoDegree) return true;
  const int top = std::min({hi, M.valid_through(), N.valid_through()});
  for (int d = lo; d <= top; ++d) {
    const std::size_t n = M.dim(d);
    if (N.dim(d) != n) return false;
    if (n == 0) continue;
    if (rank(M.field(), h.matrix(d)) != n) return false;
  }
  return true;
}

// ---------------------------------------------------------- FreeResolution

template <class K>
FreeResolution<K> FreeResolution<K>::compute(ModulePtr<K> M, int steps, const Window& w) {
  check_window(w);
  FreeResolution R;
  R.module_ = M;
  const auto& p = M->presentation();
  R.free_.push_back(p.cover);
  R.images_.push_back(p.images);
  int valid = std::min(M->valid_through(), p.cover.valid_through());
  R.complete_through_ = std::min(w.cap, valid);
  if (p.cover.rank() == 0) {
    R.terminated_ = true;
    return R;
  }
  for (int i = 1; i <= steps; ++i) {
    std::function<Matrix<K>(int)> map;
    if (i == 1) {
      map = [M](int d) { return M->cover_matrix(d); };
    } else {
      map = [src = R.free_[i - 1], imgs = R.images_[i - 1], dst = R.free_[i - 2]](int d) {
        return free_map(src, imgs, dst, d);
      };
    }
    auto ker = kernel_module<K>(R.free_[i - 1], map, valid, w.cap,
                                M->name() + ".syz" + std::to_string(i));
    Generators<K> g = minimal_generators(*ker);
    if (g.at_bound)
      throw Error(ErrorCode::IncompleteKernel,
                  "syzygy " + std::to_string(i) + " of " + M->name() +
                      " has a generator at the search bound " + std::to_string(ker->search_bound()));
    R.complete_through_ = std::min(R.complete_through_, ker->search_bound());
    if (g.cover.rank() == 0) {
      R.terminated_ = true;
      break;
    }
    valid = std::min(valid, g.cover.valid_through());
    R.free_.push_back(std::move(g.cover));
    R.images_.push_back(std::move(g.images));
  }
  return R;
}

template <class K>
Matrix<K> FreeResolution<K>::differential_matrix(std::size_t i, int d) const {
  if (i == 0) return module_->cover_matrix(d);
  return free_map(free_.at(i), images_.at(i), free_.at(i - 1), d);
}

template <class K>
std::vector<std::vector<int>> FreeResolution<K>::shifts() const {
  std::vector<std::vector<int>> out;
  for (const auto& F : free_) {
    std::vector<int> s;
    for (const auto& x : F.summands()) s.push_back(-x.degree);
    out.push_back(std::move(s));
  }
  return out;
}

template <class K>
int FreeResolution<K>::max_generator_degree(std::size_t i) const {
  if (i >= free_.size()) return INT_MIN / 4;
  return max_degree(free_[i]);
}

// --------------------------------------------------------------------- Ext

namespace {

// Hom(P, N(s)) for a free P: basis vectors are (summand, row of the slice).
template <class K>
struct FreeHom {
  std::vector<Matrix<K>> slices;
  std::vector<std::size_t> raw_off;
  std::size_t dim = 0;
  std::size_t raw_dim = 0;
};

template <class K>
FreeHom<K> free_hom(const FreeModule<K>& P, const GradedModule<K>& N, int s) {
  FreeHom<K> H;
  for (const auto& g : P.summands()) {
    H.slices.push_back(idempotent_slice(N, g.degree + s, g.idem));
    H.dim += H.slices.back().rows();
    H.raw_off.push_back(H.raw_dim);
    H.raw_dim += N.dim(g.degree + s);
  }
  return H;
}

// Rank of phi -> phi o d on Hom(P_{i-1}, N(s)) -> Hom(P_i, N(s)).
template <class K>
std::size_t delta_rank(const FreeResolution<K>& res, std::size_t i, const GradedModule<K>& N,
                       int s, const FreeHom<K>& src, const FreeHom<K>& dst) {
  if (i == 0 || i >= res.length()) return 0;
  const K& f = N.field();
  const FreeModule<K>& Pprev = res.free(i - 1);
  const FreeModule<K>& P = res.free(i);
  const auto& imgs = res.images(i);
  Matrix<K> D = Matrix<K>::zeros(f, src.dim, dst.raw_dim);
  std::size_t row = 0;
  for (std::size_t l = 0; l < Pprev.rank(); ++l) {
    const int gl = Pprev.summands()[l].degree;
    for (std::size_t r = 0; r < src.slices[l].rows(); ++r, ++row) {
      for (std::size_t j = 0; j < P.rank(); ++j) {
        const int gj = P.summands()[j].degree;
        const Vec<K> comp = Pprev.component(l, gj, imgs[j]);
        if (comp.empty() || is_zero_vec(f, std::span<const typename K::Elem>(comp))) continue;
        const Matrix<K> rows = N.times_all(src.slices[l].row(r), gl + s, gj + s);
        const Vec<K> v = vec_mul(f, std::span<const typename K::Elem>(comp), rows);
        std::copy(v.begin(), v.end(), D.row(row).begin() + dst.raw_off[j]);
      }
    }
  }
  return rank(f, D);
}

}  // namespace

template <class K>
std::vector<ExtDims> ext_from_resolution(const FreeResolution<K>& res, const GradedModule<K>& N,
                                         int imax, const Window& w) {
  check_window(w);
  if (!res.terminated() && static_cast<int>(res.length()) < imax + 2)
    throw Error(ErrorCode::InvalidArgument, "resolution too short for Ext^" + std::to_string(imax));
  if (res.module()->algebra() != N.algebra())
    throw Error(ErrorCode::AlgebraMismatch, "Ext between modules over different algebras");
  std::vector<ExtDims> out(imax + 1);
  for (int i = 0; i <= imax; ++i) {
    out[i].i = i;
    out[i].window = w;
    int top = INT_MIN / 4;
    for (int k = std::max(0, i - 1); k <= i + 1; ++k) top = std::max(top, res.max_generator_degree(k));
    out[i].certified_hi = top == INT_MIN / 4 ? INT_MAX / 4 : N.valid_through() - top;
  }
  for (int s = w.lo; s <= w.hi; ++s) {
    std::map<int, FreeHom<K>> homs;
    std::map<int, std::size_t> ranks;
    auto hom_at = [&](int i) -> const FreeHom<K>& {
      auto it = homs.find(i);
      if (it != homs.end()) return it->second;
      FreeHom<K> h;
      if (i < static_cast<int>(res.length())) h = free_hom(res.free(i), N, s);
      return homs.emplace(i, std::move(h)).first->second;
    };
    auto rank_at = [&](int i) {
      auto it = ranks.find(i);
      if (it != ranks.end()) return it->second;
      std::size_t r = 0;
      if (i >= 1 && i < static_cast<int>(res.length()))
        r = delta_rank(res, i, N, s, hom_at(i - 1), hom_at(i));
      ranks.emplace(i, r);
      return r;
    };
    for (int i = 0; i <= imax; ++i) {
      if (s > out[i].certified_hi) continue;
      const std::size_t h = hom_at(i).dim;
      out[i].dims[s] = h - rank_at(i + 1) - rank_at(i);
    }
  }
  return out;
}

template <class K>
ExtDims ext_graded_dims(ModulePtr<K> M, ModulePtr<K> N, int i, const Window& w) {
  if (i < 0 || i > w.hmax)
    throw Error(ErrorCode::WindowExceeded, "Ext^" + std::to_string(i) + " beyond homological_max");
  const auto res = FreeResolution<K>::compute(M, i + 1, w);
  return ext_from_resolution(res, *N, i, w)[i];
}

namespace {

Verdict vanishing_verdict(const std::vector<ExtDims>& ext, int from, int to) {
  Verdict v = Verdict::Pass;
  for (int i = from; i <= to; ++i) {
    if (ext[i].any_nonzero()) return Verdict::Fail;
    if (!ext[i].fully_certified()) v = Verdict::Inconclusive;
  }
  return v;
}

}  // namespace

template <class K>
McmReport is_mcm(ModulePtr<K> M, const Window& w) {
  const auto R = regular_module<K>(M->algebra(), 0, M->algebra()->name());
  const auto res = FreeResolution<K>::compute(M, w.hmax + 1, w);
  auto ext = ext_from_resolution(res, *R, w.hmax, w);
  McmReport rep;
  rep.window = w;
  rep.verdict = w.hmax >= 1 ? vanishing_verdict(ext, 1, w.hmax) : Verdict::Inconclusive;
  rep.ext.assign(ext.begin() + std::min<std::size_t>(1, ext.size()), ext.end());
  return rep;
}

template <class K>
bool is_indecomposable(ModulePtr<K> M, const Window& w) {
  check_window(w);
  const auto E = HomSpace<K>::compute(M, M, 0);
  const std::size_t n = E.dim();
  if (n == 0) return false;
  const K& f = M->field();
  Matrix<K> table = Matrix<K>::with_cols(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto c = E.coords(compose(E.basis()[b], E.basis()[a]));
      if (!c) throw Error(ErrorCode::ShapeMismatch, "End(M)_0 is not closed under composition");
      table.append_row(*c);
    }
  auto unit = E.coords(identity_hom(M));
  if (!unit) throw Error(ErrorCode::ShapeMismatch, "identity outside End(M)_0");
  FinDimAlgebra<K> alg(f, std::move(table), std::move(*unit));
  if (alg.semisimple_dim() == 1) return true;
  try {
    return alg.idempotents().size() == 1;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonSplit)
      throw Error(ErrorCode::NonSplitResidue, "End(" + M->name() + ")_0 has a non-split residue");
    throw;
  }
}

template <class K>
IsoResult<K> are_isomorphic(ModulePtr<K> M, ModulePtr<K> N, const Window& w, int trials,
                            std::uint64_t seed) {
  check_window(w);
  using Status = typename IsoResult<K>::Status;
  IsoResult<K> out;
  if (M->algebra() != N->algebra())
    throw Error(ErrorCode::AlgebraMismatch, "isomorphism test across different algebras");
  const int lo = std::min(M->lo(), N->lo());
  const int top = std::min({w.hi, M->valid_through(), N->valid_through()});
  bool all_zero = true;
  if (lo != kNoDegree) {
    for (int d = lo; d <= top; ++d) {
      const std::size_t a = M->dim(d), b = N->dim(d);
      if (a != b) {
        out.status = Status::NotIsomorphic;
        out.reason = "dimensions differ in degree " + std::to_string(d);
        return out;
      }
      if (a) all_zero = false;
    }
  }
  if (all_zero) {
    out.status = Status::Isomorphic;
    out.witness = zero_hom(M, N, 0);
    out.reason = "both modules vanish within the window";
    return out;
  }
  const auto H = HomSpace<K>::compute(M, N, 0);
  const std::size_t n = H.dim();
  if (n == 0) {
    out.status = Status::NotIsomorphic;
    out.reason = "Hom_0 is zero";
    return out;
  }
  const K& f = M->field();
  auto accept = [&](const Vec<K>& c, const std::string& how) {
    Hom<K> h = H.element(c);
    if (!is_invertible(h, w.hi)) return false;
    out.status = Status::Isomorphic;
    out.witness = std::move(h);
    out.reason = how;
    return true;
  };
  if constexpr (std::is_same_v<K, PrimeField>) {
    const double space = std::pow(static_cast<double>(f.characteristic()), static_cast<double>(n));
    if (space <= 1e4) {
      // one representative per line: first nonzero coordinate equal to 1
      const std::uint32_t p = f.characteristic();
      for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t free = n - lead - 1;
        std::uint64_t count = 1;
        for (std::size_t k = 0; k < free; ++k) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
          Vec<K> c(n, f.zero());
          c[lead] = f.one();
          std::uint64_t x = code;
          for (std::size_t k = lead + 1; k < n; ++k, x /= p) c[k] = static_cast<typename K::Elem>(x % p);
          if (accept(c, "exhaustive scan of Hom_0")) return out;
        }
      }
      out.status = Status::NotIsomorphic;
      out.reason = "no element of Hom_0 is invertible (exhaustive scan)";
      return out;
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Vec<K> c(n);
    for (auto& x : c) x = f.random(rng);
    if (accept(c, "random element of Hom_0, trial " + std::to_string(t))) return out;
  }
  out.status = Status::NotFound;
  out.reason = "no invertible element among " + std::to_string(trials) + " random trials";
  return out;
}

template <class K>
std::optional<int> add_membership(ModulePtr<K> X, ModulePtr<K> M, const Window& w) {
  check_window(w);
  const Hom<K> id = identity_hom(M);
  const Vec<K> target = id.flat();
  if (is_zero_vec(M->field(), std::span<const typename K::Elem>(target))) return 0;
  Subspace<K> span(M->field(), target.size());
  std::vector<int> order;
  for (int k = 0; k <= std::max(std::abs(w.lo), std::abs(w.hi)); ++k) {
    if (k >= w.lo && k <= w.hi) order.push_back(k);
    if (k > 0 && -k >= w.lo && -k <= w.hi) order.push_back(-k);
  }
  for (int s : order) {
    std::optional<HomSpace<K>> there, back;
    try {
      there = HomSpace<K>::compute(M, X, s);
      back = HomSpace<K>::compute(X, M, -s);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::WindowExceeded || e.code() == ErrorCode::DegreeBeyondTruncation)
        continue;
      throw;
    }
    for (const auto& fm : there->basis())
      for (const auto& g : back->basis()) {
        span.insert(std::span<const typename K::Elem>(compose(fm, g).flat()));
        if (span.contains(std::span<const typename K::Elem>(target))) return s;
      }
  }
  return std::nullopt;
}

template <class K>
ClusterTiltingReport check_cluster_tilting(ModulePtr<K> X, int n,
                                           const std::vector<ModulePtr<K>>& candidates,
                                           const Window& w) {
  check_window(w);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cluster tilting needs n >= 1");
  if (n - 1 > w.hmax) throw Error(ErrorCode::WindowExceeded, "n - 1 exceeds homological_max");
  ClusterTiltingReport rep;
  rep.n = n;
  rep.window = w;
  rep.x_mcm = is_mcm(X, w).verdict;
  rep.rigidity_vacuous = n == 1;
  const auto resX = FreeResolution<K>::compute(X, n, w);
  if (n == 1) {
    rep.x_rigid = Verdict::Pass;
  } else {
    rep.x_rigid = vanishing_verdict(ext_from_resolution(resX, *X, n - 1, w), 1, n - 1);
  }
  Verdict overall = verdict_and(rep.x_mcm, rep.x_rigid);
  for (const auto& M : candidates) {
    CandidateReport c;
    c.name = M->name();
    c.mcm = is_mcm(M, w).verdict;
    if (n == 1) {
      c.ext_vanishing = Verdict::Pass;
    } else {
      const auto resM = FreeResolution<K>::compute(M, n, w);
      c.ext_vanishing =
          verdict_and(vanishing_verdict(ext_from_resolution(resX, *M, n - 1, w), 1, n - 1),
                      vanishing_verdict(ext_from_resolution(resM, *X, n - 1, w), 1, n - 1));
    }
    c.add_shift = add_membership(X, M, w);
    c.in_add = c.add_shift.has_value();
    const Verdict member = verdict_and(c.mcm, c.ext_vanishing);
    if (c.in_add)
      c.verdict = member;
    else if (member == Verdict::Fail)
      c.verdict = Verdict::Pass;
    else
      c.verdict = Verdict::Inconclusive;
    overall = verdict_and(overall, c.verdict);
    rep.candidates.push_back(std::move(c));
  }
  rep.verdict = overall;
  return rep;
}

// ----------------------------------------------------------- evaluation map

namespace {

template <class K>
bool is_regular_summand(const GradedModule<K>& X) {
  if (!X.has_declared_presentation()) return false;
  const auto& p = X.presentation();
  if (!p.relations.empty()) return false;
  const std::size_t ni = std::max<std::size_t>(X.algebra()->num_idempotents(), 1);
  if (p.cover.rank() != ni) return false;
  std::vector<char> seen(ni, 0);
  for (const auto& s : p.cover.summands()) {
    if (s.degree != 0 || seen[s.idem]) return false;
    seen[s.idem] = 1;
  }
  return true;
}

template <class K>
int max_generator(const GradedModule<K>& X) {
  return max_degree(X.presentation().cover);
}

}  // namespace

template <class K>
EvalReport eval_iso_check(const std::vector<ModulePtr<K>>& summands, ModulePtr<K> M,
                          const Window& w) {
  check_window(w);
  using Elem = typename K::Elem;
  if (std::none_of(summands.begin(), summands.end(),
                   [](const ModulePtr<K>& X) { return is_regular_summand(*X); }))
    throw Error(ErrorCode::HypothesisViolated, "no summand is the regular module");
  const K& f = M->field();
  const std::size_t m = summands.size();

  std::map<std::pair<std::size_t, int>, HomSpace<K>> homs;  // Hom(X_i, M, a)
  std::map<std::tuple<std::size_t, std::size_t, int>, HomSpace<K>> ends;  // Hom(X_j, X_i, b)
  auto hom = [&](std::size_t i, int a) -> const HomSpace<K>& {
    auto key = std::make_pair(i, a);
    auto it = homs.find(key);
    if (it == homs.end()) it = homs.emplace(key, HomSpace<K>::compute(summands[i], M, a)).first;
    return it->second;
  };
  auto end = [&](std::size_t j, std::size_t i, int b) -> const HomSpace<K>& {
    auto key = std::make_tuple(j, i, b);
    auto it = ends.find(key);
    if (it == ends.end())
      it = ends.emplace(key, HomSpace<K>::compute(summands[j], summands[i], b)).first;
    return it->second;
  };

  EvalReport rep;
  rep.window = w;
  Verdict verdict = Verdict::Pass;
  for (int d = w.lo; d <= w.hi; ++d) {
    EvalDegree ed;
    ed.degree = d;
    try {
      ed.module_dim = M->dim(d);
      // blocks (i, a) of V = (+) Hom(X_i, M)_a (x) (X_i)_{d-a}
      std::map<std::pair<std::size_t, int>, std::size_t> off;
      std::size_t V = 0;
      Matrix<K> ev = Matrix<K>::with_cols(ed.module_dim);
      if (M->lo() != kNoDegree) {
        for (std::size_t i = 0; i < m; ++i) {
          const auto& Xi = *summands[i];
          if (Xi.lo() == kNoDegree) continue;
          for (int a = M->lo() - max_generator(Xi); a <= d - Xi.lo(); ++a) {
            const std::size_t xd = Xi.dim(d - a);
            const auto& H = hom(i, a);
            if (xd == 0 || H.dim() == 0) continue;
            off[{i, a}] = V;
            V += H.dim() * xd;
            for (const auto& h : H.basis()) ev.append_rows(h.matrix(d - a));
          }
        }
      }
      ed.surjective = rank(f, ev) == ed.module_dim;
      const std::size_t target = V - std::min(V, ed.module_dim);
      Subspace<K> R(f, V);
      if (R.dim() < target) {
        int bmin = INT_MAX / 4, bmax = INT_MIN / 4;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) {
            if (summands[i]->lo() == kNoDegree || summands[j]->lo() == kNoDegree) continue;
            bmin = std::min(bmin, summands[i]->lo() - max_generator(*summands[j]));
          }
        int lo_min = INT_MAX / 4;
        for (const auto& X : summands) lo_min = std::min(lo_min, X->lo());
        for (const auto& [key, o] : off) bmax = std::max(bmax, d - key.second - lo_min);
        for (int b = bmin; b <= bmax && R.dim() < target; ++b) {
          for (const auto& [key, o] : off) {
            if (R.dim() >= target) break;
            const auto [i, a] = key;
            const auto& H = hom(i, a);
            const std::size_t xi = summands[i]->dim(d - a);
            for (std::size_t j = 0; j < m && R.dim() < target; ++j) {
              const auto& Xj = *summands[j];
              if (Xj.lo() == kNoDegree || d - a - b < Xj.lo()) continue;
              const std::size_t xj = Xj.dim(d - a - b);
              if (xj == 0) continue;
              const auto& Bji = end(j, i, b);
              if (Bji.dim() == 0) continue;
              auto tgt = off.find({j, a + b});
              for (const auto& beta : Bji.basis()) {
                const Matrix<K> bx = beta.matrix(d - a - b);  // (X_j)_{d-a-b} -> (X_i)_{d-a}
                for (std::size_t fi = 0; fi < H.dim() && R.dim() < target; ++fi) {
                  Vec<K> fc;
                  if (tgt != off.end()) {
                    auto c = hom(j, a + b).coords(compose(beta, H.basis()[fi]));
                    if (!c) throw Error(ErrorCode::ShapeMismatch, "composite outside Hom space");
                    fc = std::move(*c);
                  }
                  for (std::size_t x = 0; x < xj; ++x) {
                    Vec<K> v(V, f.zero());
                    if (tgt != off.end())
                      for (std::size_t k = 0; k < fc.size(); ++k)
                        v[tgt->second + k * xj + x] = fc[k];
                    for (std::size_t t = 0; t < xi; ++t)
                      v[o + fi * xi + t] = f.sub(v[o + fi * xi + t], bx.at(x, t));
                    R.insert(std::span<const Elem>(v));
                  }
                }
              }
            }
          }
        }
      }
      ed.tensor_dim = V - R.dim();
      ed.iso = ed.surjective && ed.tensor_dim == ed.module_dim;
      if (!ed.iso) verdict = verdict_and(verdict, Verdict::Fail);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowExceeded && e.code() != ErrorCode::DegreeBeyondTruncation)
        throw;
      verdict = verdict_and(verdict, Verdict::Inconclusive);
      rep.degrees.push_back(ed);
      continue;
    }
    rep.degrees.push_back(ed);
  }
  rep.verdict = verdict;
  return rep;
}

template <class K>
IsoResult<K> nu_stability_check(ModulePtr<K> M, const GradedAutomorphism<K>& sigma,
                                const Window& w, int trials, std::uint64_t seed) {
  return are_isomorphic<K>(twist_module(M, sigma), M, w, trials, seed);
}

#define NCG_INSTANTIATE(K)                                                                     \
  template struct Hom<K>;                                                                      \
  template class HomSpace<K>;                                                                  \
  template class FreeResolution<K>;                                                            \
  template Matrix<K> induced_map<K>(const GradedModule<K>&, const FreeModule<K>&,              \
                                    const std::vector<Vec<K>>&, int, int);                     \
  template Hom<K> identity_hom<K>(ModulePtr<K>);                                               \
  template Hom<K> zero_hom<K>(ModulePtr<K>, ModulePtr<K>, int);                                \
  template Hom<K> compose<K>(const Hom<K>&, const Hom<K>&);                                    \
  template bool is_invertible<K>(const Hom<K>&, int);                                          \
  template std::vector<ExtDims> ext_from_resolution<K>(const FreeResolution<K>&,               \
                                                       const GradedModule<K>&, int,            \
                                                       const Window&);                         \
  template ExtDims ext_graded_dims<K>(ModulePtr<K>, ModulePtr<K>, int, const Window&);         \
  template McmReport is_mcm<K>(ModulePtr<K>, const Window&);                                   \
  template bool is_indecomposable<K>(ModulePtr<K>, const Window&);                             \
  template struct IsoResult<K>;                                                                \
  template IsoResult<K> are_isomorphic<K>(ModulePtr<K>, ModulePtr<K>, const Window&, int,      \
                                          std::uint64_t);                                      \
  template std::optional<int> add_membership<K>(ModulePtr<K>, ModulePtr<K>, const Window&);    \
  template ClusterTiltingReport check_cluster_tilting<K>(ModulePtr<K>, int,                    \
                                                         const std::vector<ModulePtr<K>>&,     \
                                                         const Window&);                       \
  template EvalReport eval_iso_check<K>(const std::vector<ModulePtr<K>>&, ModulePtr<K>,        \
                                        const Window&);                                        \
  template IsoResult<K> nu_stability_check<K>(ModulePtr<K>, const GradedAutomorphism<K>&,      \
                                              const Window&, int, std::uint64_t);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
