#include "ncg/gmodule.hpp"

#include <algorithm>

namespace ncg {

namespace {

template <class K>
Matrix<K> pivot_cols(const Matrix<K>& m, const Subspace<K>& s) {
  return m.select_cols(s.pivots());
}

template <class K>
bool single_idempotent(const Algebra<K>& alg) {
  return alg.num_idempotents() == 1;
}

}  // namespace

// -------------------------------------------------------------- FreeModule

template <class K>
FreeModule<K>::FreeModule(AlgebraPtr<K> alg, std::vector<Summand> summands)
    : alg_(std::move(alg)), summands_(std::move(summands)) {
  for (const auto& s : summands_) {
    if (s.idem >= std::max<std::size_t>(alg_->num_idempotents(), 1))
      throw Error(ErrorCode::InvalidArgument, "summand refers to an unknown idempotent");
    lo_ = std::min(lo_, s.degree);
  }
}

template <class K>
int FreeModule<K>::valid_through() const {
  if (summands_.empty()) return kNoDegree;
  return alg_->valid_through() + lo_;
}

template <class K>
std::size_t FreeModule<K>::component_dim(std::size_t j, int d) const {
  const Summand& s = summands_[j];
  const int n = d - s.degree;
  if (n < 0) return 0;
  if (single_idempotent(*alg_)) return alg_->dim(n);
  return alg_->corner(s.idem, n).dim();
}

template <class K>
std::size_t FreeModule<K>::dim(int d) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < summands_.size(); ++j) n += component_dim(j, d);
  return n;
}

template <class K>
std::size_t FreeModule<K>::offset(std::size_t j, int d) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < j; ++i) n += component_dim(i, d);
  return n;
}

template <class K>
Vec<K> FreeModule<K>::component(std::size_t j, int d, std::span<const Elem> v) const {
  const int n = d - summands_[j].degree;
  if (n < 0) return {};
  const std::size_t off = offset(j, d), len = component_dim(j, d);
  std::span<const Elem> slice = v.subspan(off, len);
  if (single_idempotent(*alg_)) return Vec<K>(slice.begin(), slice.end());
  return vec_mul(field(), slice, alg_->corner(summands_[j].idem, n).basis());
}

template <class K>
Vec<K> FreeModule<K>::generator(std::size_t j) const {
  const int g = summands_[j].degree;
  Vec<K> v(dim(g), field().zero());
  const std::size_t off = offset(j, g);
  if (single_idempotent(*alg_)) {
    v[off] = field().one();
  } else {
    const auto& c = alg_->corner(summands_[j].idem, 0);
    const Vec<K> e = c.coords(alg_->idempotent(summands_[j].idem));
    std::copy(e.begin(), e.end(), v.begin() + off);
  }
  return v;
}

template <class K>
Matrix<K> FreeModule<K>::times_all(std::span<const Elem> u, int t, int d) const {
  const K& f = field();
  const int e = d - t;
  const std::size_t rows = alg_->dim(e);
  Matrix<K> out = Matrix<K>::zeros(f, rows, dim(d));
  if (rows == 0) return out;
  const bool single = single_idempotent(*alg_);
  for (std::size_t j = 0; j < summands_.size(); ++j) {
    const int n = t - summands_[j].degree;
    if (n < 0) continue;
    const Vec<K> comp = component(j, t, u);
    if (is_zero_vec(f, std::span<const Elem>(comp))) continue;
    Matrix<K> L = alg_->left_mult_matrix(comp, n, e);
    if (!single) L = pivot_cols(L, alg_->corner(summands_[j].idem, n + e));
    const std::size_t off = offset(j, d);
    for (std::size_t r = 0; r < rows; ++r)
      std::copy(L.row(r).begin(), L.row(r).end(), out.row(r).begin() + off);
  }
  return out;
}

template <class K>
Matrix<K> FreeModule<K>::right_mult(int d, const Vec<K>& r, int e) const {
  const K& f = field();
  Matrix<K> out = Matrix<K>::zeros(f, dim(d), dim(d + e));
  const bool single = single_idempotent(*alg_);
  for (std::size_t j = 0; j < summands_.size(); ++j) {
    const int n = d - summands_[j].degree;
    if (n < 0 || component_dim(j, d) == 0) continue;
    Matrix<K> R = alg_->right_mult_matrix(r, e, n);
    if (!single) {
      const std::size_t i = summands_[j].idem;
      R = pivot_cols(mul(f, alg_->corner(i, n).basis(), R), alg_->corner(i, n + e));
    }
    const std::size_t ro = offset(j, d), co = offset(j, d + e);
    for (std::size_t a = 0; a < R.rows(); ++a)
      std::copy(R.row(a).begin(), R.row(a).end(), out.row(ro + a).begin() + co);
  }
  return out;
}

template <class K>
FreeModule<K> FreeModule<K>::shifted(int n) const {
  std::vector<Summand> s = summands_;
  for (auto& x : s) x.degree -= n;
  return FreeModule(alg_, std::move(s));
}

template <class K>
FreeModule<K> FreeModule<K>::concat(const FreeModule& o) const {
  if (alg_ != o.alg_) throw Error(ErrorCode::AlgebraMismatch, "free modules over different algebras");
  std::vector<Summand> s = summands_;
  s.insert(s.end(), o.summands_.begin(), o.summands_.end());
  return FreeModule(alg_, std::move(s));
}

// ------------------------------------------------------------------- Piece

template <class K>
Piece<K> Piece<K>::make(const K& f, std::size_t n, const Matrix<K>& U, const Matrix<K>& Krows) {
  Subspace<K> rel = Subspace<K>::span_of(f, n, Krows);
  Matrix<K> reduced = U.rows() ? U : Matrix<K>::with_cols(n);
  for (std::size_t i = 0; i < reduced.rows(); ++i) rel.reduce(reduced.row(i));
  Subspace<K> quot = Subspace<K>::span_of(f, n, reduced);
  return Piece{std::move(rel), std::move(quot)};
}

template <class K>
Piece<K> Piece<K>::zero(const K& f, std::size_t n) {
  return Piece{Subspace<K>(f, n), Subspace<K>(f, n)};
}

template <class K>
Vec<K> Piece<K>::coords(std::span<const Elem> v) const {
  Vec<K> w(v.begin(), v.end());
  rel.reduce(std::span(w));
  return quot.coords(w);
}

template <class K>
Vec<K> Piece<K>::lift(std::span<const Elem> c) const {
  return vec_mul(quot.field(), c, quot.basis());
}

// ------------------------------------------------------ GradedAutomorphism

template <class K>
GradedAutomorphism<K>::GradedAutomorphism(PresentedPtr<K> alg, std::vector<NcPoly<K>> images)
    : alg_(std::move(alg)), images_(std::move(images)) {
  const auto& free = alg_->free();
  const auto& ord = free->order();
  const K& f = alg_->field();
  if (images_.size() != free->num_generators())
    throw Error(ErrorCode::InvalidAutomorphism, "one image per generator is required");
  for (std::size_t g = 0; g < images_.size(); ++g) {
    const auto& im = images_[g];
    if (im.context() != free && !im.context()->same_as(*free))
      throw Error(ErrorCode::FieldMismatch, "automorphism image lives in another free algebra");
    if (!im.is_homogeneous() ||
        (!im.is_zero() && im.degree() != ord.generator_degree(static_cast<int>(g))))
      throw Error(ErrorCode::InvalidAutomorphism,
                  "image of " + free->names()[g] + " is not homogeneous of its degree");
  }
  for (const auto& rel : alg_->presentation().relations()) {
    NcPoly<K> acc(free);
    for (const auto& [w, c] : rel.terms()) {
      NcPoly<K> t = NcPoly<K>::constant(free, c);
      for (int g : w) t = t * images_[g];
      acc = acc + t;
    }
    if (!alg_->gb().normal_form(acc).is_zero())
      throw Error(ErrorCode::InvalidAutomorphism,
                  "relation " + rel.to_string() + " is not preserved");
  }
  std::vector<Vec<K>> gen_coords;
  for (std::size_t g = 0; g < images_.size(); ++g)
    gen_coords.push_back(alg_->to_coords(images_[g], ord.generator_degree(static_cast<int>(g))));
  const int V = alg_->valid_through();
  mats_.push_back(Matrix<K>::identity(f, alg_->dim(0)));
  for (int n = 1; n <= V; ++n) {
    Matrix<K> m = Matrix<K>::with_cols(alg_->dim(n));
    for (const Word& w : alg_->basis_words(n)) {
      const int x = w.back();
      const int dx = ord.generator_degree(x);
      const Word head(w.begin(), w.end() - 1);
      const auto& hb = alg_->basis_words(n - dx);
      const auto idx = static_cast<std::size_t>(std::find(hb.begin(), hb.end(), head) - hb.begin());
      m.append_row(alg_->product(mats_[n - dx].row_vec(idx), n - dx, gen_coords[x], dx));
    }
    mats_.push_back(std::move(m));
  }
  for (int n = 0; n <= V; ++n) {
    auto inv = ncg::inverse(f, mats_[n]);
    if (!inv)
      throw Error(ErrorCode::InvalidAutomorphism,
                  "not invertible in degree " + std::to_string(n));
    inv_.push_back(std::move(*inv));
  }
}

template <class K>
GradedAutomorphism<K> GradedAutomorphism<K>::identity(PresentedPtr<K> alg) {
  std::vector<NcPoly<K>> images;
  for (std::size_t g = 0; g < alg->free()->num_generators(); ++g)
    images.push_back(NcPoly<K>::generator(alg->free(), static_cast<int>(g)));
  return GradedAutomorphism(std::move(alg), std::move(images));
}

template <class K>
GradedAutomorphism<K> GradedAutomorphism<K>::inverse() const {
  const auto& free = alg_->free();
  const K& f = alg_->field();
  std::vector<NcPoly<K>> images;
  for (std::size_t g = 0; g < free->num_generators(); ++g) {
    const int dg = free->order().generator_degree(static_cast<int>(g));
    const Vec<K> x = alg_->to_coords(NcPoly<K>::generator(free, static_cast<int>(g)), dg);
    images.push_back(alg_->from_coords(vec_mul(f, std::span<const typename K::Elem>(x), inv_[dg]), dg));
  }
  return GradedAutomorphism(alg_, std::move(images));
}

// ------------------------------------------------------------ GradedModule

template <class K>
GradedModule<K>::GradedModule(FreeModule<K> ambient, int valid, PieceFn fn, std::string name,
                              int cap, std::optional<ModulePresentation<K>> declared)
    : ambient_(std::move(ambient)),
      valid_(valid),
      fn_(std::move(fn)),
      name_(std::move(name)),
      cap_(cap),
      declared_(declared.has_value()) {
  if (declared) {
    declared->declared = true;
    pres_ = std::make_unique<ModulePresentation<K>>(std::move(*declared));
  }
}

template <class K>
const Piece<K>& GradedModule<K>::piece(int d) const {
  if (d > valid_)
    throw Error(ErrorCode::DegreeBeyondTruncation,
                "degree " + std::to_string(d) + " of module " + name_ +
                    " exceeds its validity bound " + std::to_string(valid_));
  std::lock_guard lock(mutex_);
  auto it = pieces_.find(d);
  if (it != pieces_.end()) return *it->second;
  std::unique_ptr<Piece<K>> p;
  if (d < lo())
    p = std::make_unique<Piece<K>>(Piece<K>::zero(field(), 0));
  else
    p = std::make_unique<Piece<K>>(fn_(d));
  return *pieces_.emplace(d, std::move(p)).first->second;
}

template <class K>
std::vector<std::size_t> GradedModule<K>::dims(int from, int to) const {
  std::vector<std::size_t> out;
  for (int d = from; d <= to; ++d) out.push_back(dim(d));
  return out;
}

template <class K>
Matrix<K> GradedModule<K>::action(int d, const Vec<K>& r, int e) const {
  const Piece<K>& src = piece(d);
  const Piece<K>& dst = piece(d + e);
  Matrix<K> out = Matrix<K>::with_cols(dst.dim());
  if (src.dim() == 0) return out;
  const Matrix<K> img = mul(field(), src.quot.basis(), ambient_.right_mult(d, r, e));
  for (std::size_t i = 0; i < img.rows(); ++i) out.append_row(dst.coords(img.row(i)));
  return out;
}

template <class K>
Matrix<K> GradedModule<K>::times_all(std::span<const Elem> m, int t, int d) const {
  const Piece<K>& dst = piece(d);
  const Vec<K> u = piece(t).lift(m);
  const Matrix<K> rows = ambient_.times_all(u, t, d);
  Matrix<K> out = Matrix<K>::with_cols(dst.dim());
  for (std::size_t i = 0; i < rows.rows(); ++i) out.append_row(dst.coords(rows.row(i)));
  return out;
}

template <class K>
Matrix<K> GradedModule<K>::idempotent_part(int d, std::size_t i) const {
  const std::size_t n = dim(d);
  if (algebra()->num_idempotents() == 1) return Matrix<K>::identity(field(), n);
  Matrix<K> m = action(d, algebra()->idempotent(i), 0);
  rref(field(), m);
  if (m.rows() == 0) m = Matrix<K>::with_cols(n);
  return m;
}

namespace {

// cover_d -> M_d for generators with the given ambient images.
template <class K>
Matrix<K> cover_map(const GradedModule<K>& M, const FreeModule<K>& cover,
                    const std::vector<Vec<K>>& images, int d) {
  const K& f = M.field();
  const auto& alg = *M.algebra();
  const Piece<K>& dst = M.piece(d);
  Matrix<K> out = Matrix<K>::with_cols(dst.dim());
  for (std::size_t j = 0; j < cover.rank(); ++j) {
    const Summand& s = cover.summands()[j];
    const int n = d - s.degree;
    if (n < 0) continue;
    Matrix<K> rows = M.ambient().times_all(images[j], s.degree, d);
    if (alg.num_idempotents() > 1) rows = mul(f, alg.corner(s.idem, n).basis(), rows);
    for (std::size_t i = 0; i < rows.rows(); ++i) out.append_row(dst.coords(rows.row(i)));
  }
  return out;
}

}  // namespace

template <class K>
const ModulePresentation<K>& GradedModule<K>::presentation() const {
  std::lock_guard lock(mutex_);
  if (pres_) return *pres_;
  Generators<K> gens = minimal_generators(*this);
  if (gens.at_bound)
    throw Error(ErrorCode::IncompleteKernel,
                "module " + name_ + " has a generator at the search bound " +
                    std::to_string(search_bound()));
  FreeModule<K> cover = gens.cover;
  std::vector<Vec<K>> images = gens.images;
  const int valid = std::min(valid_, cover.valid_through());
  auto syz = kernel_module<K>(
      cover, [this, cover, images](int d) { return cover_map(*this, cover, images, d); }, valid,
      cap_, name_ + ".syz");
  Generators<K> rels = minimal_generators(*syz);
  if (rels.at_bound)
    throw Error(ErrorCode::IncompleteKernel,
                "relations of module " + name_ + " reach the search bound " +
                    std::to_string(syz->search_bound()));
  pres_ = std::make_unique<ModulePresentation<K>>(
      ModulePresentation<K>{std::move(cover), std::move(images), std::move(rels.cover),
                            std::move(rels.images), false});
  return *pres_;
}

template <class K>
const Matrix<K>& GradedModule<K>::cover_matrix(int d) const {
  const auto& p = presentation();
  std::lock_guard lock(mutex_);
  auto it = cover_.find(d);
  if (it != cover_.end()) return *it->second;
  auto m = std::make_unique<Matrix<K>>(cover_map(*this, p.cover, p.images, d));
  return *cover_.emplace(d, std::move(m)).first->second;
}

template <class K>
const Matrix<K>& GradedModule<K>::section(int d) const {
  const Matrix<K>& phi = cover_matrix(d);
  std::lock_guard lock(mutex_);
  auto it = section_.find(d);
  if (it != section_.end()) return *it->second;
  const K& f = field();
  const std::size_t n = phi.cols();
  RowSolver<K> solver(f, phi);
  Matrix<K> s = Matrix<K>::with_cols(phi.rows());
  Vec<K> unit(n, f.zero());
  for (std::size_t k = 0; k < n; ++k) {
    unit[k] = f.one();
    auto x = solver.solve(std::span<const Elem>(unit));
    if (!x)
      throw Error(ErrorCode::ShapeMismatch,
                  "generators of " + name_ + " do not span degree " + std::to_string(d));
    s.append_row(*x);
    unit[k] = f.zero();
  }
  return *section_.emplace(d, std::make_unique<Matrix<K>>(std::move(s))).first->second;
}

// --------------------------------------------------------------- generators

template <class K>
Generators<K> minimal_generators(const GradedModule<K>& M) {
  const K& f = M.field();
  const auto& alg = *M.algebra();
  const bool single = alg.num_idempotents() == 1;
  std::vector<Summand> sums;
  std::vector<Vec<K>> in_m, in_amb;
  Generators<K> out;
  const int bound = M.search_bound();
  if (M.lo() == kNoDegree) {
    out.cover = FreeModule<K>(M.algebra(), {});
    return out;
  }
  for (int d = M.lo(); d <= bound; ++d) {
    const Piece<K>& P = M.piece(d);
    const std::size_t n = P.dim();
    if (n == 0) continue;
    Subspace<K> span(f, n);
    for (std::size_t j = 0; j < sums.size(); ++j) {
      Matrix<K> rows = M.times_all(in_m[j], sums[j].degree, d);
      if (!single) rows = mul(f, alg.corner(sums[j].idem, d - sums[j].degree).basis(), rows);
      span.insert_rows(rows);
    }
    const Matrix<K>& rad = alg.radical_zero();
    for (std::size_t r = 0; r < rad.rows(); ++r) span.insert_rows(M.action(d, rad.row_vec(r), 0));
    for (std::size_t i = 0; i < std::max<std::size_t>(alg.num_idempotents(), 1); ++i) {
      if (span.dim() == n) break;
      const Matrix<K> E = M.idempotent_part(d, i);
      for (std::size_t k = 0; k < E.rows() && span.dim() < n; ++k) {
        if (span.contains(E.row(k))) continue;
        sums.push_back({d, i});
        in_m.push_back(E.row_vec(k));
        in_amb.push_back(P.lift(E.row(k)));
        Matrix<K> rows = M.times_all(E.row(k), d, d);
        if (!single) rows = mul(f, alg.corner(i, 0).basis(), rows);
        span.insert_rows(rows);
        if (d == bound) out.at_bound = true;
      }
    }
  }
  out.cover = FreeModule<K>(M.algebra(), std::move(sums));
  out.images = std::move(in_amb);
  return out;
}

// ---------------------------------------------------------------- factories

template <class K>
ModulePtr<K> free_graded_module(AlgebraPtr<K> alg, const std::vector<int>& shifts,
                                std::string name) {
  std::vector<Summand> sums;
  const std::size_t ni = std::max<std::size_t>(alg->num_idempotents(), 1);
  for (int s : shifts)
    for (std::size_t i = 0; i < ni; ++i) sums.push_back({-s, i});
  FreeModule<K> F(alg, sums);
  ModulePresentation<K> p;
  p.cover = F;
  for (std::size_t j = 0; j < F.rank(); ++j) p.images.push_back(F.generator(j));
  p.rel_free = FreeModule<K>(alg, {});
  const K field = alg->field();
  auto fn = [F, field](int d) {
    const std::size_t n = F.dim(d);
    return Piece<K>::make(field, n, Matrix<K>::identity(field, n), Matrix<K>::with_cols(n));
  };
  return std::make_shared<const GradedModule<K>>(F, F.valid_through(), fn, std::move(name),
                                                 kDefaultCap, std::move(p));
}

template <class K>
ModulePtr<K> regular_module(AlgebraPtr<K> alg, int shift, std::string name) {
  if (name.empty()) name = alg->name() + (shift ? "(" + std::to_string(shift) + ")" : "");
  return free_graded_module<K>(std::move(alg), {shift}, std::move(name));
}

template <class K>
ModulePtr<K> cokernel_module(const FreeModule<K>& F, const FreeModule<K>& rel_free,
                             std::vector<Vec<K>> relations, std::string name) {
  if (rel_free.rank() != relations.size())
    throw Error(ErrorCode::ShapeMismatch, "one relation per relation summand is required");
  ModulePresentation<K> p;
  p.cover = F;
  for (std::size_t j = 0; j < F.rank(); ++j) p.images.push_back(F.generator(j));
  p.rel_free = rel_free;
  p.relations = relations;
  const K field = F.field();
  auto fn = [F, rel_free, relations, field](int d) {
    const auto& alg = *F.algebra();
    const std::size_t n = F.dim(d);
    Matrix<K> Krows = Matrix<K>::with_cols(n);
    for (std::size_t k = 0; k < relations.size(); ++k) {
      const Summand& s = rel_free.summands()[k];
      if (s.degree > d) continue;
      Matrix<K> rows = F.times_all(relations[k], s.degree, d);
      if (alg.num_idempotents() > 1) rows = mul(field, alg.corner(s.idem, d - s.degree).basis(), rows);
      Krows.append_rows(rows);
    }
    return Piece<K>::make(field, n, Matrix<K>::identity(field, n), Krows);
  };
  return std::make_shared<const GradedModule<K>>(F, F.valid_through(), fn, std::move(name),
                                                 kDefaultCap, std::move(p));
}

template <class K>
ModulePtr<K> cyclic_module(PresentedPtr<K> alg, const std::vector<NcPoly<K>>& gens,
                           std::string name) {
  if (!alg->is_connected())
    throw Error(ErrorCode::NotConnected, "cyclic modules need a connected algebra");
  FreeModule<K> F(alg, {{0, 0}});
  std::vector<Summand> rs;
  std::vector<Vec<K>> rels;
  for (const auto& g : gens) {
    if (!g.is_homogeneous()) throw Error(ErrorCode::NonHomogeneous, g.to_string());
    if (g.is_zero()) continue;
    const int t = g.degree();
    rs.push_back({t, 0});
    rels.push_back(alg->to_coords(g, t));
  }
  return cokernel_module<K>(F, FreeModule<K>(alg, rs), std::move(rels), std::move(name));
}

template <class K>
ModulePtr<K> kernel_module(const FreeModule<K>& F, std::function<Matrix<K>(int)> map, int valid,
                           int cap, std::string name) {
  const K field = F.field();
  auto fn = [F, map, field](int d) {
    const std::size_t n = F.dim(d);
    const Matrix<K> m = map(d);
    if (m.rows() != n) throw Error(ErrorCode::ShapeMismatch, "kernel map has the wrong height");
    Matrix<K> U = m.cols() == 0 ? Matrix<K>::identity(field, n) : left_kernel(field, m);
    return Piece<K>::make(field, n, U, Matrix<K>::with_cols(n));
  };
  return std::make_shared<const GradedModule<K>>(F, std::min(valid, F.valid_through()), fn,
                                                 std::move(name), cap);
}

template <class K>
ModulePtr<K> shift_module(ModulePtr<K> M, int n) {
  std::optional<ModulePresentation<K>> decl;
  if (M->has_declared_presentation()) {
    ModulePresentation<K> p = M->presentation();
    p.cover = p.cover.shifted(n);
    p.rel_free = p.rel_free.shifted(n);
    decl = std::move(p);
  }
  auto fn = [M, n](int d) { return M->piece(d + n); };
  const int valid = M->valid_through() >= kNoDegree ? kNoDegree : M->valid_through() - n;
  return std::make_shared<const GradedModule<K>>(M->ambient().shifted(n), valid, fn,
                                                 M->name() + "(" + std::to_string(n) + ")",
                                                 M->cap() - n, std::move(decl));
}

template <class K>
ModulePtr<K> truncate_module(ModulePtr<K> M, int n) {
  const K field = M->field();
  auto fn = [M, n, field](int d) {
    const Piece<K>& P = M->piece(d);
    if (d >= n) return P;
    return Piece<K>::make(field, P.rel.ambient_dim(), P.rel.basis(), P.rel.basis());
  };
  return std::make_shared<const GradedModule<K>>(M->ambient(), M->valid_through(), fn,
                                                 M->name() + ">=" + std::to_string(n), M->cap());
}

namespace {

// sigma^{-1} on F_d, block diagonal over the summands.
template <class K>
Matrix<K> sigma_inverse_on(const FreeModule<K>& F, const GradedAutomorphism<K>& sigma, int d) {
  const K& f = F.field();
  const std::size_t n = F.dim(d);
  Matrix<K> out = Matrix<K>::zeros(f, n, n);
  for (std::size_t j = 0; j < F.rank(); ++j) {
    const int m = d - F.summands()[j].degree;
    if (m < 0) continue;
    const Matrix<K>& s = sigma.inverse_matrix(m);
    const std::size_t off = F.offset(j, d);
    for (std::size_t a = 0; a < s.rows(); ++a)
      std::copy(s.row(a).begin(), s.row(a).end(), out.row(off + a).begin() + off);
  }
  return out;
}

}  // namespace

template <class K>
ModulePtr<K> twist_module(ModulePtr<K> M, const GradedAutomorphism<K>& sigma) {
  if (static_cast<const Algebra<K>*>(sigma.algebra().get()) != M->algebra().get())
    throw Error(ErrorCode::AlgebraMismatch, "automorphism of a different algebra");
  const K field = M->field();
  const FreeModule<K>& F = M->ambient();
  std::optional<ModulePresentation<K>> decl;
  if (M->has_declared_presentation()) {
    ModulePresentation<K> p = M->presentation();
    for (std::size_t j = 0; j < p.images.size(); ++j) {
      const int g = p.cover.summands()[j].degree;
      p.images[j] = vec_mul(field, std::span<const typename K::Elem>(p.images[j]),
                            sigma_inverse_on(F, sigma, g));
    }
    for (std::size_t k = 0; k < p.relations.size(); ++k) {
      const int t = p.rel_free.summands()[k].degree;
      p.relations[k] = vec_mul(field, std::span<const typename K::Elem>(p.relations[k]),
                               sigma_inverse_on(p.cover, sigma, t));
    }
    decl = std::move(p);
  }
  auto fn = [M, sigma, field](int d) {
    const Piece<K>& P = M->piece(d);
    const Matrix<K> S = sigma_inverse_on(M->ambient(), sigma, d);
    const std::size_t n = P.rel.ambient_dim();
    return Piece<K>::make(field, n, mul(field, P.quot.basis(), S), mul(field, P.rel.basis(), S));
  };
  const int valid = std::min(M->valid_through(), F.valid_through());
  return std::make_shared<const GradedModule<K>>(F, valid, fn, M->name() + "_tw", M->cap(),
                                                 std::move(decl));
}

template <class K>
ModulePtr<K> direct_sum(const std::vector<ModulePtr<K>>& parts, std::string name) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "direct sum of nothing");
  const auto alg = parts.front()->algebra();
  FreeModule<K> F(alg, {});
  int valid = kNoDegree, cap = kNoDegree;
  bool declared = true;
  for (const auto& p : parts) {
    if (p->algebra() != alg)
      throw Error(ErrorCode::AlgebraMismatch, "summands over different algebras");
    F = F.concat(p->ambient());
    valid = std::min(valid, p->valid_through());
    cap = std::min(cap, p->cap());
    declared = declared && p->has_declared_presentation();
  }
  if (name.empty()) {
    for (const auto& p : parts) name += (name.empty() ? "" : "+") + p->name();
  }
  const K field = alg->field();
  // Places vectors of part q (ambient family `fam`) into the concatenation.
  auto place = [parts](auto fam, std::size_t q, int d, const Vec<K>& v, const K& f) {
    std::size_t before = 0, total = 0;
    for (std::size_t r = 0; r < parts.size(); ++r) {
      const std::size_t n = fam(r).dim(d);
      if (r < q) before += n;
      total += n;
    }
    Vec<K> out(total, f.zero());
    std::copy(v.begin(), v.end(), out.begin() + before);
    return out;
  };
  std::optional<ModulePresentation<K>> decl;
  if (declared) {
    ModulePresentation<K> p;
    p.cover = FreeModule<K>(alg, {});
    p.rel_free = FreeModule<K>(alg, {});
    for (const auto& q : parts) {
      p.cover = p.cover.concat(q->presentation().cover);
      p.rel_free = p.rel_free.concat(q->presentation().rel_free);
    }
    auto amb = [&](std::size_t r) -> const FreeModule<K>& { return parts[r]->ambient(); };
    auto cov = [&](std::size_t r) -> const FreeModule<K>& { return parts[r]->presentation().cover; };
    for (std::size_t q = 0; q < parts.size(); ++q) {
      const auto& pq = parts[q]->presentation();
      for (std::size_t j = 0; j < pq.images.size(); ++j)
        p.images.push_back(place(amb, q, pq.cover.summands()[j].degree, pq.images[j], field));
      for (std::size_t k = 0; k < pq.relations.size(); ++k)
        p.relations.push_back(
            place(cov, q, pq.rel_free.summands()[k].degree, pq.relations[k], field));
    }
    decl = std::move(p);
  }
  auto fn = [parts, F, field](int d) {
    const std::size_t n = F.dim(d);
    Matrix<K> U = Matrix<K>::with_cols(n), Kr = Matrix<K>::with_cols(n);
    std::size_t off = 0;
    for (const auto& q : parts) {
      const Piece<K>& P = q->piece(d);
      const std::size_t w = q->ambient().dim(d);
      auto put = [&](const Matrix<K>& src, Matrix<K>& dst) {
        Vec<K> row(n, field.zero());
        for (std::size_t i = 0; i < src.rows(); ++i) {
          std::fill(row.begin(), row.end(), field.zero());
          std::copy(src.row(i).begin(), src.row(i).end(), row.begin() + off);
          dst.append_row(row);
        }
      };
      put(P.quot.basis(), U);
      put(P.rel.basis(), Kr);
      off += w;
    }
    return Piece<K>::make(field, n, U, Kr);
  };
  return std::make_shared<const GradedModule<K>>(F, valid, fn, std::move(name), cap,
                                                 std::move(decl));
}

template <class K>
ModulePtr<K> dual_module(ModulePtr<K> M, int cap) {
  auto A = std::dynamic_pointer_cast<const PresentedAlgebra<K>>(M->algebra());
  if (!A || !A->is_connected())
    throw Error(ErrorCode::NotConnected, "duals need a connected presented algebra");
  const auto& P = M->presentation();
  auto Aop = A->opposite();
  const K field = A->field();
  std::vector<Summand> sums;
  int gmax = -kNoDegree, tmax = -kNoDegree;
  for (const auto& s : P.cover.summands()) {
    sums.push_back({-s.degree, 0});
    gmax = std::max(gmax, s.degree);
  }
  FreeModule<K> F(Aop, sums);
  // tau(rho_kj) in A^op, per relation k and generator j.
  std::vector<std::vector<Vec<K>>> tau(P.relations.size());
  std::vector<int> tdeg;
  for (std::size_t k = 0; k < P.relations.size(); ++k) {
    const int t = P.rel_free.summands()[k].degree;
    tdeg.push_back(t);
    tmax = std::max(tmax, t);
    for (std::size_t j = 0; j < P.cover.rank(); ++j) {
      const int e = t - P.cover.summands()[j].degree;
      const Vec<K> c = P.cover.component(j, t, P.relations[k]);
      tau[k].push_back(e < 0 ? Vec<K>{}
                             : vec_mul(field, std::span<const typename K::Elem>(c),
                                       A->transport_to_opposite(e)));
    }
  }
  std::vector<int> gdeg;
  for (const auto& s : P.cover.summands()) gdeg.push_back(s.degree);
  auto map = [Aop, F, tau, tdeg, gdeg, field](int s) {
    std::size_t cols = 0;
    std::vector<std::size_t> coff;
    for (int t : tdeg) {
      coff.push_back(cols);
      cols += Aop->dim(t + s);
    }
    Matrix<K> m = Matrix<K>::zeros(field, F.dim(s), cols);
    for (std::size_t j = 0; j < gdeg.size(); ++j) {
      const int n = gdeg[j] + s;
      if (n < 0) continue;
      const std::size_t roff = F.offset(j, s);
      for (std::size_t k = 0; k < tdeg.size(); ++k) {
        const int e = tdeg[k] - gdeg[j];
        if (e < 0 || is_zero_vec(field, std::span<const typename K::Elem>(tau[k][j]))) continue;
        const Matrix<K> L = Aop->left_mult_matrix(tau[k][j], e, n);
        for (std::size_t a = 0; a < L.rows(); ++a)
          std::copy(L.row(a).begin(), L.row(a).end(), m.row(roff + a).begin() + coff[k]);
      }
    }
    return m;
  };
  const int D = A->valid_through();
  int valid = sums.empty() ? kNoDegree : D - gmax;
  if (!tdeg.empty()) valid = std::min(valid, D - tmax);
  return kernel_module<K>(F, map, valid, cap, M->name() + "^+");
}

template <class K>
ModulePtr<K> degree_zero_module(AlgebraPtr<K> alg, int cap) {
  std::vector<Summand> sums;
  for (std::size_t i = 0; i < std::max<std::size_t>(alg->num_idempotents(), 1); ++i)
    sums.push_back({0, i});
  FreeModule<K> F(alg, sums);
  const K field = alg->field();
  auto fn = [F, field](int d) {
    const std::size_t n = F.dim(d);
    const Matrix<K> I = Matrix<K>::identity(field, n);
    return Piece<K>::make(field, n, I, d == 0 ? Matrix<K>::with_cols(n) : I);
  };
  return std::make_shared<const GradedModule<K>>(F, F.valid_through(), fn, alg->name() + "0", cap);
}

#define NCG_INSTANTIATE(K)                                                                       \
  template class FreeModule<K>;                                                                  \
  template struct Piece<K>;                                                                      \
  template class GradedAutomorphism<K>;                                                          \
  template class GradedModule<K>;                                                                \
  template Generators<K> minimal_generators<K>(const GradedModule<K>&);                          \
  template ModulePtr<K> free_graded_module<K>(AlgebraPtr<K>, const std::vector<int>&,            \
                                              std::string);                                      \
  template ModulePtr<K> regular_module<K>(AlgebraPtr<K>, int, std::string);                      \
  template ModulePtr<K> cokernel_module<K>(const FreeModule<K>&, const FreeModule<K>&,           \
                                           std::vector<Vec<K>>, std::string);                    \
  template ModulePtr<K> cyclic_module<K>(PresentedPtr<K>, const std::vector<NcPoly<K>>&,         \
                                         std::string);                                           \
  template ModulePtr<K> kernel_module<K>(const FreeModule<K>&, std::function<Matrix<K>(int)>,    \
                                         int, int, std::string);                                 \
  template ModulePtr<K> shift_module<K>(ModulePtr<K>, int);                                      \
  template ModulePtr<K> truncate_module<K>(ModulePtr<K>, int);                                   \
  template ModulePtr<K> twist_module<K>(ModulePtr<K>, const GradedAutomorphism<K>&);             \
  template ModulePtr<K> direct_sum<K>(const std::vector<ModulePtr<K>>&, std::string);            \
  template ModulePtr<K> dual_module<K>(ModulePtr<K>, int);                                       \
  template ModulePtr<K> degree_zero_module<K>(AlgebraPtr<K>, int);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
