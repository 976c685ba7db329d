#include "ncg/algebra.hpp"

#include <cctype>

namespace ncg {

// ---------------------------------------------------------------- Algebra

template <class K>
void Algebra<K>::check_degree(int d) const {
  if (d > valid_)
    throw Error(ErrorCode::DegreeBeyondTruncation,
                "degree " + std::to_string(d) + " of " + (name_.empty() ? "algebra" : name_) +
                    " exceeds its validity bound " + std::to_string(valid_));
}

template <class K>
std::size_t Algebra<K>::dim(int d) const {
  if (d < 0) return 0;
  check_degree(d);
  std::lock_guard lock(mutex_);
  auto it = dims_.find(d);
  if (it == dims_.end()) it = dims_.emplace(d, compute_dim(d)).first;
  return it->second;
}

template <class K>
std::string Algebra<K>::basis_label(int d, std::size_t i) const {
  return "b" + std::to_string(d) + "_" + std::to_string(i);
}

template <class K>
const Matrix<K>& Algebra<K>::block(int d1, int d2) const {
  if (d1 < 0 || d2 < 0) throw Error(ErrorCode::InvalidArgument, "negative degree in block");
  check_degree(d1 + d2);
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(d1, d2);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return *it->second;
  auto m = std::make_unique<Matrix<K>>(compute_block(d1, d2));
  if (m->rows() != dim(d1) * dim(d2) || m->cols() != dim(d1 + d2))
    throw Error(ErrorCode::ShapeMismatch, "multiplication block has the wrong shape");
  return *blocks_.emplace(key, std::move(m)).first->second;
}

template <class K>
Vec<K> Algebra<K>::product(const Vec<K>& a, int d1, const Vec<K>& b, int d2) const {
  const Matrix<K>& blk = block(d1, d2);
  const std::size_t n2 = dim(d2);
  Vec<K> out(dim(d1 + d2), field_.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field_.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n2; ++j) {
      if (field_.is_zero(b[j])) continue;
      field_.axpy(std::span(out), field_.mul(a[i], b[j]), blk.row(i * n2 + j));
    }
  }
  return out;
}

template <class K>
Matrix<K> Algebra<K>::left_mult_matrix(const Vec<K>& a, int d1, int n) const {
  const std::size_t dn = dim(n);
  Matrix<K> out = Matrix<K>::zeros(field_, dn, dim(d1 + n));
  if (dn == 0 || out.cols() == 0) return out;
  const Matrix<K>& blk = block(d1, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field_.is_zero(a[i])) continue;
    for (std::size_t x = 0; x < dn; ++x) field_.axpy(out.row(x), a[i], blk.row(i * dn + x));
  }
  return out;
}

template <class K>
Matrix<K> Algebra<K>::right_mult_matrix(const Vec<K>& a, int d1, int n) const {
  const std::size_t dn = dim(n), da = dim(d1);
  Matrix<K> out = Matrix<K>::zeros(field_, dn, dim(n + d1));
  if (dn == 0 || out.cols() == 0) return out;
  const Matrix<K>& blk = block(n, d1);
  for (std::size_t x = 0; x < dn; ++x)
    for (std::size_t i = 0; i < da; ++i) {
      if (field_.is_zero(a[i])) continue;
      field_.axpy(out.row(x), a[i], blk.row(x * da + i));
    }
  return out;
}

template <class K>
void Algebra<K>::init_connected_default() {
  if (dim(0) == 1) {
    idempotents_ = {unit_};
    radical_ = Matrix<K>::with_cols(1);
  }
}

template <class K>
void Algebra<K>::set_degree_zero(std::vector<Vec<K>> idempotents, Matrix<K> radical) {
  std::lock_guard lock(mutex_);
  if (!corners_.empty())
    throw Error(ErrorCode::InvalidArgument, "degree-zero structure changed after use");
  idempotents_ = std::move(idempotents);
  radical_ = std::move(radical);
  if (radical_.rows() == 0) radical_ = Matrix<K>::with_cols(dim(0));
}

template <class K>
const Subspace<K>& Algebra<K>::corner(std::size_t i, int n) const {
  if (idempotents_.empty())
    throw Error(ErrorCode::InvalidArgument,
                "degree-zero idempotents of " + name_ + " are not registered");
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(i, n);
  auto it = corners_.find(key);
  if (it != corners_.end()) return *it->second;
  const std::size_t dn = dim(n);
  std::unique_ptr<Subspace<K>> s;
  if (idempotents_.size() == 1) {
    s = std::make_unique<Subspace<K>>(
        Subspace<K>::span_of(field_, dn, Matrix<K>::identity(field_, dn)));
  } else {
    s = std::make_unique<Subspace<K>>(
        Subspace<K>::span_of(field_, dn, left_mult_matrix(idempotent(i), 0, n)));
  }
  return *corners_.emplace(key, std::move(s)).first->second;
}

// ------------------------------------------------------- PresentedAlgebra

template <class K>
PresentedAlgebra<K>::PresentedAlgebra(Presentation<K> pres, TruncatedGB<K> gb, std::string name)
    : Algebra<K>(pres.field(), gb.complete_through(), std::move(name)),
      pres_(std::move(pres)),
      gb_(std::move(gb)) {
  for (int d = 0; d <= this->valid_; ++d) {
    words_.push_back(gb_.normal_words(d));
    std::map<Word, std::size_t> idx;
    for (std::size_t i = 0; i < words_[d].size(); ++i) idx.emplace(words_[d][i], i);
    index_.push_back(std::move(idx));
  }
  this->unit_ = Vec<K>(words_[0].size(), this->field_.zero());
  if (!this->unit_.empty()) this->unit_[0] = this->field_.one();
  this->init_connected_default();
}

template <class K>
PresentedPtr<K> PresentedAlgebra<K>::build(const Presentation<K>& pres, int D, std::string name) {
  auto gb = TruncatedGB<K>::compute(pres, D);
  return PresentedPtr<K>(new PresentedAlgebra(pres, std::move(gb), std::move(name)));
}

template <class K>
std::size_t PresentedAlgebra<K>::compute_dim(int d) const {
  return words_.at(d).size();
}

template <class K>
const std::vector<Word>& PresentedAlgebra<K>::basis_words(int d) const {
  this->check_degree(d);
  static const std::vector<Word> none;
  if (d < 0) return none;
  return words_[d];
}

template <class K>
std::string PresentedAlgebra<K>::basis_label(int d, std::size_t i) const {
  return free()->word_to_string(basis_words(d).at(i));
}

template <class K>
Vec<K> PresentedAlgebra<K>::to_coords(const NcPoly<K>& f, int d) const {
  this->check_degree(d);
  Vec<K> v(d < 0 ? 0 : words_[d].size(), this->field_.zero());
  const NcPoly<K> nf = gb_.normal_form(f);
  for (const auto& [w, c] : nf.terms()) {
    if (free()->order().degree(w) != d)
      throw Error(ErrorCode::NonHomogeneous,
                  f.to_string() + " is not homogeneous of degree " + std::to_string(d));
    v[index_[d].at(w)] = c;
  }
  return v;
}

template <class K>
NcPoly<K> PresentedAlgebra<K>::from_coords(const Vec<K>& v, int d) const {
  std::vector<typename NcPoly<K>::Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!this->field_.is_zero(v[i])) terms.emplace_back(words_.at(d)[i], v[i]);
  return NcPoly<K>(free(), std::move(terms));
}

template <class K>
NcPoly<K> PresentedAlgebra<K>::parse(std::string_view text,
                                     const std::map<std::string, Elem>& constants) const {
  return parse_poly(free(), text, constants);
}

template <class K>
const Matrix<K>& PresentedAlgebra<K>::generator_right_matrix(int g, int n) const {
  const int dg = free()->order().generator_degree(g);
  this->check_degree(n + dg);
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(g, n);
  auto it = gen_right_.find(key);
  if (it != gen_right_.end()) return *it->second;
  const K& f = this->field_;
  const auto& src = basis_words(n);
  const auto& idx = index_[n + dg];
  Matrix<K> m = Matrix<K>::zeros(f, src.size(), words_[n + dg].size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    Word w = src[i];
    w.push_back(g);
    for (const auto& [u, c] : gb_.normal_form_word(w)) m.at(i, idx.at(u)) = c;
  }
  return *gen_right_.emplace(key, std::make_unique<Matrix<K>>(std::move(m))).first->second;
}

template <class K>
Matrix<K> PresentedAlgebra<K>::compute_block(int d1, int d2) const {
  const K& f = this->field_;
  const std::size_t n1 = words_[d1].size(), n2 = words_[d2].size();
  Matrix<K> out = Matrix<K>::zeros(f, n1 * n2, words_[d1 + d2].size());
  // prefix word -> (all u of degree d1) * prefix, as a n1 x dim(d1+|p|) matrix
  std::map<Word, Matrix<K>> memo;
  memo.emplace(Word{}, Matrix<K>::identity(f, n1));
  auto get = [&](auto&& self, const Word& p) -> const Matrix<K>& {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    Word head(p.begin(), p.end() - 1);
    const Matrix<K>& prev = self(self, head);
    const int deg = d1 + free()->order().degree(head);
    Matrix<K> next = mul(f, prev, generator_right_matrix(p.back(), deg));
    return memo.emplace(p, std::move(next)).first->second;
  };
  for (std::size_t b = 0; b < n2; ++b) {
    const Matrix<K>& m = get(get, words_[d2][b]);
    for (std::size_t a = 0; a < n1; ++a) {
      auto src = m.row(a);
      std::copy(src.begin(), src.end(), out.row(a * n2 + b).begin());
    }
  }
  return out;
}

template <class K>
PresentedPtr<K> PresentedAlgebra<K>::opposite() const {
  std::lock_guard lock(mutex_);
  if (auto p = opposite_weak_.lock()) return p;
  if (opposite_) return opposite_;
  const std::string nm = this->name_.empty() ? "" : this->name_ + "^op";
  auto opp = PresentedPtr<K>(new PresentedAlgebra(
      opposite_presentation(pres_),
      TruncatedGB<K>::compute(opposite_presentation(pres_), this->valid_), nm));
  opp->opposite_weak_ = this->shared_from_this();
  opposite_ = opp;
  return opp;
}

template <class K>
const Matrix<K>& PresentedAlgebra<K>::transport_to_opposite(int n) const {
  auto opp = opposite();
  std::lock_guard lock(mutex_);
  auto it = transport_.find(n);
  if (it != transport_.end()) return *it->second;
  const auto& src = basis_words(n);
  Matrix<K> m = Matrix<K>::with_cols(opp->dim(n));
  for (const auto& w : src) {
    Word r(w.rbegin(), w.rend());
    m.append_row(opp->to_coords(NcPoly<K>::word(opp->free(), r), n));
  }
  return *transport_.emplace(n, std::make_unique<Matrix<K>>(std::move(m))).first->second;
}

// ------------------------------------------------------- TabulatedAlgebra

template <class K>
TabulatedAlgebra<K>::TabulatedAlgebra(K field, std::vector<std::size_t> dims, Vec<K> unit,
                                      Provider provider, std::string name, Labeler labeler)
    : Algebra<K>(std::move(field), static_cast<int>(dims.size()) - 1, std::move(name)),
      dims_(std::move(dims)),
      provider_(std::move(provider)),
      labeler_(std::move(labeler)) {
  if (dims_.empty() || dims_[0] == 0)
    throw Error(ErrorCode::InvalidArgument, "tabulated algebra needs a nonzero degree-0 piece");
  if (unit.size() != dims_[0]) throw Error(ErrorCode::ShapeMismatch, "unit has the wrong length");
  this->unit_ = std::move(unit);
  this->init_connected_default();
}

template <class K>
std::shared_ptr<TabulatedAlgebra<K>> TabulatedAlgebra<K>::from_oracle(const Algebra<K>& src,
                                                                       int V) {
  std::vector<std::size_t> dims;
  for (int d = 0; d <= V; ++d) dims.push_back(src.dim(d));
  std::map<std::pair<int, int>, Matrix<K>> table;
  for (int d1 = 0; d1 <= V; ++d1)
    for (int d2 = 0; d1 + d2 <= V; ++d2) table.emplace(std::make_pair(d1, d2), src.block(d1, d2));
  auto provider = [table = std::move(table)](int d1, int d2) {
    return table.at(std::make_pair(d1, d2));
  };
  auto alg = std::make_shared<TabulatedAlgebra>(src.field(), std::move(dims), src.unit(),
                                                std::move(provider), src.name());
  if (src.num_idempotents() > 1) {
    std::vector<Vec<K>> ids;
    for (std::size_t i = 0; i < src.num_idempotents(); ++i) ids.push_back(src.idempotent(i));
    alg->register_degree_zero(std::move(ids), src.radical_zero());
  }
  return alg;
}

template <class K>
void TabulatedAlgebra<K>::register_degree_zero(std::vector<Vec<K>> idempotents,
                                               Matrix<K> radical) {
  this->set_degree_zero(std::move(idempotents), std::move(radical));
}

template <class K>
std::string TabulatedAlgebra<K>::basis_label(int d, std::size_t i) const {
  if (labeler_) return labeler_(d, i);
  return Algebra<K>::basis_label(d, i);
}

// ------------------------------------------------------------ free functions

template <class K>
Presentation<K> opposite_presentation(const Presentation<K>& pres) {
  std::vector<NcPoly<K>> rels;
  for (const auto& r : pres.relations()) rels.push_back(r.reversed());
  return Presentation<K>(pres.free(), std::move(rels));
}

template <class K>
PresentedPtr<K> quotient_algebra(const PresentedAlgebra<K>& alg,
                                 const std::vector<NcPoly<K>>& extra, int D, std::string name) {
  std::vector<NcPoly<K>> rels = alg.presentation().relations();
  rels.insert(rels.end(), extra.begin(), extra.end());
  return PresentedAlgebra<K>::build(Presentation<K>(alg.free(), std::move(rels)), D,
                                    std::move(name));
}

template <class K>
bool is_central(const PresentedAlgebra<K>& alg, const NcPoly<K>& f) {
  if (!f.is_homogeneous()) throw Error(ErrorCode::NonHomogeneous, f.to_string());
  const auto& free = alg.free();
  for (std::size_t g = 0; g < free->num_generators(); ++g) {
    auto x = NcPoly<K>::generator(free, static_cast<int>(g));
    alg.check_degree(f.degree() + free->order().generator_degree(static_cast<int>(g)));
    if (!alg.gb().normal_form(f * x - x * f).is_zero()) return false;
  }
  return true;
}

template <class K>
bool is_regular_element(const PresentedAlgebra<K>& alg, const NcPoly<K>& f, int window) {
  if (!f.is_homogeneous()) throw Error(ErrorCode::NonHomogeneous, f.to_string());
  const int e = std::max(f.degree(), 0);
  alg.check_degree(e + window);
  const Vec<K> c = alg.to_coords(f, e);
  const K& k = alg.field();
  for (int d = 0; d <= window; ++d) {
    const std::size_t n = alg.dim(d);
    if (rank(k, alg.left_mult_matrix(c, e, d)) != n) return false;
    if (rank(k, alg.right_mult_matrix(c, e, d)) != n) return false;
  }
  return true;
}

template <class K>
HilbertSeries hilbert_series(const Algebra<K>& alg, int D) {
  alg.check_degree(D);
  HilbertSeries h;
  for (int d = 0; d <= D; ++d) h.coeffs.push_back(static_cast<std::int64_t>(alg.dim(d)));
  return h;
}

// ------------------------------------------------------ rational functions

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow");
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow");
  return r;
}

IntPoly poly_trim(IntPoly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (p.empty()) p.push_back(0);
  return p;
}
IntPoly poly_add(const IntPoly& a, const IntPoly& b, std::int64_t sign = 1) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = checked_add(r[i], checked_mul(sign, b[i]));
  return poly_trim(r);
}
IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return poly_trim(r);
}

class RationalParser {
 public:
  explicit RationalParser(const std::string& s) : s_(s) {}
  RationalFunction run() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                "at column " + std::to_string(pos_ + 1) + " of \"" + s_ + "\": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  static RationalFunction times(const RationalFunction& a, const RationalFunction& b) {
    return {poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
  }
  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      std::int64_t sign;
      if (accept('+'))
        sign = 1;
      else if (accept('-'))
        sign = -1;
      else
        return acc;
      RationalFunction t = term();
      acc = {poly_add(poly_mul(acc.num, t.den), poly_mul(t.num, acc.den), sign),
             poly_mul(acc.den, t.den)};
    }
  }
  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = times(acc, unary());
      } else if (accept('/')) {
        RationalFunction d = unary();
        acc = times(acc, RationalFunction{d.den, d.num});
      } else if (peek('(') || peek('t')) {
        acc = times(acc, unary());
      } else {
        return acc;
      }
    }
  }
  RationalFunction unary() {
    if (accept('-')) {
      RationalFunction r = unary();
      return {poly_mul(r.num, IntPoly{-1}), r.den};
    }
    if (accept('+')) return unary();
    RationalFunction base = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_ || pos_ - start > 3) fail("expected a small nonnegative exponent");
      const int e = std::stoi(s_.substr(start, pos_ - start));
      RationalFunction r;
      for (int i = 0; i < e; ++i) r = times(r, base);
      return r;
    }
    return base;
  }
  RationalFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      RationalFunction r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (s_[pos_] == 't') {
      ++pos_;
      return {IntPoly{0, 1}, IntPoly{1}};
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::int64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = checked_add(checked_mul(v, 10), s_[pos_++] - '0');
      return {IntPoly{v}, IntPoly{1}};
    }
    fail("expected a number, t or '('");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(const std::string& text) {
  return RationalParser(text).run();
}

IntPoly expand_series(const RationalFunction& r, int D) {
  if (r.den.empty() || r.den[0] == 0)
    throw Error(ErrorCode::InvalidArgument, "denominator must have a nonzero constant term");
  IntPoly out(D + 1, 0);
  for (int n = 0; n <= D; ++n) {
    std::int64_t acc = n < static_cast<int>(r.num.size()) ? r.num[n] : 0;
    for (int k = 1; k <= n && k < static_cast<int>(r.den.size()); ++k)
      acc = checked_add(acc, checked_mul(-r.den[k], out[n - k]));
    if (acc % r.den[0] != 0)
      throw Error(ErrorCode::InvalidArgument, "series does not have integer coefficients");
    out[n] = acc / r.den[0];
  }
  return out;
}

IntPoly pair_with_negated(const IntPoly& p, const IntPoly& q, int D) {
  IntPoly out(D + 1, 0);
  for (int i = 0; i <= D && i < static_cast<int>(p.size()); ++i)
    for (int j = 0; i + j <= D && j < static_cast<int>(q.size()); ++j)
      out[i + j] = checked_add(out[i + j], checked_mul(p[i], (j % 2 ? -q[j] : q[j])));
  return out;
}

#define NCG_INSTANTIATE(K)                                                                \
  template class Algebra<K>;                                                              \
  template class PresentedAlgebra<K>;                                                     \
  template class TabulatedAlgebra<K>;                                                     \
  template Presentation<K> opposite_presentation<K>(const Presentation<K>&);              \
  template PresentedPtr<K> quotient_algebra<K>(const PresentedAlgebra<K>&,                \
                                               const std::vector<NcPoly<K>>&, int,        \
                                               std::string);                              \
  template bool is_central<K>(const PresentedAlgebra<K>&, const NcPoly<K>&);              \
  template bool is_regular_element<K>(const PresentedAlgebra<K>&, const NcPoly<K>&, int); \
  template HilbertSeries hilbert_series<K>(const Algebra<K>&, int);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
