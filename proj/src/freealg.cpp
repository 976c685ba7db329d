#include "ncg/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <type_traits>

namespace ncg {

MonomialOrder::MonomialOrder(std::vector<int> degrees, std::vector<int> precedence)
    : degrees_(std::move(degrees)), precedence_(std::move(precedence)) {
  const int n = static_cast<int>(degrees_.size());
  if (static_cast<int>(precedence_.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "precedence must list every generator once");
  for (int d : degrees_)
    if (d <= 0) throw Error(ErrorCode::InvalidArgument, "generator degrees must be positive");
  rank_.assign(n, -1);
  for (int pos = 0; pos < n; ++pos) {
    const int g = precedence_[pos];
    if (g < 0 || g >= n || rank_[g] != -1)
      throw Error(ErrorCode::InvalidArgument, "precedence is not a permutation");
    rank_[g] = pos;
  }
}

MonomialOrder::MonomialOrder(std::vector<int> degrees)
    : MonomialOrder(degrees, [&] {
        std::vector<int> p(degrees.size());
        std::iota(p.begin(), p.end(), 0);
        return p;
      }()) {}

int MonomialOrder::degree(const Word& w) const {
  int d = 0;
  for (int g : w) d += degrees_[g];
  return d;
}

std::strong_ordering MonomialOrder::compare(const Word& u, const Word& v) const {
  if (auto c = degree(u) <=> degree(v); c != 0) return c;
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i)
    if (u[i] != v[i]) return rank_[u[i]] <=> rank_[v[i]];
  return u.size() <=> v.size();
}

template <class K>
std::string FreeAlgebra<K>::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += names_[w[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

template <class K>
NcPoly<K>::NcPoly(FreeAlgebraPtr<K> ctx, std::vector<Term> terms)
    : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  const auto& ord = ctx_->order();
  const K& f = ctx_->field();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return ord.less(b.first, a.first); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second = f.add(merged.back().second, t.second);
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [&](const Term& t) { return f.is_zero(t.second); });
  terms_ = std::move(merged);
}

template <class K>
void NcPoly<K>::check_same(const NcPoly& o) const {
  if (ctx_ != o.ctx_ && !ctx_->same_as(*o.ctx_))
    throw Error(ErrorCode::FieldMismatch, "polynomials live in different free algebras");
}

template <class K>
bool NcPoly<K>::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return ctx_->order().degree(t.first) == d; });
}

template <class K>
typename NcPoly<K>::Elem NcPoly<K>::coeff(const Word& w) const {
  for (const auto& t : terms_)
    if (t.first == w) return t.second;
  return field().zero();
}

template <class K>
NcPoly<K> NcPoly<K>::operator+(const NcPoly& o) const {
  check_same(o);
  std::vector<Term> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return NcPoly(ctx_, std::move(t));
}

template <class K>
NcPoly<K> NcPoly<K>::operator-() const {
  return scaled(field().neg(field().one()));
}

template <class K>
NcPoly<K> NcPoly<K>::operator-(const NcPoly& o) const {
  return *this + (-o);
}

template <class K>
NcPoly<K> NcPoly<K>::operator*(const NcPoly& o) const {
  check_same(o);
  const K& f = field();
  std::vector<Term> t;
  t.reserve(terms_.size() * o.terms_.size());
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : o.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      t.emplace_back(std::move(w), f.mul(a, b));
    }
  return NcPoly(ctx_, std::move(t));
}

template <class K>
NcPoly<K> NcPoly<K>::scaled(const Elem& c) const {
  std::vector<Term> t = terms_;
  for (auto& term : t) term.second = field().mul(term.second, c);
  return NcPoly(ctx_, std::move(t));
}

template <class K>
NcPoly<K> NcPoly<K>::monic() const {
  if (is_zero()) return *this;
  return scaled(field().inv(leading_coeff()));
}

template <class K>
NcPoly<K> NcPoly<K>::reversed() const {
  std::vector<Term> t = terms_;
  for (auto& term : t) std::reverse(term.first.begin(), term.first.end());
  return NcPoly(ctx_, std::move(t));
}

template <class K>
NcPoly<K> NcPoly<K>::pow(unsigned e) const {
  NcPoly result = constant(ctx_, field().one());
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

template <class K>
std::string NcPoly<K>::to_string() const {
  if (terms_.empty()) return "0";
  const K& f = field();
  std::string out;
  for (const auto& [w, c] : terms_) {
    bool negative = false;
    std::string mag;
    if constexpr (std::is_same_v<K, PrimeField>) {
      const std::int64_t b = f.balanced(c);
      negative = b < 0;
      mag = std::to_string(negative ? -b : b);
    } else {
      negative = sgn(c) < 0;
      mag = (negative ? mpq_class(-c) : c).get_str();
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (w.empty()) {
      out += mag;
    } else {
      if (mag != "1") out += (mag.find('/') != std::string::npos ? "(" + mag + ")" : mag) + "*";
      out += ctx_->word_to_string(w);
    }
  }
  return out;
}

namespace {

template <class K>
class Parser {
 public:
  using Elem = typename K::Elem;
  using Poly = NcPoly<K>;

  Parser(const FreeAlgebraPtr<K>& ctx, std::string_view text,
         const std::map<std::string, Elem>& constants)
      : ctx_(ctx), text_(text), constants_(constants) {}

  Poly run() {
    Poly p = expr();
    skip_space();
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_')
        fail("juxtaposition is not allowed, write products with '*'");
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "at column " + std::to_string(pos_ + 1) + " of \"" +
                                           std::string(text_) + "\": " + msg);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Poly d = unary();
        const bool scalar = d.size() == 1 && d.terms().front().first.empty();
        if (!scalar) fail("can only divide by a nonzero scalar");
        acc = acc.scaled(ctx_->field().inv(d.terms().front().second));
      } else {
        return acc;
      }
    }
  }
  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }
  Poly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a number, a name or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const K& f = ctx_->field();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(start, pos_ - start));
      Elem value = f.zero();
      const Elem ten = f.from_int(10);
      for (char d : digits) value = f.add(f.mul(value, ten), f.from_int(d - '0'));
      return Poly::constant(ctx_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (int g = ctx_->generator_index(name); g >= 0) return Poly::generator(ctx_, g);
      if (auto it = constants_.find(name); it != constants_.end())
        return Poly::constant(ctx_, it->second);
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("expected a number, a name or '('");
  }

  const FreeAlgebraPtr<K>& ctx_;
  std::string_view text_;
  const std::map<std::string, Elem>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class K>
NcPoly<K> parse_poly(const FreeAlgebraPtr<K>& ctx, std::string_view text,
                     const std::map<std::string, typename K::Elem>& constants) {
  return Parser<K>(ctx, text, constants).run();
}

template <class K>
typename K::Elem evaluate_commutative(const NcPoly<K>& f, const std::vector<typename K::Elem>& pt) {
  const K& k = f.field();
  auto sum = k.zero();
  for (const auto& [w, c] : f.terms()) {
    auto prod = c;
    for (int g : w) prod = k.mul(prod, pt.at(g));
    sum = k.add(sum, prod);
  }
  return sum;
}

#define NCG_INSTANTIATE(K)                                                                  \
  template class FreeAlgebra<K>;                                                            \
  template class NcPoly<K>;                                                                 \
  template NcPoly<K> parse_poly<K>(const FreeAlgebraPtr<K>&, std::string_view,              \
                                   const std::map<std::string, typename K::Elem>&);         \
  template typename K::Elem evaluate_commutative<K>(const NcPoly<K>&,                       \
                                                    const std::vector<typename K::Elem>&);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
