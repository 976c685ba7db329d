#pragma once

// The free algebra k<x_1..x_n> with positive generator degrees: words,
// the degree-lexicographic monomial order, and exact polynomials.

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncg/error.hpp"
#include "ncg/scalars.hpp"

namespace ncg {

/// Sequence of generator indices; the empty word is the identity.
using Word = std::vector<int>;

/// Degree-lexicographic order: total degree first, then lexicographic with
/// the leftmost letter most significant.  `precedence` lists generator indices
/// from smallest to largest.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::vector<int> degrees, std::vector<int> precedence);
  /// Precedence = declaration order.
  explicit MonomialOrder(std::vector<int> degrees);

  std::size_t num_generators() const noexcept { return degrees_.size(); }
  int generator_degree(int g) const { return degrees_.at(g); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::vector<int>& precedence() const noexcept { return precedence_; }

  int degree(const Word& w) const;
  std::strong_ordering compare(const Word& u, const Word& v) const;
  bool less(const Word& u, const Word& v) const { return compare(u, v) < 0; }
  bool operator==(const MonomialOrder& o) const {
    return degrees_ == o.degrees_ && precedence_ == o.precedence_;
  }

 private:
  std::vector<int> degrees_;
  std::vector<int> precedence_;
  std::vector<int> rank_;
};

template <class K>
class FreeAlgebra {
 public:
  FreeAlgebra(K field, std::vector<std::string> names, MonomialOrder order)
      : field_(std::move(field)), names_(std::move(names)), order_(std::move(order)) {
    if (names_.size() != order_.num_generators())
      throw Error(ErrorCode::InvalidArgument, "generator names and degrees differ in length");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j])
          throw Error(ErrorCode::InvalidArgument, "duplicate generator name " + names_[i]);
  }
  FreeAlgebra(K field, std::vector<std::string> names, std::vector<int> degrees)
      : FreeAlgebra(std::move(field), std::move(names), MonomialOrder(std::move(degrees))) {}

  const K& field() const noexcept { return field_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const MonomialOrder& order() const noexcept { return order_; }
  std::size_t num_generators() const noexcept { return names_.size(); }
  int generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }
  std::string word_to_string(const Word& w) const;

  bool same_as(const FreeAlgebra& o) const {
    return field_ == o.field_ && names_ == o.names_ && order_ == o.order_;
  }

 private:
  K field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

template <class K>
using FreeAlgebraPtr = std::shared_ptr<const FreeAlgebra<K>>;

template <class K>
FreeAlgebraPtr<K> make_free_algebra(K field, std::vector<std::string> names,
                                    std::vector<int> degrees) {
  return std::make_shared<const FreeAlgebra<K>>(std::move(field), std::move(names),
                                                std::move(degrees));
}

/// Finite linear combination of words with nonzero coefficients, stored in
/// descending monomial order (so the leading term is first).
template <class K>
class NcPoly {
 public:
  using Elem = typename K::Elem;
  using Term = std::pair<Word, Elem>;

  explicit NcPoly(FreeAlgebraPtr<K> ctx) : ctx_(std::move(ctx)) {}
  NcPoly(FreeAlgebraPtr<K> ctx, std::vector<Term> terms);

  static NcPoly constant(FreeAlgebraPtr<K> ctx, const Elem& c) {
    return NcPoly(std::move(ctx), {{Word{}, c}});
  }
  static NcPoly word(FreeAlgebraPtr<K> ctx, Word w) {
    const Elem one = ctx->field().one();
    return NcPoly(std::move(ctx), {{std::move(w), one}});
  }
  static NcPoly generator(FreeAlgebraPtr<K> ctx, int g) { return word(std::move(ctx), Word{g}); }

  const FreeAlgebraPtr<K>& context() const noexcept { return ctx_; }
  const K& field() const { return ctx_->field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Word& leading_word() const { return terms_.front().first; }
  const Elem& leading_coeff() const { return terms_.front().second; }

  /// Degree of the leading word (-1 for zero).
  int degree() const { return is_zero() ? -1 : ctx_->order().degree(terms_.front().first); }
  bool is_homogeneous() const;
  Elem coeff(const Word& w) const;

  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator-() const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly scaled(const Elem& c) const;
  NcPoly monic() const;
  /// Word order reversed in every term (anti-automorphism of the free algebra).
  NcPoly reversed() const;
  NcPoly pow(unsigned e) const;

  bool operator==(const NcPoly& o) const { return terms_ == o.terms_; }
  std::string to_string() const;

 private:
  void check_same(const NcPoly& o) const;
  FreeAlgebraPtr<K> ctx_;
  std::vector<Term> terms_;
};

/// Parses `+ - * ^`, parentheses, integers, generator names and named scalar
/// constants.  Products must be written with `*`; `/` divides by a scalar.
template <class K>
NcPoly<K> parse_poly(const FreeAlgebraPtr<K>& ctx, std::string_view text,
                     const std::map<std::string, typename K::Elem>& constants = {});

/// Evaluates a polynomial with commuting variables at a point.
template <class K>
typename K::Elem evaluate_commutative(const NcPoly<K>& f, const std::vector<typename K::Elem>& pt);

}  // namespace ncg
