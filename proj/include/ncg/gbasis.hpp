#pragma once

// Degree-truncated two-sided Groebner bases of homogeneous ideals in a free
// algebra, normal forms and normal-word enumeration.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ncg/freealg.hpp"

namespace ncg {

/// Homogeneous presentation k<gens>/(relations).  Zero relations are dropped.
template <class K>
class Presentation {
 public:
  Presentation(FreeAlgebraPtr<K> free, std::vector<NcPoly<K>> relations);

  const FreeAlgebraPtr<K>& free() const noexcept { return free_; }
  const K& field() const { return free_->field(); }
  const std::vector<NcPoly<K>>& relations() const noexcept { return relations_; }
  int max_relation_degree() const;

 private:
  FreeAlgebraPtr<K> free_;
  std::vector<NcPoly<K>> relations_;
};

template <class K>
class TruncatedGB {
 public:
  using Elem = typename K::Elem;
  using Term = typename NcPoly<K>::Term;

  /// Buchberger completion through degree D: pending S-polynomials are taken
  /// degree by degree, first-discovered first.
  static TruncatedGB compute(const Presentation<K>& pres, int D);

  const FreeAlgebraPtr<K>& free() const noexcept { return free_; }
  int complete_through() const noexcept { return D_; }
  /// Monic, inter-reduced, sorted by leading word (ascending).
  const std::vector<NcPoly<K>>& elements() const noexcept { return elements_; }

  bool is_normal(const Word& w) const;
  NcPoly<K> normal_form(const NcPoly<K>& f) const;
  /// Normal form of a single word as terms in descending order (memoized).
  const std::vector<Term>& normal_form_word(const Word& w) const;
  /// Normal words of degree d, descending in the monomial order.
  std::vector<Word> normal_words(int d) const;

 private:
  explicit TruncatedGB(FreeAlgebraPtr<K> free) : free_(std::move(free)) {}

  struct TrieNode {
    std::map<int, int> next;
    int element = -1;
  };
  void trie_insert(const Word& w, int element);
  /// Leftmost occurrence of a leading word inside w: (start, element) or (-1,-1).
  std::pair<int, int> find_occurrence(const Word& w) const;
  void check_degree(int d) const;

  FreeAlgebraPtr<K> free_;
  int D_ = 0;
  std::vector<NcPoly<K>> elements_;
  std::vector<TrieNode> trie_{TrieNode{}};

  struct Memo {
    std::mutex mutex;
    std::map<Word, std::vector<Term>> table;
  };
  const std::vector<Term>& nf_word_locked(const Word& w) const;
  std::vector<Term> reduce_terms(std::vector<Term> terms) const;

  std::unique_ptr<Memo> memo_ = std::make_unique<Memo>();
};

}  // namespace ncg
