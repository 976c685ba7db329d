#include "ncg/gbasis.hpp"

#include <algorithm>
#include <deque>

namespace ncg {

template <class K>
Presentation<K>::Presentation(FreeAlgebraPtr<K> free, std::vector<NcPoly<K>> relations)
    : free_(std::move(free)) {
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    if (r.context() != free_ && !r.context()->same_as(*free_))
      throw Error(ErrorCode::FieldMismatch, "relation from a different free algebra");
    if (!r.is_homogeneous())
      throw Error(ErrorCode::NonHomogeneous, "relation " + r.to_string() + " is not homogeneous");
    if (r.degree() < 1)
      throw Error(ErrorCode::NonHomogeneous, "relation " + r.to_string() + " has degree 0");
    relations_.push_back(std::move(r));
  }
}

template <class K>
int Presentation<K>::max_relation_degree() const {
  int d = 0;
  for (const auto& r : relations_) d = std::max(d, r.degree());
  return d;
}

template <class K>
void TruncatedGB<K>::trie_insert(const Word& w, int element) {
  int node = 0;
  for (int g : w) {
    auto it = trie_[node].next.find(g);
    if (it == trie_[node].next.end()) {
      trie_.push_back(TrieNode{});
      const int fresh = static_cast<int>(trie_.size()) - 1;
      trie_[node].next.emplace(g, fresh);
      node = fresh;
    } else {
      node = it->second;
    }
  }
  trie_[node].element = element;
}

template <class K>
std::pair<int, int> TruncatedGB<K>::find_occurrence(const Word& w) const {
  for (std::size_t start = 0; start < w.size(); ++start) {
    int node = 0;
    for (std::size_t i = start; i < w.size(); ++i) {
      auto it = trie_[node].next.find(w[i]);
      if (it == trie_[node].next.end()) break;
      node = it->second;
      if (trie_[node].element >= 0) return {static_cast<int>(start), trie_[node].element};
    }
  }
  return {-1, -1};
}

template <class K>
bool TruncatedGB<K>::is_normal(const Word& w) const {
  return find_occurrence(w).first < 0;
}

template <class K>
void TruncatedGB<K>::check_degree(int d) const {
  if (d > D_)
    throw Error(ErrorCode::DegreeBeyondTruncation,
                "degree " + std::to_string(d) + " exceeds Groebner truncation " +
                    std::to_string(D_));
}

template <class K>
std::vector<typename TruncatedGB<K>::Term> TruncatedGB<K>::reduce_terms(
    std::vector<Term> terms) const {
  const auto& ord = free_->order();
  const K& f = free_->field();
  auto desc = [&](const Word& a, const Word& b) { return ord.less(b, a); };
  std::map<Word, Elem, decltype(desc)> pending(desc);
  auto accumulate = [&](Word w, const Elem& c) {
    auto [it, fresh] = pending.try_emplace(std::move(w), c);
    if (!fresh) {
      it->second = f.add(it->second, c);
      if (f.is_zero(it->second)) pending.erase(it);
    }
  };
  for (auto& [w, c] : terms)
    if (!f.is_zero(c)) accumulate(std::move(w), c);

  std::vector<Term> out;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Elem c = node.mapped();
    auto [start, e] = find_occurrence(w);
    if (start < 0) {
      out.emplace_back(w, c);
      continue;
    }
    const auto& g = elements_[e].terms();
    const std::size_t len = g.front().first.size();
    for (std::size_t k = 1; k < g.size(); ++k) {
      Word v(w.begin(), w.begin() + start);
      v.insert(v.end(), g[k].first.begin(), g[k].first.end());
      v.insert(v.end(), w.begin() + start + len, w.end());
      accumulate(std::move(v), f.neg(f.mul(c, g[k].second)));
    }
  }
  return out;
}

template <class K>
TruncatedGB<K> TruncatedGB<K>::compute(const Presentation<K>& pres, int D) {
  if (D < pres.max_relation_degree())
    throw Error(ErrorCode::TruncationTooLow,
                "truncation " + std::to_string(D) + " is below relation degree " +
                    std::to_string(pres.max_relation_degree()));
  TruncatedGB gb(pres.free());
  gb.D_ = D;
  const auto& ord = pres.free()->order();
  const K& f = pres.field();

  std::map<int, std::deque<std::vector<Term>>> queue;
  for (const auto& r : pres.relations()) queue[r.degree()].push_back(r.terms());

  auto schedule_overlaps = [&](int i, int j) {
    const Word& u = gb.elements_[i].leading_word();
    const Word& v = gb.elements_[j].leading_word();
    const std::size_t lim = std::min(u.size(), v.size());
    for (std::size_t k = 1; k < lim; ++k) {
      if (!std::equal(u.end() - k, u.end(), v.begin())) continue;
      const Word vtail(v.begin() + k, v.end());
      const Word uhead(u.begin(), u.end() - k);
      const int deg = ord.degree(u) + ord.degree(vtail);
      if (deg > D) continue;
      std::vector<Term> s;
      for (const auto& [w, c] : gb.elements_[i].terms()) {
        Word x = w;
        x.insert(x.end(), vtail.begin(), vtail.end());
        s.emplace_back(std::move(x), c);
      }
      for (const auto& [w, c] : gb.elements_[j].terms()) {
        Word x = uhead;
        x.insert(x.end(), w.begin(), w.end());
        s.emplace_back(std::move(x), f.neg(c));
      }
      queue[deg].push_back(std::move(s));
    }
  };

  while (!queue.empty()) {
    auto first = queue.begin();
    if (first->first > D) break;
    if (first->second.empty()) {
      queue.erase(first);
      continue;
    }
    std::vector<Term> cand = std::move(first->second.front());
    first->second.pop_front();
    auto reduced = gb.reduce_terms(std::move(cand));
    if (reduced.empty()) continue;
    NcPoly<K> g(gb.free_, std::move(reduced));
    g = g.monic();
    gb.elements_.push_back(std::move(g));
    const int n = static_cast<int>(gb.elements_.size()) - 1;
    gb.trie_insert(gb.elements_[n].leading_word(), n);
    for (int h = 0; h <= n; ++h) {
      schedule_overlaps(n, h);
      if (h != n) schedule_overlaps(h, n);
    }
  }

  // Inter-reduce tails, then sort by leading word.
  for (auto& g : gb.elements_) {
    std::vector<Term> tail(g.terms().begin() + 1, g.terms().end());
    auto red = gb.reduce_terms(std::move(tail));
    red.insert(red.begin(), g.terms().front());
    g = NcPoly<K>(gb.free_, std::move(red));
  }
  std::sort(gb.elements_.begin(), gb.elements_.end(), [&](const auto& a, const auto& b) {
    return ord.less(a.leading_word(), b.leading_word());
  });
  gb.trie_.assign(1, TrieNode{});
  for (std::size_t i = 0; i < gb.elements_.size(); ++i)
    gb.trie_insert(gb.elements_[i].leading_word(), static_cast<int>(i));
  return gb;
}

template <class K>
const std::vector<typename TruncatedGB<K>::Term>& TruncatedGB<K>::nf_word_locked(
    const Word& w) const {
  if (auto it = memo_->table.find(w); it != memo_->table.end()) return it->second;
  auto [start, e] = find_occurrence(w);
  std::vector<Term> result;
  const K& f = free_->field();
  if (start < 0) {
    result.emplace_back(w, f.one());
  } else {
    const auto& g = elements_[e].terms();
    const std::size_t len = g.front().first.size();
    std::vector<Term> acc;
    for (std::size_t k = 1; k < g.size(); ++k) {
      Word v(w.begin(), w.begin() + start);
      v.insert(v.end(), g[k].first.begin(), g[k].first.end());
      v.insert(v.end(), w.begin() + start + len, w.end());
      const Elem c = f.neg(g[k].second);
      for (const auto& [u, a] : nf_word_locked(v)) acc.emplace_back(u, f.mul(c, a));
    }
    result = NcPoly<K>(free_, std::move(acc)).terms();
  }
  return memo_->table.emplace(w, std::move(result)).first->second;
}

template <class K>
const std::vector<typename TruncatedGB<K>::Term>& TruncatedGB<K>::normal_form_word(
    const Word& w) const {
  check_degree(free_->order().degree(w));
  std::lock_guard lock(memo_->mutex);
  return nf_word_locked(w);
}

template <class K>
NcPoly<K> TruncatedGB<K>::normal_form(const NcPoly<K>& p) const {
  if (p.context() != free_ && !p.context()->same_as(*free_))
    throw Error(ErrorCode::FieldMismatch, "polynomial from a different free algebra");
  const K& f = free_->field();
  std::vector<Term> acc;
  for (const auto& [w, c] : p.terms()) {
    for (const auto& [u, a] : normal_form_word(w)) acc.emplace_back(u, f.mul(c, a));
  }
  return NcPoly<K>(free_, std::move(acc));
}

template <class K>
std::vector<Word> TruncatedGB<K>::normal_words(int d) const {
  check_degree(d);
  std::vector<Word> out;
  if (d < 0) return out;
  const auto& ord = free_->order();
  const int n = static_cast<int>(free_->num_generators());
  Word w;
  auto suffix_reducible = [&](const Word& word) {
    for (std::size_t start = 0; start < word.size(); ++start) {
      int node = 0;
      std::size_t i = start;
      for (; i < word.size(); ++i) {
        auto it = trie_[node].next.find(word[i]);
        if (it == trie_[node].next.end()) break;
        node = it->second;
      }
      if (i == word.size() && trie_[node].element >= 0) return true;
    }
    return false;
  };
  auto dfs = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(w);
      return;
    }
    for (int g = 0; g < n; ++g) {
      const int dg = ord.generator_degree(g);
      if (dg > remaining) continue;
      w.push_back(g);
      if (!suffix_reducible(w)) self(self, remaining - dg);
      w.pop_back();
    }
  };
  dfs(dfs, d);
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return ord.less(b, a); });
  return out;
}

template class Presentation<PrimeField>;
template class Presentation<RationalField>;
template class TruncatedGB<PrimeField>;
template class TruncatedGB<RationalField>;

}  // namespace ncg
