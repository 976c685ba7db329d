#pragma once

// Finite-dimensional algebras by structure constants: radical via the trace
// form, primitive orthogonal idempotents by splitting minimal polynomials and
// lifting, and the Gabriel quiver.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/linalg.hpp"

namespace ncg {

struct Quiver {
  struct Arrow {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::size_t mult = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::size_t num_arrows() const;
  std::size_t in_degree(std::size_t v) const;
  std::size_t out_degree(std::size_t v) const;
  bool has_loops() const;
};

template <class K>
class FinDimAlgebra {
 public:
  using Elem = typename K::Elem;

  /// table row a*n + b holds the coordinates of e_a e_b.
  FinDimAlgebra(K field, Matrix<K> table, Vec<K> unit);
  static FinDimAlgebra degree_zero_of(const Algebra<K>& alg);

  const K& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return n_; }
  const Vec<K>& unit() const noexcept { return unit_; }
  const Matrix<K>& table() const noexcept { return table_; }

  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const;
  /// x -> a x.
  Matrix<K> left_mult(const Vec<K>& a) const;
  bool is_commutative() const;
  bool is_associative() const;
  bool is_unital() const;

  /// Basis of the Jacobson radical (rows).  FieldTooSmall if p <= dim.
  const Matrix<K>& radical() const;
  /// Basis of J^k.
  Matrix<K> radical_power(int k) const;
  /// Smallest k with J^k = 0.
  int nilpotency_index() const;
  std::size_t semisimple_dim() const { return n_ - radical().rows(); }

  /// Complete set of primitive orthogonal idempotents, sorted by first
  /// support index.  NonSplit if a simple block is not split.
  const std::vector<Vec<K>>& idempotents(std::uint64_t seed = 0) const;
  /// Span of e a f over all a (rows), optionally intersected with J^k.
  Matrix<K> corner(const Vec<K>& e, const Vec<K>& f, int radical_power = 0) const;
  /// Vertices are primitive idempotents up to isomorphism of projectives;
  /// arrows i -> j with multiplicity dim e_i (J/J^2) e_j.
  Quiver quiver(std::uint64_t seed = 0) const;

 private:
  K field_;
  std::size_t n_;
  Matrix<K> table_;
  Vec<K> unit_;

  mutable std::mutex mutex_;
  mutable std::optional<Matrix<K>> radical_;
  mutable std::optional<std::vector<Vec<K>>> idempotents_;
};

/// Polynomial roots in the field (ascending), with multiplicity ignored.
template <class K>
std::vector<typename K::Elem> field_roots(const K& field, const Vec<K>& poly);

}  // namespace ncg
