#pragma once

// Quadratic duals, the finite-dimensional algebra C = A![w^-1]_0 of a
// central degree-2 element w, decomposition of commutative semisimple
// algebras, and point enumeration in projective space over GF(p).

#include <memory>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/findim.hpp"

namespace ncg {

/// A quadratic presentation: n degree-1 generators and the relation space
/// R inside the span of the n^2 words ab, coordinate a*n + b.
template <class K>
struct QuadraticData {
  FreeAlgebraPtr<K> free;
  std::size_t n = 0;
  Subspace<K> relations;
};

/// NotQuadratic unless every generator has degree 1 and every relation is
/// homogeneous of degree 2.
template <class K>
QuadraticData<K> quadratic_data(const Presentation<K>& pres);

/// T(V*)/(R^perp) over generators with the same names.  The pairing is
/// <ab, a*b*> = 1; with `signed_pairing` it is -1 for a != b.
template <class K>
Presentation<K> quadratic_dual(const Presentation<K>& pres, bool signed_pairing = false);

/// Equal relation spans inside the degree-2 words.
template <class K>
bool same_relation_span(const Presentation<K>& a, const Presentation<K>& b);

template <class K>
struct CliffordResult {
  std::shared_ptr<const FinDimAlgebra<K>> algebra;
  /// Degree 2L of the stable piece; its elements a stand for a / w^L.
  int stable_degree = 0;
  /// dim A_{2k} for each even degree examined.
  std::vector<std::size_t> chain_dims;
  /// step k: whether .w : A_{2k} -> A_{2k+2} is bijective.
  std::vector<bool> bijective;
};

/// The stable piece A_{2L} with a * b = (ab) / w^L.  Requires .w^L to be
/// bijective A_{2L} -> A_{4L}.
template <class K>
std::shared_ptr<const FinDimAlgebra<K>> clifford_at_level(const PresentedAlgebra<K>& Adual,
                                                          const NcPoly<K>& w, int level);

/// Smallest level L where .w is bijective on two consecutive steps from
/// A_{2L}, with A_{2L} nonzero, searched through `max_degree` (clamped to
/// the truncation).  NotCentral, NotStabilized.
template <class K>
CliffordResult<K> clifford_algebra(const PresentedAlgebra<K>& Adual, const NcPoly<K>& w,
                                   int max_degree);

template <class K>
struct Decomposition {
  std::vector<Vec<K>> idempotents;
  std::vector<std::size_t> block_dims;
  /// All blocks one-dimensional: the algebra is k^n.
  bool split() const {
    for (auto d : block_dims)
      if (d != 1) return false;
    return true;
  }
};

/// NotCommutative, NotSemisimple.
template <class K>
Decomposition<K> commutative_semisimple_decompose(const FinDimAlgebra<K>& F);

/// Common zeros in P^{n-1}(GF(p)) of homogeneous polynomials in the n
/// generators, each with its last nonzero coordinate 1.  Ordered by the
/// position of that coordinate (last first), then lexicographically.
std::vector<Vec<PrimeField>> enumerate_projective_points(
    const std::vector<NcPoly<PrimeField>>& polys);

}  // namespace ncg
