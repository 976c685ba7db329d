#pragma once

// Graded endomorphism algebras B = End(X) = (+)_i Hom(X, X(i)) as tabulated
// algebras, their degree-zero parts, and the AS-regularity / AS-Gorenstein
// tests phrased through Ext.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ncg/findim.hpp"
#include "ncg/homology.hpp"

namespace ncg {

template <class K>
struct EndoAlgebra {
  ModulePtr<K> module;
  /// B_{>=0}, valid through min(cap, what X supports).  The product is
  /// b * b' = b o b'.
  std::shared_ptr<TabulatedAlgebra<K>> algebra;
  /// B_n as Hom spaces, n = 0..algebra->valid_through().
  std::vector<HomSpace<K>> pieces;
  /// dim B_i for window.lo <= i < 0.
  std::map<int, std::size_t> negative_dims;
  Window window;
  /// Set when B_0 could not be split; modules over B are then unavailable
  /// unless B_0 is local.
  std::string degree_zero_error;
};

/// Builds B with B_0 analysed (idempotents, radical) and registered.
template <class K>
EndoAlgebra<K> endomorphism_algebra(ModulePtr<K> X, const Window& w);

template <class K>
bool check_nonnegative(const EndoAlgebra<K>& B);

template <class K>
FinDimAlgebra<K> degree_zero_algebra(const Algebra<K>& B) {
  return FinDimAlgebra<K>::degree_zero_of(B);
}

/// Sorted (in-degree, out-degree, loops) per vertex; equal signatures are the
/// test used for matching a quiver against a target shape.
std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> quiver_signature(const Quiver& q);
bool quivers_match(const Quiver& a, const Quiver& b);

struct AsRegularReport {
  Verdict verdict = Verdict::Inconclusive;
  int d = 0;
  int ell = 0;
  Window window;
  std::size_t degree_zero_dim = 0;
  std::vector<ExtDims> ext;  // i = 0..d
  bool terminated = false;
  std::vector<std::vector<int>> shifts;
  int degrees_consumed = 0;
};

/// B_0 as a right B-module is resolved; Ext^i_B(B_0, B) must vanish for
/// i < d and be dim B_0 in degree -ell for i = d, and the resolution must
/// stop after step d.
template <class K>
AsRegularReport as_regular_over_r_check(std::shared_ptr<const Algebra<K>> B, int d, int ell,
                                        const Window& w);

struct GorensteinReport {
  Verdict verdict = Verdict::Inconclusive;
  int d = 0;
  int ell = 0;
  Window window;
  std::vector<ExtDims> right;  // Ext^i_A(k, A)
  std::vector<ExtDims> left;   // Ext^i_{A^op}(k, A^op)
};

/// NotConnected unless dim A_0 = 1.
template <class K>
GorensteinReport as_gorenstein_check(PresentedPtr<K> A, int d, int ell, const Window& w);

}  // namespace ncg
