#pragma once

// Finitely generated graded right modules over an algebra oracle.
//
// A module is a subquotient U/K of an ambient free module F = (+)_j e_j R(-g_j)
// (e_j a primitive idempotent of R_0, g_j the generator degree).  Pieces are
// produced lazily, one internal degree at a time, and cached.
//
// Coordinates: F_d is the concatenation over summands of coordinates in the
// corner e_j R_{d-g_j} (Algebra::corner).  M_d has the basis of the quotient
// part of its Piece.

#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ncg/algebra.hpp"

namespace ncg {

/// e_idem R(-degree): free of rank one, generated in `degree`.
struct Summand {
  int degree = 0;
  std::size_t idem = 0;
  bool operator==(const Summand&) const = default;
};

inline constexpr int kNoDegree = INT_MAX / 4;

template <class K>
class FreeModule {
 public:
  using Elem = typename K::Elem;

  FreeModule() = default;
  FreeModule(AlgebraPtr<K> alg, std::vector<Summand> summands);

  const AlgebraPtr<K>& algebra() const noexcept { return alg_; }
  const K& field() const { return alg_->field(); }
  const std::vector<Summand>& summands() const noexcept { return summands_; }
  std::size_t rank() const noexcept { return summands_.size(); }
  /// Smallest generator degree (kNoDegree for rank 0).
  int lo() const noexcept { return lo_; }
  int valid_through() const;

  std::size_t dim(int d) const;
  std::size_t component_dim(std::size_t j, int d) const;
  std::size_t offset(std::size_t j, int d) const;
  /// Component j of an element of F_d, as a vector of R_{d-g_j}.
  Vec<K> component(std::size_t j, int d, std::span<const Elem> v) const;
  /// The generator of summand j, in F_{g_j}.
  Vec<K> generator(std::size_t j) const;

  /// Rows u*b for every basis element b of R_{d-t}; u in F_t.
  Matrix<K> times_all(std::span<const Elem> u, int t, int d) const;
  /// x -> x*r as a map F_d -> F_{d+e}, r in R_e.
  Matrix<K> right_mult(int d, const Vec<K>& r, int e) const;

  FreeModule shifted(int n) const;
  FreeModule concat(const FreeModule& o) const;

 private:
  AlgebraPtr<K> alg_;
  std::vector<Summand> summands_;
  int lo_ = kNoDegree;
};

/// One graded piece: K_d (rel) and a complement of K_d in U_d (quot), whose
/// rows are reduced against rel and row-reduced among themselves.
template <class K>
struct Piece {
  using Elem = typename K::Elem;
  Subspace<K> rel;
  Subspace<K> quot;

  static Piece make(const K& f, std::size_t n, const Matrix<K>& U, const Matrix<K>& Krows);
  static Piece zero(const K& f, std::size_t n);

  std::size_t dim() const noexcept { return quot.dim(); }
  /// Coordinates of an element of U_d (ambient coordinates) modulo K_d.
  Vec<K> coords(std::span<const Elem> v) const;
  Vec<K> lift(std::span<const Elem> c) const;
};

/// Generators (images in the ambient module) and relations (elements of the
/// cover free module).
template <class K>
struct ModulePresentation {
  FreeModule<K> cover;
  std::vector<Vec<K>> images;
  FreeModule<K> rel_free;
  std::vector<Vec<K>> relations;
  bool declared = false;
};

/// Graded automorphism of a presented algebra, given by generator images.
template <class K>
class GradedAutomorphism {
 public:
  GradedAutomorphism(PresentedPtr<K> alg, std::vector<NcPoly<K>> images);
  static GradedAutomorphism identity(PresentedPtr<K> alg);

  const PresentedPtr<K>& algebra() const noexcept { return alg_; }
  const std::vector<NcPoly<K>>& images() const noexcept { return images_; }
  /// sigma on R_n (row i = sigma(basis word i)); valid through alg->valid_through().
  const Matrix<K>& matrix(int n) const { return mats_.at(n); }
  const Matrix<K>& inverse_matrix(int n) const { return inv_.at(n); }
  GradedAutomorphism inverse() const;

 private:
  PresentedPtr<K> alg_;
  std::vector<NcPoly<K>> images_;
  std::vector<Matrix<K>> mats_;
  std::vector<Matrix<K>> inv_;
};

template <class K>
class GradedModule;
template <class K>
using ModulePtr = std::shared_ptr<const GradedModule<K>>;

template <class K>
class GradedModule {
 public:
  using Elem = typename K::Elem;
  using PieceFn = std::function<Piece<K>(int)>;

  /// `cap` bounds the generator search when the presentation is computed.
  GradedModule(FreeModule<K> ambient, int valid, PieceFn fn, std::string name, int cap,
               std::optional<ModulePresentation<K>> declared = std::nullopt);

  const AlgebraPtr<K>& algebra() const noexcept { return ambient_.algebra(); }
  const K& field() const { return ambient_.field(); }
  const FreeModule<K>& ambient() const noexcept { return ambient_; }
  const std::string& name() const noexcept { return name_; }
  int lo() const noexcept { return ambient_.lo(); }
  int valid_through() const noexcept { return valid_; }
  int cap() const noexcept { return cap_; }
  int search_bound() const { return std::min(cap_, valid_); }

  const Piece<K>& piece(int d) const;
  std::size_t dim(int d) const { return piece(d).dim(); }
  std::vector<std::size_t> dims(int from, int to) const;

  /// m -> m*r as a map M_d -> M_{d+e}, r in R_e.
  Matrix<K> action(int d, const Vec<K>& r, int e) const;
  /// Rows m*b for every basis element b of R_{d-t}; m in M_t.
  Matrix<K> times_all(std::span<const Elem> m, int t, int d) const;
  /// Basis (in M_d coordinates) of M_d e_i.
  Matrix<K> idempotent_part(int d, std::size_t i) const;

  bool has_declared_presentation() const noexcept { return declared_; }
  const ModulePresentation<K>& presentation() const;
  /// The cover map cover_d -> M_d of the presentation.
  const Matrix<K>& cover_matrix(int d) const;
  /// A right inverse M_d -> cover_d of cover_matrix(d).
  const Matrix<K>& section(int d) const;

 private:
  FreeModule<K> ambient_;
  int valid_;
  PieceFn fn_;
  std::string name_;
  int cap_;
  bool declared_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<int, std::unique_ptr<Piece<K>>> pieces_;
  mutable std::unique_ptr<ModulePresentation<K>> pres_;
  mutable std::map<int, std::unique_ptr<Matrix<K>>> cover_;
  mutable std::map<int, std::unique_ptr<Matrix<K>>> section_;
};

/// Minimal homogeneous generators found degree by degree up to the search
/// bound; `at_bound` reports a generator found in the last searched degree.
template <class K>
struct Generators {
  FreeModule<K> cover;
  std::vector<Vec<K>> images;  // ambient coordinates
  bool at_bound = false;
};

template <class K>
Generators<K> minimal_generators(const GradedModule<K>& M);

inline constexpr int kDefaultCap = 8;

/// (+)_i A(shifts_i).
template <class K>
ModulePtr<K> free_graded_module(AlgebraPtr<K> alg, const std::vector<int>& shifts,
                                std::string name = "");
/// (+)_i e_i R(shift) over all primitive idempotents of R_0, i.e. R(shift).
template <class K>
ModulePtr<K> regular_module(AlgebraPtr<K> alg, int shift = 0, std::string name = "");
/// F / sum_k rho_k R with rho_k in F_{t_k}.
template <class K>
ModulePtr<K> cokernel_module(const FreeModule<K>& F, const FreeModule<K>& rel_free,
                             std::vector<Vec<K>> relations, std::string name = "");
/// A / sum g_i A.
template <class K>
ModulePtr<K> cyclic_module(PresentedPtr<K> alg, const std::vector<NcPoly<K>>& gens,
                           std::string name = "");
/// Kernel of a degreewise map F_d -> T_d; the module has no declared presentation.
template <class K>
ModulePtr<K> kernel_module(const FreeModule<K>& F, std::function<Matrix<K>(int)> map, int valid,
                           int cap, std::string name = "");
template <class K>
ModulePtr<K> shift_module(ModulePtr<K> M, int n);
template <class K>
ModulePtr<K> truncate_module(ModulePtr<K> M, int n);
template <class K>
ModulePtr<K> twist_module(ModulePtr<K> M, const GradedAutomorphism<K>& sigma);
template <class K>
ModulePtr<K> direct_sum(const std::vector<ModulePtr<K>>& parts, std::string name = "");
/// M^dagger = Hom_A(M, A) as a right module over A^op.
template <class K>
ModulePtr<K> dual_module(ModulePtr<K> M, int cap = kDefaultCap);
/// R_0 = R / R_{>=1} as a right R-module.
template <class K>
ModulePtr<K> degree_zero_module(AlgebraPtr<K> alg, int cap = kDefaultCap);

}  // namespace ncg
