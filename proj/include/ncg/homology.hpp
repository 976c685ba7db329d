#pragma once

// Degreewise homological algebra over an algebra oracle: graded Hom spaces,
// composition, minimal free resolutions, graded Ext dimensions and the tests
// built on them (MCM, indecomposability, isomorphism, cluster tilting, the
// evaluation map, stability under twists).
//
// Every answer is certified only inside a Window.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/findim.hpp"
#include "ncg/gmodule.hpp"

namespace ncg {

struct Window {
  int lo = -6;
  int hi = 6;
  int hmax = 4;
  int cap = kDefaultCap;

  void validate() const;
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);
Verdict verdict_and(Verdict a, Verdict b);

/// A degree-s homomorphism M -> N(s), stored as the images of the generators
/// of M's presentation (target coordinates, generator j lands in N_{g_j+s}).
template <class K>
struct Hom {
  using Elem = typename K::Elem;
  ModulePtr<K> source;
  ModulePtr<K> target;
  int shift = 0;
  std::vector<Vec<K>> images;

  /// M_d -> N_{d+s}.
  Matrix<K> matrix(int d) const;
  Vec<K> flat() const;
  bool is_zero() const;
  Hom scaled(const Elem& c) const;
  Hom plus(const Hom& o) const;
};

/// cover_d -> N_{d+s} for a free module whose generator j maps to images[j].
template <class K>
Matrix<K> induced_map(const GradedModule<K>& N, const FreeModule<K>& cover,
                      const std::vector<Vec<K>>& images, int s, int d);

template <class K>
class HomSpace {
 public:
  using Elem = typename K::Elem;

  /// Hom(M, N(s)) in degree zero.  WindowExceeded if N is not known in the
  /// degrees reached by the generators and relations of M.
  static HomSpace compute(ModulePtr<K> M, ModulePtr<K> N, int s);

  const ModulePtr<K>& source() const noexcept { return source_; }
  const ModulePtr<K>& target() const noexcept { return target_; }
  int shift() const noexcept { return shift_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Hom<K>>& basis() const noexcept { return basis_; }

  Hom<K> element(const Vec<K>& coeffs) const;
  /// Coordinates in the basis; nullopt if h is not in the space.
  std::optional<Vec<K>> coords(const Hom<K>& h) const;

 private:
  ModulePtr<K> source_, target_;
  int shift_ = 0;
  std::vector<Hom<K>> basis_;
  std::shared_ptr<const RowSolver<K>> solver_;
};

template <class K>
Hom<K> identity_hom(ModulePtr<K> M);
template <class K>
Hom<K> zero_hom(ModulePtr<K> M, ModulePtr<K> N, int s);
/// g after f.
template <class K>
Hom<K> compose(const Hom<K>& f, const Hom<K>& g);
/// Invertible in every degree from min(lo) through hi that both modules know.
template <class K>
bool is_invertible(const Hom<K>& h, int hi);

template <class K>
class FreeResolution {
 public:
  /// P_0, ..., P_steps.  IncompleteKernel if a kernel generator is found at
  /// the search bound min(cap, validity).
  static FreeResolution compute(ModulePtr<K> M, int steps, const Window& w);

  const ModulePtr<K>& module() const noexcept { return module_; }
  /// Number of free modules computed (steps + 1 unless terminated earlier).
  std::size_t length() const noexcept { return free_.size(); }
  const FreeModule<K>& free(std::size_t i) const { return free_.at(i); }
  /// Images of the generators of P_i: in P_{i-1} for i >= 1, in the ambient
  /// module of M for i = 0.
  const std::vector<Vec<K>>& images(std::size_t i) const { return images_.at(i); }
  /// P_i,d -> P_{i-1},d, or P_0,d -> M_d for i = 0.
  Matrix<K> differential_matrix(std::size_t i, int d) const;
  /// True if some P_i came out zero, so the resolution is finite.
  bool terminated() const noexcept { return terminated_; }
  /// Shifts n of the summands R(n) of each P_i.
  std::vector<std::vector<int>> shifts() const;
  /// Internal degrees through which every kernel is known.
  int complete_internal_through() const noexcept { return complete_through_; }
  int max_generator_degree(std::size_t i) const;

 private:
  ModulePtr<K> module_;
  std::vector<FreeModule<K>> free_;
  std::vector<std::vector<Vec<K>>> images_;
  bool terminated_ = false;
  int complete_through_ = 0;
};

/// dim Ext^i(M, N)_s for s in the window; `dims` has an entry only where the
/// value is certified.
struct ExtDims {
  int i = 0;
  Window window;
  std::map<int, std::size_t> dims;
  int certified_hi = 0;

  bool fully_certified() const;
  bool any_nonzero() const;
};

template <class K>
std::vector<ExtDims> ext_from_resolution(const FreeResolution<K>& res, const GradedModule<K>& N,
                                         int imax, const Window& w);
template <class K>
ExtDims ext_graded_dims(ModulePtr<K> M, ModulePtr<K> N, int i, const Window& w);

struct McmReport {
  Verdict verdict = Verdict::Inconclusive;
  Window window;
  std::vector<ExtDims> ext;  // i = 1..hmax
};

/// Ext^i(M, R) = 0 for 1 <= i <= hmax inside the window.
template <class K>
McmReport is_mcm(ModulePtr<K> M, const Window& w);

/// End(M)_0 is local.  NonSplitResidue if the residue algebra does not split.
template <class K>
bool is_indecomposable(ModulePtr<K> M, const Window& w);

template <class K>
struct IsoResult {
  enum class Status { Isomorphic, NotIsomorphic, NotFound };
  Status status = Status::NotFound;
  std::optional<Hom<K>> witness;
  std::string reason;

  bool isomorphic() const { return status == Status::Isomorphic; }
  bool certified() const { return status != Status::NotFound; }
};

template <class K>
IsoResult<K> are_isomorphic(ModulePtr<K> M, ModulePtr<K> N, const Window& w, int trials = 64,
                            std::uint64_t seed = 0);

/// Shift s in the window with id_M in the span of compositions
/// M -> X(s) -> M collected over the shifts scanned so far (0, 1, -1, 2, ...).
template <class K>
std::optional<int> add_membership(ModulePtr<K> X, ModulePtr<K> M, const Window& w);

struct CandidateReport {
  std::string name;
  Verdict mcm = Verdict::Inconclusive;
  Verdict ext_vanishing = Verdict::Inconclusive;
  bool in_add = false;
  std::optional<int> add_shift;
  Verdict verdict = Verdict::Inconclusive;
};

struct ClusterTiltingReport {
  int n = 1;
  Window window;
  Verdict x_mcm = Verdict::Inconclusive;
  Verdict x_rigid = Verdict::Inconclusive;
  bool rigidity_vacuous = false;
  std::vector<CandidateReport> candidates;
  Verdict verdict = Verdict::Inconclusive;
};

template <class K>
ClusterTiltingReport check_cluster_tilting(ModulePtr<K> X, int n,
                                           const std::vector<ModulePtr<K>>& candidates,
                                           const Window& w);

struct EvalDegree {
  int degree = 0;
  std::size_t tensor_dim = 0;
  std::size_t module_dim = 0;
  bool surjective = false;
  bool iso = false;
};

struct EvalReport {
  Verdict verdict = Verdict::Inconclusive;
  Window window;
  std::vector<EvalDegree> degrees;
};

/// Hom(X, M) (x)_End(X) X -> M in each degree of the window, with X given by
/// its summands.  HypothesisViolated unless some summand is declared free of
/// rank one generated in degree 0.
template <class K>
EvalReport eval_iso_check(const std::vector<ModulePtr<K>>& summands, ModulePtr<K> M,
                          const Window& w);

template <class K>
IsoResult<K> nu_stability_check(ModulePtr<K> M, const GradedAutomorphism<K>& sigma,
                                const Window& w, int trials = 64, std::uint64_t seed = 0);

}  // namespace ncg
