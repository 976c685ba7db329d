#pragma once

// Graded algebras as oracles.  An Algebra answers dim(d) and multiplication
// blocks between graded pieces; PresentedAlgebra backs this with a truncated
// Groebner basis, TabulatedAlgebra with structure constants supplied on
// demand (e.g. composition of graded homomorphisms).
//
// block(d1, d2) has one row per pair of basis elements (a of degree d1, b of
// degree d2), row index a * dim(d2) + b, holding the coordinates of a*b.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ncg/gbasis.hpp"
#include "ncg/linalg.hpp"

namespace ncg {

template <class K>
class Algebra {
 public:
  using Elem = typename K::Elem;

  virtual ~Algebra() = default;

  const K& field() const noexcept { return field_; }
  int valid_through() const noexcept { return valid_; }
  const std::string& name() const noexcept { return name_; }

  /// 0 for d < 0; DegreeBeyondTruncation above valid_through().
  std::size_t dim(int d) const;
  virtual std::string basis_label(int d, std::size_t i) const;
  const Vec<K>& unit() const noexcept { return unit_; }

  const Matrix<K>& block(int d1, int d2) const;
  Vec<K> product(const Vec<K>& a, int d1, const Vec<K>& b, int d2) const;
  /// x -> a*x as a map R_n -> R_{d1+n}.
  Matrix<K> left_mult_matrix(const Vec<K>& a, int d1, int n) const;
  /// x -> x*a as a map R_n -> R_{n+d1}.
  Matrix<K> right_mult_matrix(const Vec<K>& a, int d1, int n) const;

  /// Complete set of primitive orthogonal idempotents of R_0 and a basis of
  /// rad(R_0).  For connected algebras: {1} and 0.
  std::size_t num_idempotents() const noexcept { return idempotents_.size(); }
  const Vec<K>& idempotent(std::size_t i) const { return idempotents_.at(i); }
  const Matrix<K>& radical_zero() const noexcept { return radical_; }
  bool is_connected() const { return dim(0) == 1; }
  /// e_i R_n as a subspace of R_n.
  const Subspace<K>& corner(std::size_t i, int n) const;

  void check_degree(int d) const;

 protected:
  Algebra(K field, int valid, std::string name)
      : field_(std::move(field)), valid_(valid), name_(std::move(name)) {}
  /// Must be called by derived constructors once dim(0) is available.
  void init_connected_default();
  void set_degree_zero(std::vector<Vec<K>> idempotents, Matrix<K> radical);

  virtual std::size_t compute_dim(int d) const = 0;
  virtual Matrix<K> compute_block(int d1, int d2) const = 0;

  K field_;
  int valid_;
  std::string name_;
  Vec<K> unit_;

 private:
  std::vector<Vec<K>> idempotents_;
  Matrix<K> radical_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Matrix<K>>> blocks_;
  mutable std::map<std::pair<std::size_t, int>, std::unique_ptr<Subspace<K>>> corners_;
  mutable std::map<int, std::size_t> dims_;
};

template <class K>
using AlgebraPtr = std::shared_ptr<const Algebra<K>>;

template <class K>
class PresentedAlgebra : public Algebra<K>,
                         public std::enable_shared_from_this<PresentedAlgebra<K>> {
 public:
  using Elem = typename K::Elem;

  static std::shared_ptr<const PresentedAlgebra> build(const Presentation<K>& pres, int D,
                                                       std::string name = "");

  const Presentation<K>& presentation() const noexcept { return pres_; }
  const TruncatedGB<K>& gb() const noexcept { return gb_; }
  const FreeAlgebraPtr<K>& free() const noexcept { return pres_.free(); }
  const std::vector<Word>& basis_words(int d) const;
  std::string basis_label(int d, std::size_t i) const override;

  /// Coordinates of a homogeneous polynomial of degree d (after normal form).
  Vec<K> to_coords(const NcPoly<K>& f, int d) const;
  NcPoly<K> from_coords(const Vec<K>& v, int d) const;
  NcPoly<K> parse(std::string_view text,
                  const std::map<std::string, Elem>& constants = {}) const;

  /// Right multiplication by generator g: R_n -> R_{n + deg g}.
  const Matrix<K>& generator_right_matrix(int g, int n) const;

  /// The opposite algebra (reversed relations, same truncation).  Its own
  /// opposite() is this object.
  std::shared_ptr<const PresentedAlgebra> opposite() const;
  /// The identity map A -> A^op in bases: word w goes to reverse(w).
  const Matrix<K>& transport_to_opposite(int n) const;

 protected:
  std::size_t compute_dim(int d) const override;
  Matrix<K> compute_block(int d1, int d2) const override;

 private:
  PresentedAlgebra(Presentation<K> pres, TruncatedGB<K> gb, std::string name);

  Presentation<K> pres_;
  TruncatedGB<K> gb_;
  std::vector<std::vector<Word>> words_;
  std::vector<std::map<Word, std::size_t>> index_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Matrix<K>>> gen_right_;
  mutable std::map<int, std::unique_ptr<Matrix<K>>> transport_;
  mutable std::shared_ptr<const PresentedAlgebra> opposite_;
  mutable std::weak_ptr<const PresentedAlgebra> opposite_weak_;
};

template <class K>
using PresentedPtr = std::shared_ptr<const PresentedAlgebra<K>>;

template <class K>
class TabulatedAlgebra : public Algebra<K> {
 public:
  using Provider = std::function<Matrix<K>(int, int)>;
  using Labeler = std::function<std::string(int, std::size_t)>;

  /// dims[d] for 0 <= d <= valid; unit in degree 0; provider(d1, d2) returns
  /// block(d1, d2) for d1 + d2 <= valid.
  TabulatedAlgebra(K field, std::vector<std::size_t> dims, Vec<K> unit, Provider provider,
                   std::string name = "", Labeler labeler = nullptr);

  /// Copies an oracle through degree V.
  static std::shared_ptr<TabulatedAlgebra> from_oracle(const Algebra<K>& src, int V);

  /// Declares the primitive idempotents and radical of the degree-0 part;
  /// required for non-connected algebras before building modules over them.
  void register_degree_zero(std::vector<Vec<K>> idempotents, Matrix<K> radical);

  std::string basis_label(int d, std::size_t i) const override;

 protected:
  std::size_t compute_dim(int d) const override { return dims_.at(d); }
  Matrix<K> compute_block(int d1, int d2) const override { return provider_(d1, d2); }

 private:
  std::vector<std::size_t> dims_;
  Provider provider_;
  Labeler labeler_;
};

template <class K>
using TabulatedPtr = std::shared_ptr<TabulatedAlgebra<K>>;

/// Reversed relations over the same generators.
template <class K>
Presentation<K> opposite_presentation(const Presentation<K>& pres);

/// Presentation with extra relations appended, completed through D.
template <class K>
PresentedPtr<K> quotient_algebra(const PresentedAlgebra<K>& alg,
                                 const std::vector<NcPoly<K>>& extra, int D,
                                 std::string name = "");

/// f central: NF(f*g - g*f) = 0 for every generator g.
template <class K>
bool is_central(const PresentedAlgebra<K>& alg, const NcPoly<K>& f);

/// Left and right multiplication by f injective on R_d for 0 <= d <= window.
template <class K>
bool is_regular_element(const PresentedAlgebra<K>& alg, const NcPoly<K>& f, int window);

// ---------------------------------------------------------------------------
// Hilbert series

/// Integer polynomial in t, coefficient of t^i at index i.
using IntPoly = std::vector<std::int64_t>;

struct RationalFunction {
  IntPoly num{1};
  IntPoly den{1};
};

/// Parses expressions in t with integers, + - * / ^ and parentheses; a number
/// directly followed by '(' multiplies, as in "9(1+t)/(1-t)^2".
RationalFunction parse_rational_function(const std::string& text);
/// Power-series expansion through t^D by exact integer division.
IntPoly expand_series(const RationalFunction& r, int D);
/// Coefficients of p(t) * q(-t) truncated at degree D.
IntPoly pair_with_negated(const IntPoly& p, const IntPoly& q, int D);

struct HilbertSeries {
  IntPoly coeffs;
  bool matches(const RationalFunction& r) const { return expand_series(r, degree()) == coeffs; }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

template <class K>
HilbertSeries hilbert_series(const Algebra<K>& alg, int D);

}  // namespace ncg
