#include "ncg/koszul.hpp"

#include <cmath>

namespace ncg {

template <class K>
QuadraticData<K> quadratic_data(const Presentation<K>& pres) {
  const auto& free = pres.free();
  const std::size_t n = free->num_generators();
  for (std::size_t g = 0; g < n; ++g)
    if (free->order().generator_degree(static_cast<int>(g)) != 1)
      throw Error(ErrorCode::NotQuadratic, "generator " + free->names()[g] + " has degree != 1");
  const K& f = free->field();
  Matrix<K> rows = Matrix<K>::with_cols(n * n);
  for (const auto& r : pres.relations()) {
    if (!r.is_homogeneous() || r.degree() != 2)
      throw Error(ErrorCode::NotQuadratic, "relation " + r.to_string() + " is not quadratic");
    Vec<K> v(n * n, f.zero());
    for (const auto& [w, c] : r.terms()) v[w[0] * n + w[1]] = c;
    rows.append_row(v);
  }
  return QuadraticData<K>{free, n, Subspace<K>::span_of(f, n * n, rows)};
}

template <class K>
Presentation<K> quadratic_dual(const Presentation<K>& pres, bool signed_pairing) {
  const auto q = quadratic_data(pres);
  const K& f = q.free->field();
  const std::size_t n = q.n;
  // phi is in R^perp iff sum_w eps_w phi_w r_w = 0 for every r in R
  Matrix<K> R = q.relations.basis();
  if (signed_pairing)
    for (std::size_t i = 0; i < R.rows(); ++i)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (a != b) R.at(i, a * n + b) = f.neg(R.at(i, a * n + b));
  Matrix<K> perp = R.rows() == 0 ? Matrix<K>::identity(f, n * n) : left_kernel(f, R.transpose());
  auto dual_free = std::make_shared<const FreeAlgebra<K>>(f, q.free->names(), q.free->order());
  std::vector<NcPoly<K>> rels;
  for (std::size_t i = 0; i < perp.rows(); ++i) {
    std::vector<typename NcPoly<K>::Term> terms;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!f.is_zero(perp.at(i, a * n + b)))
          terms.emplace_back(Word{static_cast<int>(a), static_cast<int>(b)},
                             perp.at(i, a * n + b));
    rels.emplace_back(dual_free, std::move(terms));
  }
  return Presentation<K>(dual_free, std::move(rels));
}

template <class K>
bool same_relation_span(const Presentation<K>& a, const Presentation<K>& b) {
  const auto qa = quadratic_data(a);
  const auto qb = quadratic_data(b);
  return qa.n == qb.n && qa.relations.canonical() == qb.relations.canonical();
}

namespace {

template <class K>
bool is_bijective(const K& f, const Matrix<K>& m) {
  return m.rows() == m.cols() && rank(f, m) == m.rows();
}

// .w^L : A_{2L} -> A_{4L}.
template <class K>
Matrix<K> power_map(const PresentedAlgebra<K>& A, const Vec<K>& w, int level) {
  const K& f = A.field();
  Matrix<K> m = Matrix<K>::identity(f, A.dim(2 * level));
  for (int k = level; k < 2 * level; ++k) m = mul(f, m, A.right_mult_matrix(w, 2, 2 * k));
  return m;
}

template <class K>
Vec<K> degree_two_coords(const PresentedAlgebra<K>& A, const NcPoly<K>& w) {
  if (!w.is_zero() && (!w.is_homogeneous() || w.degree() != 2))
    throw Error(ErrorCode::InvalidArgument, "w must be homogeneous of degree 2");
  return w.is_zero() ? Vec<K>(A.dim(2), A.field().zero()) : A.to_coords(w, 2);
}

}  // namespace

template <class K>
std::shared_ptr<const FinDimAlgebra<K>> clifford_at_level(const PresentedAlgebra<K>& A,
                                                          const NcPoly<K>& w, int level) {
  const K& f = A.field();
  A.check_degree(4 * level);
  const Vec<K> wc = degree_two_coords(A, w);
  const std::size_t n = A.dim(2 * level);
  const Matrix<K> P = power_map(A, wc, level);
  if (!is_bijective(f, P))
    throw Error(ErrorCode::NotStabilized, "w^L is not bijective at level " + std::to_string(level));
  const RowSolver<K> solver(f, P);
  const Matrix<K>& blk = A.block(2 * level, 2 * level);
  Matrix<K> table = Matrix<K>::with_cols(n);
  for (std::size_t r = 0; r < blk.rows(); ++r) table.append_row(*solver.solve(blk.row(r)));
  // the unit is w^L / w^L
  Vec<K> unit = A.unit();
  for (int k = 0; k < level; ++k) unit = A.product(unit, 2 * k, wc, 2);
  return std::make_shared<const FinDimAlgebra<K>>(f, std::move(table), std::move(unit));
}

template <class K>
CliffordResult<K> clifford_algebra(const PresentedAlgebra<K>& A, const NcPoly<K>& w,
                                   int max_degree) {
  const Vec<K> wc = degree_two_coords(A, w);
  if (!w.is_zero() && !is_central(A, w))
    throw Error(ErrorCode::NotCentral, w.to_string() + " is not central");
  const K& f = A.field();
  const int top = std::min(max_degree, A.valid_through());
  CliffordResult<K> res;
  for (int k = 0; 2 * k <= top; ++k) res.chain_dims.push_back(A.dim(2 * k));
  for (int k = 0; 2 * k + 2 <= top; ++k)
    res.bijective.push_back(is_bijective(f, A.right_mult_matrix(wc, 2, 2 * k)));
  for (int L = 0; L + 1 < static_cast<int>(res.bijective.size()); ++L) {
    if (!res.bijective[L] || !res.bijective[L + 1] || res.chain_dims[L] == 0) continue;
    if (4 * L > top) break;
    if (!is_bijective(f, power_map(A, wc, L))) continue;
    res.algebra = clifford_at_level(A, w, L);
    res.stable_degree = 2 * L;
    return res;
  }
  throw Error(ErrorCode::NotStabilized,
              "multiplication by " + w.to_string() + " does not stabilise through degree " +
                  std::to_string(top));
}

template <class K>
Decomposition<K> commutative_semisimple_decompose(const FinDimAlgebra<K>& F) {
  if (!F.is_commutative()) throw Error(ErrorCode::NotCommutative, "algebra is not commutative");
  if (F.radical().rows() != 0)
    throw Error(ErrorCode::NotSemisimple,
                "radical has dimension " + std::to_string(F.radical().rows()));
  Decomposition<K> out;
  out.idempotents = F.idempotents();
  for (const auto& e : out.idempotents) out.block_dims.push_back(rank(F.field(), F.left_mult(e)));
  return out;
}

std::vector<Vec<PrimeField>> enumerate_projective_points(
    const std::vector<NcPoly<PrimeField>>& polys) {
  if (polys.empty()) throw Error(ErrorCode::InvalidArgument, "no polynomials");
  const auto& free = polys.front().context();
  const PrimeField& f = free->field();
  for (const auto& g : polys) {
    if (!g.context()->same_as(*free))
      throw Error(ErrorCode::AlgebraMismatch, "polynomials over different rings");
    if (!g.is_homogeneous()) throw Error(ErrorCode::NonHomogeneous, g.to_string());
  }
  const std::size_t n = free->num_generators();
  const std::uint32_t p = f.characteristic();
  std::vector<Vec<PrimeField>> out;
  double total = 0;
  for (std::size_t j = 0; j < n; ++j) total += std::pow(double(p), double(j));
  if (total > 1e8) throw Error(ErrorCode::InvalidArgument, "too many points to scan");
  for (std::size_t j = n; j-- > 0;) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < j; ++i) count *= p;
    Vec<PrimeField> pt(n, f.zero());
    pt[j] = f.one();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t r = idx;
      for (std::size_t i = j; i-- > 0;) {
        pt[i] = static_cast<PrimeField::Elem>(r % p);
        r /= p;
      }
      bool zero = true;
      for (const auto& g : polys)
        if (!f.is_zero(evaluate_commutative(g, pt))) {
          zero = false;
          break;
        }
      if (zero) out.push_back(pt);
    }
  }
  return out;
}

#define NCG_INSTANTIATE(K)                                                                    \
  template QuadraticData<K> quadratic_data<K>(const Presentation<K>&);                       \
  template Presentation<K> quadratic_dual<K>(const Presentation<K>&, bool);                  \
  template bool same_relation_span<K>(const Presentation<K>&, const Presentation<K>&);       \
  template std::shared_ptr<const FinDimAlgebra<K>> clifford_at_level<K>(                     \
      const PresentedAlgebra<K>&, const NcPoly<K>&, int);                                    \
  template CliffordResult<K> clifford_algebra<K>(const PresentedAlgebra<K>&, const NcPoly<K>&, \
                                                 int);                                       \
  template Decomposition<K> commutative_semisimple_decompose<K>(const FinDimAlgebra<K>&);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
