#include "ncg/findim.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <type_traits>

namespace ncg {

std::size_t Quiver::num_arrows() const {
  std::size_t n = 0;
  for (const auto& a : arrows) n += a.mult;
  return n;
}

std::size_t Quiver::in_degree(std::size_t v) const {
  std::size_t n = 0;
  for (const auto& a : arrows)
    if (a.dst == v) n += a.mult;
  return n;
}

std::size_t Quiver::out_degree(std::size_t v) const {
  std::size_t n = 0;
  for (const auto& a : arrows)
    if (a.src == v) n += a.mult;
  return n;
}

bool Quiver::has_loops() const {
  return std::any_of(arrows.begin(), arrows.end(), [](const Arrow& a) { return a.src == a.dst; });
}

namespace {

// Univariate polynomials, coefficient of t^i at index i, no trailing zeros.
template <class K>
struct Upoly {
  using P = Vec<K>;
  const K& f;

  P trim(P a) const {
    while (!a.empty() && f.is_zero(a.back())) a.pop_back();
    return a;
  }
  int deg(const P& a) const { return static_cast<int>(a.size()) - 1; }
  P mul(const P& a, const P& b) const {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    return trim(r);
  }
  P sub(const P& a, const P& b) const {
    P r(std::max(a.size(), b.size()), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
    return trim(r);
  }
  std::pair<P, P> divmod(P a, const P& b) const {
    a = trim(a);
    if (deg(a) < deg(b)) return {{}, a};
    P q(a.size() - b.size() + 1, f.zero());
    const auto lead_inv = f.inv(b.back());
    while (!a.empty() && deg(a) >= deg(b)) {
      const std::size_t shift = a.size() - b.size();
      const auto c = f.mul(a.back(), lead_inv);
      q[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
      a = trim(a);
    }
    return {trim(q), a};
  }
  P monic(P a) const {
    if (a.empty()) return a;
    const auto c = f.inv(a.back());
    for (auto& x : a) x = f.mul(x, c);
    return a;
  }
  P gcd(P a, P b) const {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
      P r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // u with u*a = gcd(a, b) (mod b).
  P inverse_mod(const P& a, const P& b) const {
    P r0 = trim(b), r1 = divmod(a, b).second, s0{}, s1{f.one()};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      P s = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r0 is a nonzero constant when a and b are coprime
    const auto c = f.inv(r0.front());
    for (auto& x : s0) x = f.mul(x, c);
    return trim(s0);
  }
  P powmod(P base, std::uint64_t e, const P& m) const {
    P r{f.one()};
    base = divmod(base, m).second;
    while (e) {
      if (e & 1) r = divmod(mul(r, base), m).second;
      base = divmod(mul(base, base), m).second;
      e >>= 1;
    }
    return r;
  }
};

void split_roots(const PrimeField& f, const Vec<PrimeField>& g, std::mt19937_64& rng,
                 std::vector<PrimeField::Elem>& out) {
  Upoly<PrimeField> U{f};
  const int d = U.deg(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(f.neg(f.div(g[0], g[1])));
    return;
  }
  const std::uint64_t p = f.characteristic();
  for (;;) {
    const auto a = f.random(rng);
    Vec<PrimeField> h = U.powmod({a, f.one()}, (p - 1) / 2, g);
    h = U.sub(h, {f.one()});
    Vec<PrimeField> c = U.gcd(g, h);
    if (U.deg(c) > 0 && U.deg(c) < d) {
      split_roots(f, c, rng, out);
      split_roots(f, U.divmod(g, c).first, rng, out);
      return;
    }
  }
}

std::vector<PrimeField::Elem> roots_impl(const PrimeField& f, const Vec<PrimeField>& poly) {
  Upoly<PrimeField> U{f};
  Vec<PrimeField> m = U.monic(U.trim(poly));
  std::vector<PrimeField::Elem> out;
  if (U.deg(m) <= 0) return out;
  const std::uint64_t p = f.characteristic();
  if (p <= 64) {
    for (std::uint64_t a = 0; a < p; ++a) {
      auto v = f.zero();
      for (std::size_t i = m.size(); i-- > 0;) v = f.add(f.mul(v, f.from_int(a)), m[i]);
      if (f.is_zero(v)) out.push_back(f.from_int(a));
    }
    return out;
  }
  // split part gcd(m, t^p - t), then equal-degree splitting
  Vec<PrimeField> tp = U.powmod({f.zero(), f.one()}, p, m);
  Vec<PrimeField> g = U.gcd(m, U.sub(tp, {f.zero(), f.one()}));
  std::mt19937_64 rng(0x5eed);
  split_roots(f, g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > mpz_class("1000000000000")) return out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

std::vector<mpq_class> roots_impl(const RationalField& f, const Vec<RationalField>& poly) {
  Upoly<RationalField> U{f};
  Vec<RationalField> m = U.trim(poly);
  std::vector<mpq_class> out;
  if (U.deg(m) <= 0) return out;
  std::size_t low = 0;
  while (m[low] == 0) ++low;
  if (low > 0) out.push_back(0);
  mpz_class den = 1;
  for (const auto& c : m) den = lcm(den, c.get_den());
  std::vector<mpz_class> z;
  for (std::size_t i = low; i < m.size(); ++i) z.push_back(mpz_class(m[i] * den));
  if (z.size() > 1) {
    for (const auto& p : divisors(z.front()))
      for (const auto& q : divisors(z.back()))
        for (int sign : {1, -1}) {
          mpq_class r(sign * p, q);
          r.canonicalize();
          mpq_class v = 0;
          for (std::size_t i = z.size(); i-- > 0;) v = v * r + z[i];
          if (v == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

template <class K>
std::vector<typename K::Elem> field_roots(const K& field, const Vec<K>& poly) {
  return roots_impl(field, poly);
}

template <class K>
FinDimAlgebra<K>::FinDimAlgebra(K field, Matrix<K> table, Vec<K> unit)
    : field_(std::move(field)), n_(unit.size()), table_(std::move(table)), unit_(std::move(unit)) {
  if (table_.rows() != n_ * n_ || table_.cols() != n_)
    throw Error(ErrorCode::ShapeMismatch, "structure constant table has the wrong shape");
}

template <class K>
FinDimAlgebra<K> FinDimAlgebra<K>::degree_zero_of(const Algebra<K>& alg) {
  return FinDimAlgebra(alg.field(), alg.block(0, 0), alg.unit());
}

template <class K>
Vec<K> FinDimAlgebra<K>::mul(const Vec<K>& a, const Vec<K>& b) const {
  Vec<K> out(n_, field_.zero());
  for (std::size_t i = 0; i < n_; ++i) {
    if (field_.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (field_.is_zero(b[j])) continue;
      field_.axpy(std::span(out), field_.mul(a[i], b[j]), table_.row(i * n_ + j));
    }
  }
  return out;
}

template <class K>
Matrix<K> FinDimAlgebra<K>::left_mult(const Vec<K>& a) const {
  Matrix<K> m = Matrix<K>::zeros(field_, n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (field_.is_zero(a[i])) continue;
    for (std::size_t x = 0; x < n_; ++x) field_.axpy(m.row(x), a[i], table_.row(i * n_ + x));
  }
  return m;
}

template <class K>
bool FinDimAlgebra<K>::is_commutative() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (!std::equal(table_.row(a * n_ + b).begin(), table_.row(a * n_ + b).end(),
                      table_.row(b * n_ + a).begin()))
        return false;
  return true;
}

template <class K>
bool FinDimAlgebra<K>::is_associative() const {
  auto e = [&](std::size_t i) {
    Vec<K> v(n_, field_.zero());
    v[i] = field_.one();
    return v;
  };
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const Vec<K> ab = table_.row_vec(a * n_ + b);
      for (std::size_t c = 0; c < n_; ++c)
        if (mul(ab, e(c)) != mul(e(a), table_.row_vec(b * n_ + c))) return false;
    }
  return true;
}

template <class K>
bool FinDimAlgebra<K>::is_unital() const {
  for (std::size_t a = 0; a < n_; ++a) {
    Vec<K> v(n_, field_.zero());
    v[a] = field_.one();
    if (mul(unit_, v) != v || mul(v, unit_) != v) return false;
  }
  return true;
}

template <class K>
const Matrix<K>& FinDimAlgebra<K>::radical() const {
  std::lock_guard lock(mutex_);
  if (radical_) return *radical_;
  if constexpr (std::is_same_v<K, PrimeField>) {
    if (field_.characteristic() <= n_)
      throw Error(ErrorCode::FieldTooSmall,
                  "the trace-form radical needs p > dim = " + std::to_string(n_));
  }
  Vec<K> tr(n_, field_.zero());
  for (std::size_t c = 0; c < n_; ++c)
    for (std::size_t x = 0; x < n_; ++x) tr[c] = field_.add(tr[c], table_.at(c * n_ + x, x));
  Matrix<K> G = Matrix<K>::zeros(field_, n_, n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      auto s = field_.zero();
      for (std::size_t c = 0; c < n_; ++c)
        if (!field_.is_zero(table_.at(a * n_ + b, c)))
          s = field_.add(s, field_.mul(table_.at(a * n_ + b, c), tr[c]));
      G.at(a, b) = s;
    }
  Matrix<K> J = left_kernel(field_, G);
  rref(field_, J);
  if (J.rows() == 0) J = Matrix<K>::with_cols(n_);
  radical_ = std::move(J);
  return *radical_;
}

template <class K>
Matrix<K> FinDimAlgebra<K>::radical_power(int k) const {
  if (k <= 0) return Matrix<K>::identity(field_, n_);
  const Matrix<K>& J = radical();
  Matrix<K> P = J;
  for (int i = 1; i < k; ++i) {
    Subspace<K> next(field_, n_);
    for (std::size_t a = 0; a < P.rows(); ++a)
      for (std::size_t b = 0; b < J.rows(); ++b) next.insert(mul(P.row_vec(a), J.row_vec(b)));
    P = next.canonical();
  }
  return P;
}

template <class K>
int FinDimAlgebra<K>::nilpotency_index() const {
  for (int k = 1; k <= static_cast<int>(n_) + 1; ++k)
    if (radical_power(k).rows() == 0) return k;
  throw Error(ErrorCode::InvalidArgument, "radical is not nilpotent");
}

template <class K>
Matrix<K> FinDimAlgebra<K>::corner(const Vec<K>& e, const Vec<K>& f, int power) const {
  const Matrix<K> B = radical_power(power);
  Subspace<K> s(field_, n_);
  for (std::size_t a = 0; a < B.rows(); ++a) s.insert(mul(mul(e, B.row_vec(a)), f));
  return s.canonical();
}

template <class K>
const std::vector<Vec<K>>& FinDimAlgebra<K>::idempotents(std::uint64_t seed) const {
  const Matrix<K>& Jm = radical();
  {
    std::lock_guard lock(mutex_);
    if (idempotents_) return *idempotents_;
  }
  const K& f = field_;
  const Subspace<K> J = Subspace<K>::span_of(f, n_, Jm);
  Upoly<K> U{f};
  std::mt19937_64 rng(seed);
  std::vector<Vec<K>> out;

  auto quotient_rank = [&](const Matrix<K>& rows) {
    Subspace<K> s(f, n_);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
      Vec<K> v = rows.row_vec(i);
      J.reduce(std::span(v));
      s.insert(v);
    }
    return s.dim();
  };
  auto eval = [&](const Vec<K>& poly, const Vec<K>& x, const Vec<K>& e) {
    Vec<K> acc(n_, f.zero());
    for (std::size_t i = poly.size(); i-- > 0;) {
      acc = mul(acc, x);
      f.axpy(std::span(acc), poly[i], std::span<const typename K::Elem>(e));
    }
    return acc;
  };
  // minimal polynomial of x modulo J inside the corner with identity e
  auto minpoly = [&](const Vec<K>& x, const Vec<K>& e) {
    Matrix<K> powers = Matrix<K>::with_cols(n_);
    Vec<K> p = e;
    for (;;) {
      Vec<K> r = p;
      J.reduce(std::span(r));
      if (powers.rows() > 0) {
        RowSolver<K> solver(f, powers);
        if (auto c = solver.solve(std::span<const typename K::Elem>(r))) {
          Vec<K> m(c->size() + 1, f.zero());
          for (std::size_t i = 0; i < c->size(); ++i) m[i] = f.neg((*c)[i]);
          m.back() = f.one();
          return m;
        }
      } else if (is_zero_vec(f, std::span<const typename K::Elem>(r))) {
        return Vec<K>{f.one()};
      }
      powers.append_row(r);
      p = mul(p, x);
    }
  };

  auto split = [&](auto&& self, const Vec<K>& e) -> void {
    const Matrix<K> C = corner(e, e);
    if (quotient_rank(C) <= 1) {
      out.push_back(e);
      return;
    }
    for (int trial = 0; trial < 64; ++trial) {
      Vec<K> r(n_);
      for (auto& a : r) a = f.random(rng);
      const Vec<K> x = mul(mul(e, r), e);
      const Vec<K> m = minpoly(x, e);
      for (const auto& lam : field_roots(f, m)) {
        const Vec<K> lin{f.neg(lam), f.one()};
        Vec<K> h{f.one()}, g = m;
        for (;;) {
          auto [q, rem] = U.divmod(g, lin);
          if (!rem.empty()) break;
          g = q;
          h = U.mul(h, lin);
        }
        if (U.deg(g) < 1) continue;
        const Vec<K> P = U.divmod(U.mul(U.inverse_mod(g, h), g), m).second;
        Vec<K> e1 = eval(P, x, e);
        for (int it = 0; it < 64; ++it) {
          const Vec<K> sq = mul(e1, e1);
          if (sq == e1) break;
          const Vec<K> cube = mul(sq, e1);
          Vec<K> next(n_, f.zero());
          f.axpy(std::span(next), f.from_int(3), std::span<const typename K::Elem>(sq));
          f.axpy(std::span(next), f.from_int(-2), std::span<const typename K::Elem>(cube));
          e1 = std::move(next);
        }
        if (mul(e1, e1) != e1 || is_zero_vec(f, std::span<const typename K::Elem>(e1)) || e1 == e)
          continue;
        Vec<K> e2 = e;
        f.axpy(std::span(e2), f.neg(f.one()), std::span<const typename K::Elem>(e1));
        self(self, e1);
        self(self, e2);
        return;
      }
    }
    throw Error(ErrorCode::NonSplit, "a simple block of the semisimple quotient is not split");
  };
  split(split, unit_);

  auto first_support = [&](const Vec<K>& v) {
    std::size_t i = 0;
    while (i < v.size() && f.is_zero(v[i])) ++i;
    return i;
  };
  std::sort(out.begin(), out.end(), [&](const Vec<K>& a, const Vec<K>& b) {
    const auto fa = first_support(a), fb = first_support(b);
    if (fa != fb) return fa < fb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  std::lock_guard lock(mutex_);
  idempotents_ = std::move(out);
  return *idempotents_;
}

template <class K>
Quiver FinDimAlgebra<K>::quiver(std::uint64_t seed) const {
  const auto& ids = idempotents(seed);
  const Subspace<K> J = Subspace<K>::span_of(field_, n_, radical());
  const std::size_t m = ids.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const Matrix<K> C = corner(ids[i], ids[j]);
      bool outside = false;
      for (std::size_t r = 0; r < C.rows() && !outside; ++r) outside = !J.contains(C.row(r));
      if (outside) parent[find(j)] = find(i);
    }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < m; ++i)
    if (find(i) == i) reps.push_back(i);
  Quiver q;
  for (std::size_t v = 0; v < reps.size(); ++v) q.vertices.push_back("v" + std::to_string(v));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      const std::size_t d1 = corner(ids[reps[a]], ids[reps[b]], 1).rows();
      const std::size_t d2 = corner(ids[reps[a]], ids[reps[b]], 2).rows();
      if (d1 > d2) q.arrows.push_back({a, b, d1 - d2});
    }
  return q;
}

#define NCG_INSTANTIATE(K)       \
  template class FinDimAlgebra<K>; \
  template std::vector<typename K::Elem> field_roots<K>(const K&, const Vec<K>&);
NCG_INSTANTIATE(PrimeField)
NCG_INSTANTIATE(RationalField)
#undef NCG_INSTANTIATE

}  // namespace ncg
