#pragma once

// Exact base fields.  Two concrete field types share one duck-typed interface
// so that everything above this layer is written once as a template:
//
//   PrimeField     GF(p), elements are canonical residues 0 <= v < p
//   RationalField  QQ, elements are GMP rationals in lowest terms
//
// Field objects are small values; elements carry no reference to their field.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "ncg/error.hpp"

namespace ncg {

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  bool is_zero(Elem a) const noexcept { return a == 0; }
  bool is_one(Elem a) const noexcept { return a == 1; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }

  Elem add(Elem a, Elem b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// dst += c * src, entrywise.
  void axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const noexcept;
  void scale(std::span<Elem> v, Elem c) const noexcept;

  Elem random(std::mt19937_64& rng) const {
    return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng));
  }
  std::string to_string(Elem a) const { return std::to_string(a); }
  /// Signed representative in (-p/2, p/2], used only for printing polynomials.
  std::int64_t balanced(Elem a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using Elem = mpq_class;

  std::uint32_t characteristic() const noexcept { return 0; }
  std::string name() const { return "QQ"; }
  bool operator==(const RationalField&) const noexcept { return true; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const {
    Elem r;
    mpz_set_si(r.get_num_mpz_t(), static_cast<long>(v));
    return r;
  }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }
  Elem pow(const Elem& a, std::uint64_t e) const;

  void axpy(std::span<Elem> dst, const Elem& c, std::span<const Elem> src) const;
  void scale(std::span<Elem> v, const Elem& c) const;

  Elem random(std::mt19937_64& rng) const {
    return from_int(std::uniform_int_distribution<int>(-3, 3)(rng));
  }
  std::string to_string(const Elem& a) const { return a.get_str(); }
};

/// A field as named in configuration files: "GF(p)" or "QQ".
using FieldSpec = std::variant<PrimeField, RationalField>;

FieldSpec parse_field_spec(const std::string& text);
std::string field_spec_name(const FieldSpec& spec);

/// Element of multiplicative order exactly n.  Prime fields: the smallest such
/// residue, found by exhaustive scan.  Rationals support only n <= 2.
PrimeField::Elem root_of_unity(const PrimeField& field, std::uint32_t n);
RationalField::Elem root_of_unity(const RationalField& field, std::uint32_t n);

/// Multiplicative order of a nonzero element (exhaustive).
std::uint32_t multiplicative_order(const PrimeField& field, PrimeField::Elem a);

}  // namespace ncg
