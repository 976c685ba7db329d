#include "ncg/scalars.hpp"

#include <cctype>

namespace ncg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error(ErrorCode::InvalidArgument, "GF(p) needs a prime p < 2^31, got " + std::to_string(p));
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in " + name());
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return from_int(t);
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

void PrimeField::axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const noexcept {
  if (c == 0) return;
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i] == 0) continue;
    dst[i] = static_cast<Elem>((dst[i] + cc * src[i]) % p_);
  }
}

void PrimeField::scale(std::span<Elem> v, Elem c) const noexcept {
  for (auto& x : v) x = mul(x, c);
}

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (sgn(a) == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in QQ");
  return Elem(1) / a;
}

RationalField::Elem RationalField::pow(const Elem& a, std::uint64_t e) const {
  Elem result(1), base(a);
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

void RationalField::axpy(std::span<Elem> dst, const Elem& c, std::span<const Elem> src) const {
  if (sgn(c) == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (sgn(src[i]) == 0) continue;
    dst[i] += c * src[i];
  }
}

void RationalField::scale(std::span<Elem> v, const Elem& c) const {
  for (auto& x : v) x *= c;
}

FieldSpec parse_field_spec(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text == "QQ") return RationalField{};
  if (text.size() > 4 && text.rfind("GF(", 0) == 0 && text.back() == ')') {
    const std::string digits = text.substr(3, text.size() - 4);
    if (!digits.empty() && digits.size() < 11) {
      bool ok = true;
      for (char ch : digits) ok = ok && std::isdigit(static_cast<unsigned char>(ch));
      if (ok) return PrimeField(static_cast<std::uint32_t>(std::stoull(digits)));
    }
  }
  throw Error(ErrorCode::ParseError, "field must be \"GF(p)\" or \"QQ\", got \"" + raw + "\"");
}

std::string field_spec_name(const FieldSpec& spec) {
  return std::visit([](const auto& f) { return f.name(); }, spec);
}

std::uint32_t multiplicative_order(const PrimeField& field, PrimeField::Elem a) {
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "zero has no multiplicative order");
  std::uint32_t order = 1;
  for (PrimeField::Elem x = a; x != 1; x = field.mul(x, a)) ++order;
  return order;
}

PrimeField::Elem root_of_unity(const PrimeField& field, std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "root_of_unity needs n >= 1");
  const std::uint32_t p = field.characteristic();
  if ((p - 1) % n != 0)
    throw Error(ErrorCode::NoSuchRoot,
                "no element of order " + std::to_string(n) + " in " + field.name());
  for (PrimeField::Elem a = 1; a < p; ++a) {
    if (field.pow(a, n) != 1) continue;
    if (multiplicative_order(field, a) == n) return a;
  }
  throw Error(ErrorCode::NoSuchRoot, "exhaustive search failed in " + field.name());
}

RationalField::Elem root_of_unity(const RationalField& field, std::uint32_t n) {
  if (n == 1) return field.one();
  if (n == 2) return field.from_int(-1);
  throw Error(ErrorCode::UnsupportedField,
              "QQ has no primitive root of unity of order " + std::to_string(n));
}

}  // namespace ncg
