#pragma once

// Arithmetic in GF(p^m).
//
// Elements are stored as their canonical integer encoding sum c_i p^i, where
// c_0 + c_1 x + ... + c_{m-1} x^{m-1} is the representative modulo the field
// modulus. Fields built with Field::make use the Conway polynomial, so the
// encodings agree with every other system that uses Conway polynomials.
//
// When m is even the field is treated as GF(q^2) with q = p^{m/2}; the
// subfield GF(q) is the fixed field of x -> x^q.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qh {

struct FieldElem {
  std::uint32_t value = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t v) : value(v) {}
  constexpr auto operator<=>(const FieldElem&) const = default;
};

struct TraceNorm {
  FieldElem trace;  // x + x^q
  FieldElem norm;   // x^{q+1}
};

// Largest field order accepted by Field::make.
inline constexpr std::uint64_t kMaxFieldOrder = 1u << 20;
// Fields up to this order use exp/log (Zech) tables.
inline constexpr std::uint64_t kMaxTableOrder = 1u << 16;

bool is_prime(std::uint64_t n);

// Returns (p, e) with q = p^e, or throws UsageError if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

// Conway polynomial C_{p,m}, monic, coefficients low to high (size m + 1).
// Computed from the definition (least primitive polynomial in Conway order
// that is norm-compatible with the Conway polynomials of all subfields) and
// memoized.
const std::vector<std::uint32_t>& conway_polynomial(std::uint32_t p, std::uint32_t m);

// Rabin irreducibility test over GF(p). `poly` is monic, low to high.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

class Field : public std::enable_shared_from_this<Field> {
 public:
  // GF(p^m) with the Conway modulus.
  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t m);
  // GF(p^m) with a caller supplied monic modulus (low to high, size m + 1).
  // Throws UsageError if the modulus is reducible.
  static std::shared_ptr<const Field> with_modulus(std::uint32_t p,
                                                   std::vector<std::uint32_t> modulus);
  // GF(q^2) for a prime power q.
  static std::shared_ptr<const Field> make_quadratic(std::uint32_t q);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool uses_tables() const { return !exp_.empty(); }
  // "GF(9) mod x^2+2x+2"
  std::string describe() const;

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }
  FieldElem primitive() const { return primitive_; }
  FieldElem element(std::uint32_t encoding) const;
  bool contains(FieldElem x) const { return x.value < order_; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  // Image of an integer under Z -> GF(p).
  FieldElem from_int(std::int64_t n) const;

  // Discrete log to the primitive element; requires tables and x != 0.
  std::uint32_t log(FieldElem x) const;
  FieldElem exp(std::uint64_t k) const;

  std::vector<std::uint32_t> digits(FieldElem x) const;
  FieldElem from_digits(std::span<const std::uint32_t> digits) const;

  // Absolute trace sum_{i<m} x^{p^i}; lands in GF(p).
  FieldElem trace_to_prime(FieldElem x) const;
  // True iff x = y^2 for some y (0 counts). Throws CharacteristicError in
  // characteristic 2.
  bool is_square(FieldElem x) const;

  // --- GF(q) inside GF(q^2); all of these require an even degree ---
  bool has_subfield_split() const { return m_ % 2 == 0; }
  std::uint32_t subfield_order() const;
  FieldElem frobenius_q(FieldElem x) const;
  TraceNorm trace_norm(FieldElem x) const;
  bool in_subfield(FieldElem x) const;
  // The q elements of GF(q), ascending by encoding.
  std::span<const FieldElem> subfield_elements() const;
  // Context of GF(q) and the embedding GF(q) <-> GF(q^2).
  std::shared_ptr<const Field> subfield() const;
  FieldElem to_subfield(FieldElem x) const;    // x must lie in GF(q)
  FieldElem from_subfield(FieldElem y) const;  // y encoded in subfield()

 private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus, bool modulus_is_primitive);
  void build_tables();
  void build_subfield();
  void require_split() const;
  FieldElem poly_mul(FieldElem a, FieldElem b) const;
  FieldElem digit_add(FieldElem a, FieldElem b, bool subtract) const;

  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> modulus_;
  FieldElem primitive_{};

  // exp_[k] = primitive^k for k < order-1; log_[x] for x != 0.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  // zech_[k] = log(1 + primitive^k), or kNoLog when the sum is 0.
  std::vector<std::uint32_t> zech_;

  std::vector<FieldElem> subfield_elems_;
  std::shared_ptr<const Field> subfield_;
  FieldElem subfield_root_image_{};  // image of the subfield primitive
  std::vector<std::uint32_t> to_sub_;  // GF(q^2) encoding -> GF(q) encoding
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace qh
